#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bsq/checks.hpp"
#include "bsq/config.hpp"
#include "bsq/error.hpp"
#include "bsq/gamma.hpp"
#include "bsq/initial_data.hpp"
#include "bsq/lp_family.hpp"
#include "bsq/osgood.hpp"
#include "bsq/paraproduct.hpp"
#include "bsq/solver.hpp"
#include "bsq/spectral_ops.hpp"
#include "dispatch.hpp"

namespace py = pybind11;
using namespace bsq;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SpectralField from_array(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw InputError("expected a square 2D array");
  const Grid grid(static_cast<int>(a.shape(0)));
  return SpectralField::from_physical(grid, std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
}

Array to_array(const SpectralField& f) {
  const auto n = static_cast<py::ssize_t>(f.grid().n());
  Array out({n, n});
  const auto samples = f.to_physical();
  std::copy(samples.begin(), samples.end(), out.mutable_data());
  return out;
}

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict record_to_dict(const EstimateRecord& r) {
  std::vector<double> t, lhs, rhs, ratio;
  for (const auto& s : r.samples) {
    t.push_back(s.t);
    lhs.push_back(s.lhs);
    rhs.push_back(s.rhs);
    ratio.push_back(s.ratio);
  }
  py::dict d;
  d["check_id"] = r.check_id;
  d["t"] = t;
  d["lhs"] = lhs;
  d["rhs"] = rhs;
  d["ratio"] = ratio;
  d["empirical_constant"] = r.empirical_constant();
  d["extras"] = r.extras;
  return d;
}

}  // namespace

PYBIND11_MODULE(bsqlp, m) {
  m.doc() = "Spectral Littlewood-Paley tools and estimate harness for 2D Boussinesq on the torus";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<SpectralField>(m, "Field")
      .def_static("from_physical", &from_array, py::arg("samples"))
      .def_static(
          "single_mode", [](int n, int k1, int k2, Complex c) { return SpectralField::single_mode(Grid(n), k1, k2, c); },
          py::arg("n"), py::arg("k1"), py::arg("k2"), py::arg("c"))
      .def_static(
          "zeros", [](int n) { return SpectralField(Grid(n)); }, py::arg("n"))
      .def("to_physical", &to_array)
      .def("coefficient", [](const SpectralField& f, int k1, int k2) { return f.at(k1, k2); })
      .def("max_abs_coeff", &SpectralField::max_abs_coeff)
      .def_property_readonly("n", [](const SpectralField& f) { return f.grid().n(); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * double())
      .def(double() * py::self);

  m.def(
      "random_field",
      [](int n, double beta, double kmin, double kmax, double amplitude, bool coherent, std::uint64_t seed) {
        return random_field(Grid(n), RandomSpectrum{beta, kmin, kmax, amplitude, coherent, seed});
      },
      py::arg("n"), py::arg("beta") = 3.0, py::arg("kmin") = 1.0, py::arg("kmax") = 8.0, py::arg("amplitude") = 1.0,
      py::arg("coherent") = false, py::arg("seed") = 0);

  m.def("biot_savart", [](const SpectralField& w) {
    auto u = biot_savart(w);
    return py::make_tuple(u.u1, u.u2);
  });
  m.def("curl", [](const SpectralField& u1, const SpectralField& u2) { return curl(VelocityField{u1, u2}); });
  m.def("divergence",
        [](const SpectralField& u1, const SpectralField& u2) { return divergence(VelocityField{u1, u2}); });
  m.def("product", &product, "dealiased pointwise product");
  m.def(
      "lp_norm", [](const SpectralField& f, double p) { return lp_norm(f, LebesgueExponent(p)); }, py::arg("f"),
      py::arg("p"));

  py::class_<LPFamily>(m, "LPFamily")
      .def(py::init([](int n, double plateau) { return LPFamily(Grid(n), ProfileParams{plateau}); }), py::arg("n"),
           py::arg("plateau") = 0.55)
      .def_property_readonly("j_max", &LPFamily::j_max)
      .def("band_multiplier", &LPFamily::band_multiplier, py::arg("j"), py::arg("r"))
      .def(
          "band", [](const LPFamily& fam, const SpectralField& f, int j) { return band_project(f, fam, j); },
          py::arg("f"), py::arg("j"))
      .def("decompose", [](const LPFamily& fam, const SpectralField& f) { return decompose(f, fam).bands; });

  m.def(
      "bony_decompose",
      [](const SpectralField& f, const SpectralField& g, const LPFamily& fam) {
        auto s = bony_decompose(f, g, fam);
        py::dict d;
        d["t_fg"] = s.t_fg;
        d["t_gf"] = s.t_gf;
        d["remainder"] = s.remainder;
        return d;
      },
      py::arg("f"), py::arg("g"), py::arg("family"));

  m.def(
      "commutator_bound_sweep",
      [](const SpectralField& u1, const SpectralField& u2, const SpectralField& rho, const LPFamily& fam) {
        py::list out;
        for (const auto& r : commutator_bound_sweep(VelocityField{u1, u2}, rho, fam)) {
          py::dict d;
          d["band"] = r.band;
          d["lhs"] = r.lhs;
          d["rhs"] = r.rhs;
          d["ratio"] = r.ratio;
          out.append(d);
        }
        return out;
      },
      py::arg("u1"), py::arg("u2"), py::arg("rho"), py::arg("family"));

  m.def("gamma_catalog", &gamma_catalog_names);
  m.def("validate_gamma", [](const std::string& name) { return json_to_py(validate_gamma(gamma_from_catalog(name)).to_json()); });
  m.def(
      "osgood_integrate",
      [](const std::string& modulus, double c, double delta, double horizon, double dt, bool bypass) {
        const auto s = osgood_integrate(OsgoodProblem{gamma_from_catalog(modulus), c, delta, horizon, bypass}, dt);
        py::dict d;
        d["t"] = s.t;
        d["eta"] = s.eta;
        d["domain_warning"] = s.domain_warning;
        d["m1"] = s.m1;
        return d;
      },
      py::arg("modulus"), py::arg("c"), py::arg("delta"), py::arg("horizon"), py::arg("dt"),
      py::arg("bypass_validation") = false);

  m.def(
      "simulate",
      [](const SpectralField& omega, const SpectralField& rho, double kappa, double dt, double t_end, int stride) {
        SolverConfig c;
        c.kappa = kappa;
        c.dt = dt;
        c.t_end = t_end;
        c.stride = stride;
        c.validate();
        py::list out;
        for (const auto& s : simulate(omega, rho, c).states) out.append(py::make_tuple(s.t, s.omega, s.rho));
        return out;
      },
      py::arg("omega"), py::arg("rho"), py::arg("kappa") = 0.1, py::arg("dt") = 1e-3, py::arg("t_end") = 1.0,
      py::arg("stride") = 1);

  m.def("check_ids", &check_ids);
  m.def("canonical_config", [](const std::string& text) { return serialize_config(parse_config(text)); });
  m.def("config_hash", [](const std::string& text) { return config_hash(parse_config(text)); });
  m.def(
      "run_checks",
      [](const std::string& text, const std::string& config_dir) {
        const auto c = parse_config(text);
        const Grid grid(c.n);
        const LPFamily fam(grid, c.lp);
        const auto gamma = gamma_from_catalog(c.gamma);
        auto resolve = [&](InitialDataSpec s) {
          if (!s.path.empty() && !std::filesystem::path(s.path).is_absolute()) {
            s.path = (std::filesystem::path(config_dir) / s.path).string();
          }
          return make_initial_field(grid, s);
        };
        const auto traj = simulate(resolve(c.omega), resolve(c.rho), c.solver);
        py::list out;
        for (const auto& r : run_inequality_checks(c.checks, traj, fam, gamma,
                                                   Exponents{LebesgueExponent(c.p0), LebesgueExponent(c.p1)})) {
          out.append(record_to_dict(r));
        }
        return out;
      },
      py::arg("config"), py::arg("config_dir") = ".");
  m.def(
      "verify",
      [](const std::string& text, const std::string& out_dir, const std::string& config_dir) {
        auto c = parse_config(text);
        c.command = "verify";
        cli::DispatchOptions o;
        o.config_dir = config_dir;
        o.out = out_dir;
        return cli::dispatch(c, o);
      },
      py::arg("config"), py::arg("out_dir"), py::arg("config_dir") = ".",
      "Run the verify command; returns the CLI exit code (0 ok, 1 check failure).");
}
