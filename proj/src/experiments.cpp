#include "bsq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "bsq/error.hpp"
#include "bsq/flow_map.hpp"
#include "bsq/norms.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq {
namespace {

const LebesgueExponent kInf = LebesgueExponent::infinity();

VelocityField difference(const VelocityField& a, const VelocityField& b) { return {a.u1 - b.u1, a.u2 - b.u2}; }

// Band sup-norms of v and rho summed per band (index j + 1).
std::vector<double> difference_bands(const VelocityField& v, const SpectralField& rho, const LPFamily& family) {
  auto bands = band_norms(v, family, kInf);
  const auto r = band_norms(rho, family, kInf);
  for (std::size_t i = 0; i < bands.size(); ++i) bands[i] += r[i];
  return bands;
}

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

bool sample_due(const Simulation& sim) {
  return sim.steps_taken() % sim.config().stride == 0 || sim.done();
}

bool envelope_dominates(const TwinRunResult& r, const GammaSpec& pi, double c, double horizon, double dt,
                        std::vector<double>* envelope) {
  OsgoodProblem problem{pi, c, r.delta_prime, horizon, true};
  OsgoodSolution sol;
  try {
    sol = osgood_integrate(problem, dt);
  } catch (const NumericalBlowup&) {
    if (envelope) envelope->assign(r.t.size(), std::numeric_limits<double>::infinity());
    return true;
  }
  bool ok = true;
  if (envelope) envelope->clear();
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double eta = sol.at(r.t[i]);
    if (envelope) envelope->push_back(eta);
    if (r.f[i] > eta) ok = false;
  }
  return ok;
}

}  // namespace

std::string Perturbation::describe() const {
  std::ostringstream os;
  os << (target == PerturbTarget::omega ? "omega0" : "rho0") << " band " << band << " delta " << delta;
  return os.str();
}

TwinRunResult uniqueness_experiment(const SpectralField& omega0, const SpectralField& rho0,
                                    const Perturbation& perturbation, const SolverConfig& config,
                                    const LPFamily& family, const GammaSpec& pi) {
  if (!(perturbation.delta >= 0.0)) throw InputError("perturbation delta must be nonnegative");
  if (perturbation.delta > 0.0 && perturbation.delta < 1e-14) {
    throw InputError("perturbation delta below the spectral floor 1e-14");
  }
  if (perturbation.band < -1 || perturbation.band > family.j_max()) {
    throw InputError("perturbation band outside [-1, j_max]");
  }
  if (!(omega0.grid() == family.grid()) || !(rho0.grid() == family.grid())) {
    throw InputError("initial data grid does not match the LP family grid");
  }

  SpectralField omega_p = omega0;
  SpectralField rho_p = rho0;
  if (perturbation.delta > 0.0) {
    SpectralField& target = perturbation.target == PerturbTarget::omega ? omega_p : rho_p;
    SpectralField piece = band_project(target, family, perturbation.band, Projection::delta);
    if (perturbation.target == PerturbTarget::omega) piece.at(0, 0) = 0.0;
    const double size = lp_norm(piece, kInf);
    if (!(size > 0.0)) throw InputError("perturbed band of the initial data is empty");
    piece *= perturbation.delta / size;
    target += piece;
  }

  SolverConfig cfg = config;
  cfg.store_states = false;
  Simulation a(omega0, rho0, cfg);
  Simulation b(omega_p, rho_p, cfg);

  TwinRunResult r;
  r.perturbation = perturbation;
  const int n_top = family.j_max();
  const double tail_weight = std::exp2(-n_top) * pi(n_top);
  RunningIntegral integral;
  auto record = [&]() {
    const auto bands = difference_bands(difference(a.velocity(), b.velocity()), a.state().rho - b.state().rho, family);
    const double g = total(bands);
    double worst = 0.0;
    for (std::size_t i = 0; i < bands.size(); ++i) {
      const int j = static_cast<int>(i) - 1;
      worst = std::max(worst, std::exp2(j) * bands[i] / pi(j));
    }
    const double t = a.state().t;
    integral.add(t, g);
    r.t.push_back(t);
    r.g.push_back(g);
    r.f.push_back(integral.value());
    r.tail.push_back(tail_weight * worst);
  };
  record();
  while (!a.done()) {
    a.advance();
    b.advance();
    if (sample_due(a)) record();
  }

  r.delta_prime = r.g.front();
  if (r.delta_prime == 0.0) {
    r.envelope.assign(r.t.size(), 0.0);
    r.dominated = std::all_of(r.f.begin(), r.f.end(), [](double v) { return v == 0.0; });
    return r;
  }
  const double horizon = r.t.back();
  const double dt = r.t.size() > 1 ? r.t[1] - r.t[0] : horizon;
  const bool flat = std::all_of(r.f.begin(), r.f.end(), [&](double v) { return v <= r.delta_prime; });
  if (flat) {
    r.fitted_c = 0.0;
    r.envelope.assign(r.t.size(), r.delta_prime);
    return r;
  }
  double lo = std::log(1e-8), hi = std::log(1e8);
  if (!envelope_dominates(r, pi, std::exp(hi), horizon, dt, nullptr)) {
    r.dominated = false;
    r.fitted_c = std::exp(hi);
    envelope_dominates(r, pi, r.fitted_c, horizon, dt, &r.envelope);
    return r;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (envelope_dominates(r, pi, std::exp(mid), horizon, dt, nullptr)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  r.fitted_c = std::exp(hi);
  r.dominated = envelope_dominates(r, pi, r.fitted_c, horizon, dt, &r.envelope);
  return r;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_slope needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InputError("fit_slope: x values coincide");
  return sxy / sxx;
}

ApproximationTable approximation_experiment(const SpectralField& f, const SpectralField& g, const std::vector<int>& ms,
                                            const SolverConfig& config, const LPFamily& family,
                                            const GammaSpec& gamma) {
  if (ms.size() < 3) throw InputError("approximation experiment needs at least three m values");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < -1 || ms[i] > family.j_max()) throw InputError("m values must lie in [-1, j_max]");
    if (i > 0 && ms[i] <= ms[i - 1]) throw InputError("m values must be strictly increasing");
  }
  SolverConfig cfg = config;
  cfg.store_states = false;
  std::vector<std::unique_ptr<Simulation>> sims;
  for (int m : ms) {
    sims.push_back(std::make_unique<Simulation>(truncate_initial_data(f, m, family),
                                                truncate_initial_data(g, m, family), cfg));
  }

  ApproximationTable table;
  for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
    ApproximationRow row;
    row.l = ms[i];
    row.m = ms[i + 1];
    const Simulation& lo = *sims[i];
    const Simulation& hi = *sims[i + 1];
    row.iota = total(band_norms(hi.state().rho - lo.state().rho, family, kInf));
    row.kappa = total(band_norms(difference(hi.velocity(), lo.velocity()), family, kInf));
    row.reference = std::exp2(-row.l) * gamma(row.l);
    table.rows.push_back(row);
  }
  auto update_gaps = [&]() {
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Simulation& lo = *sims[i];
      const Simulation& hi = *sims[i + 1];
      const double gap =
          total(difference_bands(difference(hi.velocity(), lo.velocity()), hi.state().rho - lo.state().rho, family));
      table.rows[i].cauchy_gap = std::max(table.rows[i].cauchy_gap, gap);
    }
  };
  update_gaps();
  while (!sims.front()->done()) {
    for (auto& s : sims) s->advance();
    if (sample_due(*sims.front())) update_gaps();
  }

  std::vector<double> ls, logs, log_gamma;
  for (const auto& row : table.rows) {
    log_gamma.push_back(std::log2(gamma(row.l)));
    if (row.iota > 0.0) {
      ls.push_back(row.l);
      logs.push_back(std::log2(row.iota));
    }
  }
  std::vector<double> all_l;
  for (const auto& row : table.rows) all_l.push_back(row.l);
  table.reference_slope = -1.0 + fit_slope(all_l, log_gamma);
  table.slope = ls.size() >= 2 ? fit_slope(ls, logs) : -std::numeric_limits<double>::infinity();
  table.gaps_monotone = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].cauchy_gap < table.rows[i - 1].cauchy_gap)) table.gaps_monotone = false;
  }
  return table;
}

EstimateRecord flow_composition_check(const Trajectory& traj, const SpectralField& f, const LPFamily& family,
                                      const GammaSpec& gamma,
                                      const std::vector<std::pair<double, double>>& sample_times) {
  const VelocityHistory history(traj);
  EstimateRecord rec;
  rec.check_id = "flow_composition";
  rec.meta.grid_n = family.grid().n();
  rec.meta.kappa = traj.config.kappa;
  rec.meta.gamma_name = gamma.name;
  rec.meta.j_max = family.j_max();
  const double base = norm(f, BGammaNorm{&gamma, false}, family);
  for (const auto& [tau, t] : sample_times) {
    const FlowMap map = inverse_flow_map(history, tau, t);
    const double lhs = norm(map.compose(f), BGammaNorm{&gamma, true}, family);
    rec.samples.push_back({t, lhs, base, base > 0.0 ? lhs / base : 0.0});
  }
  return rec;
}

}  // namespace bsq
