#include "bsq/solver.hpp"

#include <cmath>

#include "bsq/error.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq {

std::string to_string(Integrator integrator) {
  return integrator == Integrator::imex_rk2 ? "imex-rk2" : "imex-euler";
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "imex-rk2") return Integrator::imex_rk2;
  if (name == "imex-euler") return Integrator::imex_euler;
  throw ConfigError("integrator", "unknown integrator '" + name + "'");
}

void SolverConfig::validate() const {
  if (!(kappa >= 0.0)) throw ConfigError("kappa", "must be >= 0");
  if (!(nu >= 0.0)) throw ConfigError("nu", "must be >= 0");
  if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
  if (!(t_end >= 0.0)) throw ConfigError("t_end", "must be >= 0");
  if (!(cfl_limit > 0.0)) throw ConfigError("cfl_limit", "must be > 0");
  if (stride < 1) throw ConfigError("stride", "must be >= 1");
}

double Trajectory::sample_interval() const {
  if (states.size() < 2) return 0.0;
  return states[1].t - states[0].t;
}

VelocityField velocity_of(const SpectralField& omega, const SolverConfig& config) {
  VelocityField u = biot_savart(omega);
  u.u1.at(0, 0) = config.mean_velocity[0];
  u.u2.at(0, 0) = config.mean_velocity[1];
  return u;
}

namespace {

struct Tendency {
  SpectralField omega;
  SpectralField rho;
};

Tendency tendency(const SimState& s, const VelocityField& u, const SolverConfig& config) {
  Tendency t{advect(u, s.omega), advect(u, s.rho)};
  t.omega *= -1.0;
  t.rho *= -1.0;
  if (config.buoyancy) t.omega += spectral_derivative(s.rho, Derivative::d1);
  return t;
}

std::vector<double> decay_factors(const Grid& grid, double diffusivity, double dt) {
  std::vector<double> f(grid.size(), 1.0);
  if (diffusivity == 0.0) return f;
  for (int a = 0; a < grid.n(); ++a) {
    for (int b = 0; b < grid.n(); ++b) {
      const double k1 = grid.wavenumber(a), k2 = grid.wavenumber(b);
      f[grid.flat(a, b)] = std::exp(-diffusivity * (k1 * k1 + k2 * k2) * dt);
    }
  }
  return f;
}

// out = E * (y + c * n)
SpectralField propagate(const SpectralField& y, const SpectralField& n, double c, const std::vector<double>& e) {
  SpectralField out(y.grid());
  auto ys = y.coeffs();
  auto ns = n.coeffs();
  auto o = out.coeffs();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = e[i] * (ys[i] + c * ns[i]);
  return out;
}

double max_speed(const VelocityField& u) {
  const auto a = u.u1.to_physical();
  const auto b = u.u2.to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]) + std::abs(b[i]));
  return m;
}

void check_finite(const SimState& s) {
  for (const auto* f : {&s.omega, &s.rho}) {
    for (const auto& c : f->coeffs()) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw NumericalBlowup("non-finite " + std::string(f == &s.omega ? "vorticity" : "density") +
                              " coefficient at t=" + std::to_string(s.t));
      }
    }
  }
}

}  // namespace

SimState imex_step(const SimState& state, const VelocityField& u, const SolverConfig& config) {
  const Grid& grid = state.omega.grid();
  const double dt = config.dt;
  const double speed = max_speed(u);
  if (speed > 0.0) {
    const double limit = config.cfl_limit * grid.spacing() / speed;
    if (dt > limit) throw CflViolation(dt, 0.9 * limit);
  }
  const auto e_rho = decay_factors(grid, config.kappa, dt);
  const auto e_omega = decay_factors(grid, config.nu, dt);

  const Tendency n0 = tendency(state, u, config);
  SimState stage{state.t + dt, propagate(state.omega, n0.omega, dt, e_omega),
                 propagate(state.rho, n0.rho, dt, e_rho)};
  if (config.integrator == Integrator::imex_rk2) {
    const VelocityField u1 = config.frozen_velocity ? u : velocity_of(stage.omega, config);
    const Tendency n1 = tendency(stage, u1, config);
    SimState next{state.t + dt, propagate(state.omega, n0.omega, 0.5 * dt, e_omega),
                  propagate(state.rho, n0.rho, 0.5 * dt, e_rho)};
    auto add_half = [&](SpectralField& y, const SpectralField& n) {
      auto ys = y.coeffs();
      auto ns = n.coeffs();
      for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += 0.5 * dt * ns[i];
    };
    add_half(next.omega, n1.omega);
    add_half(next.rho, n1.rho);
    stage = std::move(next);
  }
  dealias(stage.omega);
  dealias(stage.rho);
  check_finite(stage);
  return stage;
}

Simulation::Simulation(SpectralField omega0, SpectralField rho0, SolverConfig config)
    : config_(config),
      state_{0.0, std::move(omega0), std::move(rho0)},
      velocity_{SpectralField(state_.omega.grid()), SpectralField(state_.omega.grid())} {
  config_.validate();
  if (!(state_.omega.grid() == state_.rho.grid())) throw InputError("omega0 and rho0 live on different grids");
  if (std::abs(state_.omega.mean()) > 1e-14 * std::max(1.0, state_.omega.max_abs_coeff())) {
    throw InputError("initial vorticity must be mean-free");
  }
  total_steps_ = std::lround(config_.t_end / config_.dt);
  if (std::abs(total_steps_ * config_.dt - config_.t_end) > 1e-9 * std::max(1.0, config_.t_end)) {
    throw ConfigError("dt", "t_end must be an integer multiple of dt");
  }
  dealias(state_.omega);
  dealias(state_.rho);
  velocity_ = velocity_of(state_.omega, config_);
  if (config_.frozen_velocity) frozen_ = velocity_;
}

void Simulation::advance() {
  if (done()) return;
  const double t_next = static_cast<double>(steps_ + 1) * config_.dt;
  SolverConfig sub = config_;
  int pieces = 1;
  for (;;) {
    try {
      SimState s = state_;
      VelocityField u = velocity_;
      sub.dt = config_.dt / pieces;
      for (int i = 0; i < pieces; ++i) {
        s = imex_step(s, u, sub);
        u = frozen_ ? *frozen_ : velocity_of(s.omega, config_);
      }
      s.t = t_next;
      state_ = std::move(s);
      velocity_ = std::move(u);
      break;
    } catch (const CflViolation& e) {
      const int needed = static_cast<int>(std::ceil(config_.dt / e.suggested_dt()));
      pieces = std::max(pieces * 2, needed);
      if (pieces > (1 << 20)) throw;
    }
  }
  ++steps_;
}

Trajectory simulate(const SpectralField& omega0, const SpectralField& rho0, const SolverConfig& config,
                    std::span<const StepObserver> observers) {
  Simulation sim(omega0, rho0, config);
  Trajectory traj;
  traj.config = config;
  auto notify = [&] {
    for (const auto& obs : observers) obs(sim.state(), sim.velocity());
  };
  notify();
  traj.states.push_back(sim.state());
  while (!sim.done()) {
    sim.advance();
    notify();
    if (config.store_states && (sim.steps_taken() % config.stride == 0 || sim.done())) {
      if (traj.states.back().t < sim.state().t) traj.states.push_back(sim.state());
    }
  }
  if (!config.store_states && sim.steps_taken() > 0) traj.states.push_back(sim.state());
  return traj;
}

SpectralField truncate_initial_data(const SpectralField& f, int m, const LPFamily& family) {
  if (m < -1 || m > family.j_max()) throw InputError("truncation index m outside [-1, j_max]");
  return band_project(f, family, m, Projection::partial_sum);
}

}  // namespace bsq
