#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/lp_family.hpp"

namespace bsq {

enum class Integrator { imex_rk2, imex_euler };

std::string to_string(Integrator integrator);
Integrator integrator_from_string(const std::string& name);

struct SolverConfig {
  double kappa = 0.1;  // density diffusivity
  double nu = 0.0;     // viscosity; 0 in the studied regime
  double dt = 1e-3;
  double t_end = 1.0;
  Integrator integrator = Integrator::imex_rk2;
  double cfl_limit = 0.5;
  int stride = 1;  // trajectory sample every `stride` steps
  bool buoyancy = true;         // d1 rho source in the vorticity equation
  bool frozen_velocity = false; // diagnostic: keep u at its initial value
  std::array<double, 2> mean_velocity{0.0, 0.0};  // spatially uniform background flow
  bool store_states = true;  // false: keep only the initial and final states

  void validate() const;  // throws ConfigError naming the field
};

struct SimState {
  double t = 0.0;
  SpectralField omega;
  SpectralField rho;
};

struct Trajectory {
  std::vector<SimState> states;
  SolverConfig config;
  std::string initial_data;

  double sample_interval() const;
};

// u = mean_velocity + biot_savart(omega).
VelocityField velocity_of(const SpectralField& omega, const SolverConfig& config);

// One step of length config.dt. Advection and buoyancy are explicit, kappa Lap
// (and nu Lap) are integrated exactly per mode by exp(-kappa |k|^2 dt). Throws
// CflViolation (with a suggested dt) or NumericalBlowup.
SimState imex_step(const SimState& state, const VelocityField& u, const SolverConfig& config);

// Called at t = 0 and after every step with the current state and velocity.
using StepObserver = std::function<void(const SimState&, const VelocityField&)>;

// Stepwise driver; splits a step into equal sub-steps when CFL requires it.
class Simulation {
 public:
  Simulation(SpectralField omega0, SpectralField rho0, SolverConfig config);

  const SimState& state() const { return state_; }
  const VelocityField& velocity() const { return velocity_; }
  const SolverConfig& config() const { return config_; }
  long steps_taken() const { return steps_; }
  long total_steps() const { return total_steps_; }
  bool done() const { return steps_ >= total_steps_; }
  void advance();

 private:
  SolverConfig config_;
  SimState state_;
  VelocityField velocity_;
  std::optional<VelocityField> frozen_;
  long steps_ = 0;
  long total_steps_ = 0;
};

Trajectory simulate(const SpectralField& omega0, const SpectralField& rho0, const SolverConfig& config,
                    std::span<const StepObserver> observers = {});

// S_m f: initial data of the m-th approximating problem.
SpectralField truncate_initial_data(const SpectralField& f, int m, const LPFamily& family);

}  // namespace bsq
