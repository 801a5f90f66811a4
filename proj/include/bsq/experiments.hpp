#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bsq/checks.hpp"
#include "bsq/osgood.hpp"

namespace bsq {

enum class PerturbTarget { omega, rho };

// delta * Delta_j X / ||Delta_j X||_inf added to X = omega0 or rho0.
struct Perturbation {
  PerturbTarget target = PerturbTarget::omega;
  int band = 2;
  double delta = 1e-6;

  std::string describe() const;
};

struct TwinRunResult {
  Perturbation perturbation;
  std::vector<double> t;
  std::vector<double> g;     // sum_j ||Delta_j v||_inf + ||Delta_j rho||_inf, j <= j_max
  std::vector<double> f;     // F(t) = int_0^t g
  std::vector<double> tail;  // Abel-type tail bound for j > j_max, per sample
  double delta_prime = 0.0;  // g(0)
  double fitted_c = 0.0;     // smallest C with F <= eta(.; C, delta')
  std::vector<double> envelope;  // eta at the sample times
  bool dominated = true;
};

// Runs the unperturbed and perturbed problems in lockstep and fits the Osgood
// envelope with the modulus `pi`. delta = 0 gives the control run; a nonzero
// delta below 1e-14 is rejected.
TwinRunResult uniqueness_experiment(const SpectralField& omega0, const SpectralField& rho0,
                                    const Perturbation& perturbation, const SolverConfig& config,
                                    const LPFamily& family, const GammaSpec& pi);

struct ApproximationRow {
  int l = 0;
  int m = 0;
  double iota = 0.0;         // sum_j ||Delta_j (rho_m - rho_l)(0)||_inf
  double kappa = 0.0;        // same for u_m - u_l
  double cauchy_gap = 0.0;   // sup_t sum_j (||Delta_j v||_inf + ||Delta_j rho||_inf)
  double reference = 0.0;    // 2^-l Gamma(l)
};

struct ApproximationTable {
  std::vector<ApproximationRow> rows;
  double slope = 0.0;           // least-squares slope of log2 iota against l
  double reference_slope = 0.0; // -1 + slope of log2 Gamma over the same l
  bool gaps_monotone = false;   // cauchy gaps decrease with l
};

// Truncated data omega_m(0) = S_m f, rho_m(0) = S_m g for each m in the list,
// advanced together; rows compare consecutive list entries.
ApproximationTable approximation_experiment(const SpectralField& f, const SpectralField& g, const std::vector<int>& ms,
                                            const SolverConfig& config, const LPFamily& family,
                                            const GammaSpec& gamma);

// ||f o X^-1(t; tau)||_Gamma1 / ||f||_Gamma for each (tau, t) pair.
EstimateRecord flow_composition_check(const Trajectory& traj, const SpectralField& f, const LPFamily& family,
                                      const GammaSpec& gamma,
                                      const std::vector<std::pair<double, double>>& sample_times);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bsq
