#pragma once

#include <vector>

#include "bsq/gamma.hpp"

namespace bsq {

// Comparison ODE  eta' = C * Pi(-log2 eta) * eta,  eta(0) = delta.
struct OsgoodProblem {
  GammaSpec modulus;
  double c = 1.0;
  double delta = 0.0;
  double horizon = 1.0;
  // Skip the modulus validator (used for degenerate test moduli such as Pi = 1).
  bool bypass_validation = false;
};

struct OsgoodSolution {
  std::vector<double> t;
  std::vector<double> eta;
  // Set when eta passes 1/2, where -log2 eta leaves the monotone range.
  bool domain_warning = false;
  int m1 = -1;

  // Piecewise-linear evaluation on the output grid.
  double at(double time) const;
};

struct OsgoodOptions {
  double rel_tol = 1e-13;
  int max_halvings = 30;
};

// RK4 with step-doubling error control; output sampled every dt up to the horizon.
// Throws InputError on invalid C, delta, horizon or dt, when delta lies outside
// (0, 2^{-M1-1}), or when a non-bypassed modulus fails its Osgood conditions.
OsgoodSolution osgood_integrate(const OsgoodProblem& problem, double dt, const OsgoodOptions& options = {});

}  // namespace bsq
