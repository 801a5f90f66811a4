#include "bsq/osgood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsq/error.hpp"

namespace bsq {
namespace {

double rhs(const OsgoodProblem& p, double eta) {
  if (eta <= 0.0) return 0.0;
  return p.c * p.modulus(-std::log2(eta)) * eta;
}

double rk4(const OsgoodProblem& p, double eta, double h) {
  const double k1 = rhs(p, eta);
  const double k2 = rhs(p, eta + 0.5 * h * k1);
  const double k3 = rhs(p, eta + 0.5 * h * k2);
  const double k4 = rhs(p, eta + h * k3);
  return eta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Advance eta across one output interval, halving the substep until a full
// step and two half steps agree.
double advance_interval(const OsgoodProblem& p, double eta, double dt, const OsgoodOptions& o) {
  double done = 0.0;
  double h = dt;
  while (done < dt) {
    h = std::min(h, dt - done);
    int halvings = 0;
    double accepted = 0.0;
    while (true) {
      const double full = rk4(p, eta, h);
      const double half = rk4(p, rk4(p, eta, 0.5 * h), 0.5 * h);
      const double err = std::abs(full - half);
      if (err <= o.rel_tol * std::max(std::abs(half), 1e-300) || halvings >= o.max_halvings) {
        accepted = half + (half - full) / 15.0;
        break;
      }
      h *= 0.5;
      ++halvings;
    }
    eta = accepted;
    done += h;
    if (halvings == 0) h *= 2.0;
  }
  return eta;
}

}  // namespace

double OsgoodSolution::at(double time) const {
  if (t.empty()) return 0.0;
  if (time <= t.front()) return eta.front();
  if (time >= t.back()) return eta.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t i = static_cast<std::size_t>(it - t.begin());
  const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
  return (1.0 - w) * eta[i - 1] + w * eta[i];
}

OsgoodSolution osgood_integrate(const OsgoodProblem& p, double dt, const OsgoodOptions& options) {
  if (!(p.c > 0.0)) throw InputError("osgood: C must be positive");
  if (!(p.delta >= 0.0)) throw InputError("osgood: delta must be nonnegative");
  if (!(p.horizon > 0.0)) throw InputError("osgood: horizon must be positive");
  if (!(dt > 0.0) || dt > p.horizon) throw InputError("osgood: dt must lie in (0, horizon]");

  OsgoodSolution sol;
  if (!p.bypass_validation) {
    ValidationOptions vo;
    vo.alpha_max = 1e3;
    const GammaReport report = validate_gamma(p.modulus, vo);
    for (const char* id : {"i", "ii", "iii", "3.1", "3.2"}) {
      if (!report.passes(id)) {
        throw InputError("osgood: modulus " + p.modulus.name + " fails condition (" + id + ")");
      }
    }
    sol.m1 = report.m1;
    if (p.delta > 0.0 && p.delta >= std::exp2(-sol.m1 - 1.0)) {
      throw InputError("osgood: delta must lie below 2^-(M1+1) = " + std::to_string(std::exp2(-sol.m1 - 1.0)));
    }
  }

  const auto steps = static_cast<long>(std::ceil(p.horizon / dt - 1e-9));
  sol.t.reserve(static_cast<std::size_t>(steps) + 1);
  sol.eta.reserve(static_cast<std::size_t>(steps) + 1);
  sol.t.push_back(0.0);
  sol.eta.push_back(p.delta);
  double eta = p.delta;
  for (long s = 1; s <= steps; ++s) {
    const double t0 = (s - 1) * dt;
    const double t1 = std::min(p.horizon, s * dt);
    if (eta > 0.0) eta = std::max(eta, advance_interval(p, eta, t1 - t0, options));
    if (!std::isfinite(eta)) throw NumericalBlowup("osgood: eta is not finite at t=" + std::to_string(t1));
    if (eta > 0.5) sol.domain_warning = true;
    sol.t.push_back(t1);
    sol.eta.push_back(eta);
  }
  return sol;
}

}  // namespace bsq
