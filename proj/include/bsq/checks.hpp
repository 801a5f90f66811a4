#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/gamma.hpp"
#include "bsq/lp_family.hpp"
#include "bsq/solver.hpp"

namespace bsq {

struct EstimateSample {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RecordMeta {
  int grid_n = 0;
  double kappa = 0.0;
  std::string gamma_name;
  double p0 = 1.5;
  double p1 = 4.0;
  unsigned long long seed = 0;
  int j_max = 0;
};

struct EstimateRecord {
  std::string check_id;
  std::vector<EstimateSample> samples;
  RecordMeta meta;
  // Check-specific diagnostics (worst band, log of the right side, ...).
  std::map<std::string, double> extras;

  double empirical_constant() const;  // sup of the ratio series
};

struct Exponents {
  LebesgueExponent p0 = kDefaultP0;
  LebesgueExponent p1 = kDefaultP1;
};

struct CheckContext {
  const LPFamily* family = nullptr;
  const GammaSpec* gamma = nullptr;
  Exponents exponents;
  double kappa = 0.0;
};

// Evaluates both sides of one inequality, one observation per sample time.
// The first observation is taken as the initial state.
class Monitor {
 public:
  virtual ~Monitor() = default;
  virtual void observe(const SimState& state, const VelocityField& u) = 0;
  virtual EstimateRecord finish() = 0;
};

// Registered ids, in report order.
const std::vector<std::string>& check_ids();
bool is_check_id(const std::string& id);
// Throws InputError for an unknown id or an exponent the check cannot use.
std::unique_ptr<Monitor> make_monitor(const std::string& id, const CheckContext& context);

// Replays a stored trajectory through one monitor. Requires the sample spacing
// to be at most 10 dt.
EstimateRecord run_inequality_check(const std::string& id, const Trajectory& traj, const LPFamily& family,
                                    const GammaSpec& gamma, const Exponents& exponents = {});
// Several checks in a single pass over the trajectory.
std::vector<EstimateRecord> run_inequality_checks(const std::vector<std::string>& ids, const Trajectory& traj,
                                                  const LPFamily& family, const GammaSpec& gamma,
                                                  const Exponents& exponents = {});

// Trapezoid accumulator over (t, f) pairs in increasing t.
class RunningIntegral {
 public:
  void add(double t, double f);
  double value() const { return value_; }
  bool empty() const { return count_ == 0; }

 private:
  double value_ = 0.0;
  double last_t_ = 0.0;
  double last_f_ = 0.0;
  long count_ = 0;
};

}  // namespace bsq
