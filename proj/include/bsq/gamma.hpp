#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bsq {

// Growth function Gamma: R -> [1, inf) for the borderline space B_Gamma, with
// the companion Gamma_1(a) = (a + 2) Gamma(a) for a >= -1 and 1 otherwise.
// The same type carries the uniqueness modulus Pi.
struct GammaSpec {
  std::string name;
  std::function<double(double)> gamma;
  bool modulus_role = true;
  // Known answer for the divergence of int_1^inf 1/Gamma_1, when available in
  // closed form. The validator reports it next to its numerical heuristic.
  std::optional<bool> gamma1_integral_diverges;
  // Known answer for the divergence of int_1^inf 1/Gamma (Pi's Osgood condition).
  std::optional<bool> integral_diverges;

  double operator()(double alpha) const { return gamma(alpha); }
  double gamma1(double alpha) const { return alpha >= -1.0 ? (alpha + 2.0) * gamma(alpha) : 1.0; }
};

// Catalog:
//   gamma_lin      max(1, a + 2)
//   gamma_log      1 + log2(a + 2)             (a >= -1)
//   gamma_sqrtlog  sqrt(1 + log2(a + 2))       (a >= -1)
//   pi_unit        1                           (test modulus; not admissible)
//   pi_linear      max(1, a)                   (test modulus)
GammaSpec gamma_from_catalog(const std::string& name);
std::vector<std::string> gamma_catalog_names();
bool is_gamma_catalog_name(const std::string& name);

struct ConditionResult {
  bool pass = false;
  double measured = 0.0;  // measured constant / statistic
  std::string detail;
};

struct GammaReport {
  std::string name;
  double alpha_max = 0.0;
  // keys: "i".."vi", "2.2", "2.3", "3.1", "3.2"
  std::map<std::string, ConditionResult> conditions;
  // Smallest integer M1 >= -1 such that Pi(x) 2^-x is nonincreasing on [M1, alpha_max].
  int m1 = -1;

  bool passes(const std::string& id) const { return conditions.at(id).pass; }
  nlohmann::json to_json() const;
};

struct ValidationOptions {
  double alpha_max = 1e4;
  double step = 1e-2;           // sampling step on [-2, 64]; geometric beyond
  double fd_step = 1e-4;        // central-difference step for Gamma'
  double growth_tolerance = 1e-2;
  double constant_bound = 100.0;  // (ii)-(iv) pass when the measured constant is below this
};

// Evaluate every admissibility condition numerically. Throws InputError when
// Gamma cannot be evaluated (non-finite or below 1) on the range.
GammaReport validate_gamma(const GammaSpec& g, const ValidationOptions& options = {});

}  // namespace bsq
