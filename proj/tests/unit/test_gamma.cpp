#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bsq/error.hpp"
#include "bsq/gamma.hpp"

using namespace bsq;

TEST(GammaCatalog, BasicShape) {
  for (const auto& name : {"gamma_lin", "gamma_log", "gamma_sqrtlog"}) {
    const auto g = gamma_from_catalog(name);
    for (double a = -5.0; a <= -1.0; a += 0.25) EXPECT_EQ(g(a), 1.0) << name;
    double prev = 1.0;
    for (double a = -1.0; a <= 200.0; a += 0.5) {
      EXPECT_GE(g(a), prev) << name;
      EXPECT_GE(g.gamma1(a), g(a)) << name;
      prev = g(a);
    }
    EXPECT_EQ(g.gamma1(-3.0), 1.0);
  }
  EXPECT_DOUBLE_EQ(gamma_from_catalog("gamma_log")(6.0), 4.0);
  EXPECT_DOUBLE_EQ(gamma_from_catalog("gamma_lin").gamma1(2.0), 16.0);
  EXPECT_THROW(gamma_from_catalog("nope"), InputError);
  EXPECT_TRUE(is_gamma_catalog_name("pi_unit"));
}

struct Expected {
  const char* name;
  std::map<std::string, bool> verdicts;
};

// Growth of (a+2) Gamma'(a) decides (2.2); Gamma' Gamma_1 decides (2.3).
// For gamma_lin, (a+2) Gamma' = a + 2 is unbounded, so (2.2) fails.
class GammaVerdicts : public ::testing::TestWithParam<Expected> {};

TEST_P(GammaVerdicts, ValidatorTable) {
  const auto& e = GetParam();
  const auto report = validate_gamma(gamma_from_catalog(e.name));
  for (const auto& [id, pass] : e.verdicts) {
    EXPECT_EQ(report.passes(id), pass) << e.name << " condition " << id << ": " << report.conditions.at(id).detail;
  }
}

INSTANTIATE_TEST_SUITE_P(
    Catalog, GammaVerdicts,
    ::testing::Values(Expected{"gamma_lin",
                               {{"i", true}, {"ii", true}, {"iii", true}, {"iv", true}, {"v", true}, {"vi", false},
                                {"2.2", false}, {"2.3", false}}},
                      Expected{"gamma_log",
                               {{"i", true}, {"ii", true}, {"iii", true}, {"iv", true}, {"v", true}, {"vi", true},
                                {"2.2", true}, {"2.3", false}}},
                      Expected{"gamma_sqrtlog",
                               {{"i", true}, {"ii", true}, {"iii", true}, {"iv", true}, {"v", true}, {"vi", true},
                                {"2.2", true}, {"2.3", true}}}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(GammaValidator, ModulusConditions) {
  const auto unit = validate_gamma(gamma_from_catalog("pi_unit"));
  EXPECT_TRUE(unit.passes("3.1"));
  EXPECT_FALSE(unit.passes("i"));  // never tends to infinity
  EXPECT_TRUE(validate_gamma(gamma_from_catalog("pi_linear")).passes("3.1"));
  GammaSpec quadratic{"quadratic", [](double a) { return std::max(1.0, a * a); }};
  EXPECT_FALSE(validate_gamma(quadratic).passes("3.1"));
  const auto log = validate_gamma(gamma_from_catalog("gamma_log"));
  EXPECT_TRUE(log.passes("3.1"));
  EXPECT_TRUE(log.passes("3.2"));
  EXPECT_GE(log.m1, -1);
}

TEST(GammaValidator, RejectsNonFinite) {
  GammaSpec bad{"bad", [](double a) { return a > 10.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }};
  EXPECT_THROW(validate_gamma(bad), InputError);
}

TEST(GammaValidator, ReportSerialises) {
  const auto r = validate_gamma(gamma_from_catalog("gamma_sqrtlog"));
  const auto j = r.to_json();
  EXPECT_EQ(j["name"], "gamma_sqrtlog");
  EXPECT_TRUE(j["conditions"]["2.3"]["pass"].get<bool>());
}
