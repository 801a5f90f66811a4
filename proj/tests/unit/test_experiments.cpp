#include <gtest/gtest.h>

#include <cmath>

#include "bsq/error.hpp"
#include "bsq/experiments.hpp"
#include "bsq/initial_data.hpp"
#include "bsq/norms.hpp"

using namespace bsq;

namespace {

struct Data {
  Grid grid{32};
  SpectralField omega = random_field(grid, RandomSpectrum{3.0, 1.0, 6.0, 1.0, false, 3});
  SpectralField rho = random_field(grid, RandomSpectrum{3.0, 1.0, 6.0, 0.3, false, 4});
  SolverConfig config = [] {
    SolverConfig c;
    c.t_end = 0.2;
    c.dt = 2e-3;
    c.stride = 5;
    return c;
  }();
};

}  // namespace

TEST(Uniqueness, ZeroPerturbationGivesZeroF) {
  Data d;
  const LPFamily fam(d.grid);
  const auto r = uniqueness_experiment(d.omega, d.rho, Perturbation{PerturbTarget::omega, 2, 0.0}, d.config, fam,
                                       gamma_from_catalog("gamma_log"));
  for (double f : r.f) EXPECT_EQ(f, 0.0);
  EXPECT_EQ(r.delta_prime, 0.0);
  EXPECT_TRUE(r.dominated);
}

TEST(Uniqueness, EnvelopeDominatesAndShrinksWithDelta) {
  Data d;
  const LPFamily fam(d.grid);
  const auto pi = gamma_from_catalog("gamma_log");
  const auto a = uniqueness_experiment(d.omega, d.rho, Perturbation{PerturbTarget::omega, 2, 1e-6}, d.config, fam, pi);
  const auto b = uniqueness_experiment(d.omega, d.rho, Perturbation{PerturbTarget::omega, 2, 5e-7}, d.config, fam, pi);
  EXPECT_TRUE(a.dominated);
  EXPECT_GT(a.delta_prime, 0.0);
  EXPECT_EQ(a.f.front(), 0.0);
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    EXPECT_LE(a.f[i], a.envelope[i]);
    if (i > 0) EXPECT_LT(b.f[i], a.f[i]);
  }
  EXPECT_EQ(a.tail.size(), a.t.size());
}

TEST(Uniqueness, RejectsTinyPerturbation) {
  Data d;
  const LPFamily fam(d.grid);
  EXPECT_THROW(uniqueness_experiment(d.omega, d.rho, Perturbation{PerturbTarget::rho, 1, 1e-16}, d.config, fam,
                                     gamma_from_catalog("gamma_log")),
               InputError);
}

TEST(Approximation, RejectsShortList) {
  Data d;
  const LPFamily fam(d.grid);
  EXPECT_THROW(approximation_experiment(d.omega, d.rho, {1, 2}, d.config, fam, gamma_from_catalog("gamma_log")),
               InputError);
  EXPECT_THROW(approximation_experiment(d.omega, d.rho, {1, 3, 2}, d.config, fam, gamma_from_catalog("gamma_log")),
               InputError);
}

TEST(Approximation, BandLimitedDataIsExactlyTruncated) {
  Data d;
  const LPFamily fam(d.grid);
  const auto g = SpectralField::single_mode(d.grid, 2, 0, 0.5);
  const auto w = SpectralField::single_mode(d.grid, 0, 1, 0.5);
  const auto table = approximation_experiment(w, g, {2, 3, 4}, d.config, fam, gamma_from_catalog("gamma_log"));
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.iota, 0.0);
    EXPECT_EQ(row.kappa, 0.0);
  }
}

TEST(Approximation, GapsShrinkWithL) {
  Data d;
  d.grid = Grid(64);
  d.omega = random_field(d.grid, RandomSpectrum{3.0, 1.0, 21.0, 1.0, false, 3});
  d.rho = random_field(d.grid, RandomSpectrum{3.0, 1.0, 21.0, 1.0, false, 4});
  d.config.t_end = 0.1;
  const LPFamily fam(d.grid);
  const auto table = approximation_experiment(d.omega, d.rho, {2, 3, 4, 5}, d.config, fam, gamma_from_catalog("gamma_log"));
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_TRUE(table.gaps_monotone);
  EXPECT_LT(table.slope, table.reference_slope + 0.3);
}

TEST(FitSlope, ExactLine) {
  EXPECT_DOUBLE_EQ(fit_slope({1, 2, 3}, {5, 3, 1}), -2.0);
  EXPECT_THROW(fit_slope({1}, {1}), InputError);
}

TEST(FlowComposition, IdentityAndTranslation) {
  const Grid g(32);
  const LPFamily fam(g);
  const auto gamma = gamma_from_catalog("gamma_log");
  SolverConfig c;
  c.kappa = 0.0;
  c.t_end = 0.3;
  c.dt = 0.01;
  c.mean_velocity = {0.7, 0.2};
  const auto traj = simulate(SpectralField(g), SpectralField(g), c);
  const auto f = SpectralField::from_function(g, [](double x, double y) { return std::sin(2 * x) + std::cos(y); });
  const auto rec = flow_composition_check(traj, f, fam, gamma, {{0.1, 0.1}, {0.0, 0.1}, {0.0, 0.2}, {0.0, 0.3}});
  const double identity = norm(f, BGammaNorm{&gamma, true}, fam) / norm(f, BGammaNorm{&gamma, false}, fam);
  EXPECT_NEAR(rec.samples[0].ratio, identity, 1e-14);
  EXPECT_LE(rec.samples[0].ratio, 1.0);
  for (const auto& s : rec.samples) EXPECT_NEAR(s.ratio, identity, 1e-2 * identity);
}
