#include <gtest/gtest.h>

#include <cmath>

#include "bsq/error.hpp"
#include "bsq/initial_data.hpp"
#include "bsq/solver.hpp"
#include "bsq/spectral_ops.hpp"
#include "support.hpp"

using namespace bsq;
using bsq::testing::coeff_distance;

namespace {

SpectralField cos1(const Grid& g) { return SpectralField::from_function(g, [](double x, double) { return std::cos(x); }); }
SpectralField taylor_green(const Grid& g) {
  return SpectralField::from_function(g, [](double x, double y) { return -2 * std::cos(x) * std::cos(y); });
}

SimState run(const SpectralField& w, const SpectralField& r, SolverConfig c) {
  c.store_states = false;
  return simulate(w, r, c).states.back();
}

}  // namespace

TEST(ImexStep, ExactDiffusionFactor) {
  const Grid g(32);
  SolverConfig c;
  c.kappa = 0.1;
  c.dt = 1e-3;
  const SimState s{0.0, SpectralField(g), cos1(g)};
  const auto next = imex_step(s, velocity_of(s.omega, c), c);
  EXPECT_NEAR(std::abs(next.rho.at(1, 0) - 0.5 * std::exp(-0.1 * 1e-3)), 0.0, 1e-16);
  EXPECT_EQ(next.t, 1e-3);
}

TEST(ImexStep, TaylorGreenIsSteady) {
  const Grid g(64);
  SolverConfig c;
  c.kappa = 0.3;
  SimState s{0.0, taylor_green(g), SpectralField(g)};
  for (int i = 0; i < 10; ++i) {
    const auto next = imex_step(s, velocity_of(s.omega, c), c);
    EXPECT_LE(coeff_distance(next.omega, s.omega), 1e-10);
    s = next;
  }
}

TEST(ImexStep, BuoyancyDrivesVorticity) {
  const Grid g(32);
  SolverConfig c;
  c.kappa = 0.05;
  const SimState s{0.0, SpectralField(g), SpectralField::from_function(g, [](double x, double) { return std::sin(x); })};
  double prev = 0.0;
  for (double dt : {1e-2, 5e-3}) {
    c.dt = dt;
    const auto next = imex_step(s, velocity_of(s.omega, c), c);
    const double err = coeff_distance(next.omega, dt * cos1(g));
    EXPECT_LE(err, 0.1 * dt * dt);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.5);
    prev = err;
  }
}

TEST(ImexStep, CflViolationSuggestsStep) {
  const Grid g(32);
  SolverConfig c;
  c.dt = 0.5;
  const SimState s{0.0, 10.0 * taylor_green(g), SpectralField(g)};
  try {
    imex_step(s, velocity_of(s.omega, c), c);
    FAIL() << "CFL violation not detected";
  } catch (const CflViolation& e) {
    EXPECT_GT(e.suggested_dt(), 0.0);
    EXPECT_LT(e.suggested_dt(), 0.5);
  }
}

TEST(Simulate, ZeroDataStaysZero) {
  const Grid g(32);
  SolverConfig c;
  c.t_end = 0.1;
  c.stride = 10;
  const auto traj = simulate(SpectralField(g), SpectralField(g), c);
  ASSERT_EQ(traj.states.size(), 11u);
  for (const auto& s : traj.states) {
    EXPECT_EQ(s.omega.max_abs_coeff(), 0.0);
    EXPECT_EQ(s.rho.max_abs_coeff(), 0.0);
  }
  EXPECT_NEAR(traj.sample_interval(), 0.01, 1e-15);
}

TEST(Simulate, HeatClosedForm) {
  const Grid g(32);
  SolverConfig c;
  c.kappa = 0.1;
  c.buoyancy = false;
  const auto end = run(SpectralField(g), cos1(g), c);
  EXPECT_LE(coeff_distance(end.rho, std::exp(-0.1) * cos1(g)), 1e-10);
  EXPECT_EQ(end.omega.max_abs_coeff(), 0.0);
}

TEST(Simulate, SecondOrderInTime) {
  const Grid g(32);
  RandomSpectrum spec{3.0, 1.0, 4.0, 1.0, false, 5};
  const auto w = random_field(g, spec);
  spec.seed = 6;
  const auto r = random_field(g, spec);
  SolverConfig c;
  c.t_end = 0.4;
  c.kappa = 0.05;
  c.dt = 0.0025;
  const auto ref = run(w, r, c);
  c.dt = 0.02;
  const double e1 = coeff_distance(run(w, r, c).omega, ref.omega);
  c.dt = 0.01;
  const double e2 = coeff_distance(run(w, r, c).omega, ref.omega);
  EXPECT_NEAR(e1 / e2, 4.0, 0.8);
}

TEST(Simulate, EulerConservesLpNorms) {
  const Grid g(64);
  const auto w = random_field(g, RandomSpectrum{3.0, 1.0, 3.0, 1.0, false, 2});
  SolverConfig c;
  c.kappa = 0.0;
  c.t_end = 1.0;
  const auto end = run(w, SpectralField(g), c);
  for (double p : {1.5, 4.0}) {
    const LebesgueExponent e(p);
    EXPECT_LE(std::abs(lp_norm(end.omega, e) - lp_norm(w, e)), 1e-5 * lp_norm(w, e)) << "p=" << p;
  }
}

TEST(Simulate, DensityMeanIsConserved) {
  const Grid g(32);
  auto r = random_field(g, RandomSpectrum{2.0, 1.0, 6.0, 1.0, false, 3});
  r.at(0, 0) = 0.75;
  SolverConfig c;
  c.t_end = 0.2;
  const auto end = run(random_field(g, RandomSpectrum{2.0, 1.0, 6.0, 1.0, false, 4}), r, c);
  EXPECT_NEAR(end.rho.mean().real(), 0.75, 1e-13);
}

TEST(Simulate, ObserversSeeEveryStep) {
  const Grid g(16);
  SolverConfig c;
  c.t_end = 0.05;
  c.dt = 0.01;
  int calls = 0;
  std::vector<StepObserver> observers{[&](const SimState&, const VelocityField&) { ++calls; }};
  simulate(SpectralField(g), cos1(g), c, observers);
  EXPECT_EQ(calls, 6);
}

TEST(Simulate, CflSubsteppingMatchesSmallSteps) {
  const Grid g(32);
  const auto w = 4.0 * taylor_green(g) + random_field(g, RandomSpectrum{3.0, 2.0, 5.0, 1.0, false, 8});
  SolverConfig c;
  c.t_end = 0.2;
  c.dt = 0.1;
  c.cfl_limit = 0.5;
  const auto coarse = run(w, SpectralField(g), c);
  EXPECT_TRUE(std::isfinite(coarse.omega.max_abs_coeff()));
  EXPECT_NEAR(coarse.t, 0.2, 1e-15);
}

TEST(Simulation, RejectsInvalidInput) {
  const Grid g(16);
  SolverConfig c;
  EXPECT_THROW(Simulation(SpectralField::single_mode(g, 0, 0, 1.0), SpectralField(g), c), InputError);
  c.t_end = 0.0105;
  EXPECT_THROW(Simulation(SpectralField(g), SpectralField(g), c), ConfigError);
  c = SolverConfig{};
  c.kappa = -1;
  try {
    Simulation(SpectralField(g), SpectralField(g), c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "kappa");
  }
  EXPECT_THROW(Simulation(SpectralField(g), SpectralField(Grid(32)), SolverConfig{}), InputError);
}

TEST(Integrator, NamesRoundTrip) {
  EXPECT_EQ(integrator_from_string(to_string(Integrator::imex_euler)), Integrator::imex_euler);
  EXPECT_EQ(to_string(Integrator::imex_rk2), "imex-rk2");
  EXPECT_ANY_THROW(integrator_from_string("rk4"));
}
