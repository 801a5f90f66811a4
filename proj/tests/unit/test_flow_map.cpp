#include <gtest/gtest.h>

#include <cmath>

#include "bsq/error.hpp"
#include "bsq/flow_map.hpp"
#include "bsq/spectral_ops.hpp"
#include "support.hpp"

using namespace bsq;

namespace {

Trajectory steady_run(const Grid& g, const SpectralField& w, std::array<double, 2> mean, double t_end) {
  SolverConfig c;
  c.kappa = 0.0;
  c.t_end = t_end;
  c.dt = 0.01;
  c.stride = 5;
  c.mean_velocity = mean;
  return simulate(w, SpectralField(g), c);
}

SpectralField taylor_green(const Grid& g) {
  return SpectralField::from_function(g, [](double x, double y) { return -2 * std::cos(x) * std::cos(y); });
}

}  // namespace

TEST(Bicubic, ExactOnGridAndAccurateBetween) {
  const Grid g(64);
  const auto f = SpectralField::from_function(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
  const auto s = f.to_physical();
  EXPECT_DOUBLE_EQ(interpolate_bicubic(g, s, g.coordinate(5), g.coordinate(9)), s[g.flat(5, 9)]);
  EXPECT_NEAR(interpolate_bicubic(g, s, 1.2345, -0.75), std::sin(1.2345) * std::cos(-1.5), 1e-4);
  EXPECT_NEAR(interpolate_bicubic(g, s, 1.2345 + 2 * M_PI, 7.0), std::sin(1.2345) * std::cos(14.0), 1e-4);
}

TEST(FlowMap, ZeroVelocityIsIdentity) {
  const Grid g(16);
  const auto traj = steady_run(g, SpectralField(g), {0.0, 0.0}, 0.2);
  const auto map = inverse_flow_map(traj, 0.0, 0.2);
  for (int a = 0; a < 16; ++a) {
    EXPECT_EQ(map.departure.x1[g.flat(a, 3)], g.coordinate(a));
    EXPECT_EQ(map.departure.x2[g.flat(a, 3)], g.coordinate(3));
  }
}

TEST(FlowMap, UniformTranslation) {
  const Grid g(16);
  const auto traj = steady_run(g, SpectralField(g), {0.4, -1.1}, 0.5);
  const auto map = inverse_flow_map(traj, 0.1, 0.5);
  for (std::size_t i = 0; i < g.size(); i += 7) {
    const int a = static_cast<int>(i) / 16, b = static_cast<int>(i) % 16;
    EXPECT_NEAR(map.departure.x1[i], g.coordinate(a) - 0.4 * 0.4, 1e-13);
    EXPECT_NEAR(map.departure.x2[i], g.coordinate(b) + 1.1 * 0.4, 1e-13);
  }
}

TEST(FlowMap, TaylorGreenMatchesFineStepOracle) {
  const Grid g(64);
  const auto traj = steady_run(g, taylor_green(g), {0.0, 0.0}, 0.6);
  const VelocityHistory history(traj);
  const auto map = inverse_flow_map(history, 0.1, 0.6, 2);
  Particles start;
  for (int a = 0; a < 64; ++a) {
    for (int b = 0; b < 64; ++b) {
      start.x1.push_back(g.coordinate(a));
      start.x2.push_back(g.coordinate(b));
    }
  }
  const auto fine = trace_particles(history, start, 0.6, 0.1, 200);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    err = std::max(err, std::hypot(map.departure.x1[i] - fine.x1[i], map.departure.x2[i] - fine.x2[i]));
  }
  EXPECT_LE(err, 1e-6);
}

TEST(FlowMap, VolumePreservingAndInvertible) {
  const Grid g(64);
  const auto traj = steady_run(g, taylor_green(g), {0.0, 0.0}, 0.5);
  const VelocityHistory history(traj);
  const auto map = inverse_flow_map(history, 0.0, 0.5, 2);
  for (double d : map.jacobian_determinant()) EXPECT_NEAR(d, 1.0, 0.02);
  const auto back = trace_particles(history, map.departure, 0.0, 0.5, 100);
  double err = 0.0;
  for (int a = 0; a < 64; ++a) {
    for (int b = 0; b < 64; ++b) {
      const std::size_t i = g.flat(a, b);
      err = std::max(err, std::hypot(back.x1[i] - g.coordinate(a), back.x2[i] - g.coordinate(b)));
    }
  }
  EXPECT_LE(err, 1e-4);
}

TEST(FlowMap, ComposeUnderTranslation) {
  const Grid g(64);
  const auto traj = steady_run(g, SpectralField(g), {0.5, 0.0}, 0.4);
  const auto map = inverse_flow_map(traj, 0.0, 0.4);
  const auto f = SpectralField::from_function(g, [](double x, double) { return std::sin(x); });
  const auto moved = map.compose(f);
  const auto expected = SpectralField::from_function(g, [](double x, double) { return std::sin(x - 0.2); });
  EXPECT_LE(bsq::testing::sample_distance(moved.to_physical(), expected.to_physical()), 1e-5);
}

TEST(FlowMap, RejectsSpanOutsideTrajectory) {
  const Grid g(16);
  const auto traj = steady_run(g, SpectralField(g), {0.1, 0.0}, 0.2);
  EXPECT_THROW(inverse_flow_map(traj, 0.0, 0.3), InputError);
  EXPECT_THROW(inverse_flow_map(traj, 0.2, 0.1), InputError);
}
