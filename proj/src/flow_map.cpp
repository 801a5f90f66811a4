#include "bsq/flow_map.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/error.hpp"

namespace bsq {
namespace {

// Catmull-Rom weights for fractional offset s in [0, 1) over nodes -1, 0, 1, 2.
std::array<double, 4> cubic_weights(double s) {
  const double s2 = s * s, s3 = s2 * s;
  return {-0.5 * s3 + s2 - 0.5 * s, 1.5 * s3 - 2.5 * s2 + 1.0, -1.5 * s3 + 2.0 * s2 + 0.5 * s, 0.5 * s3 - 0.5 * s2};
}

}  // namespace

double interpolate_bicubic(const Grid& grid, std::span<const double> samples, double x1, double x2) {
  const int n = grid.n();
  const double h = grid.spacing();
  const double g1 = x1 / h, g2 = x2 / h;
  const double f1 = std::floor(g1), f2 = std::floor(g2);
  const auto w1 = cubic_weights(g1 - f1);
  const auto w2 = cubic_weights(g2 - f2);
  const long base1 = static_cast<long>(f1), base2 = static_cast<long>(f2);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int a = static_cast<int>(((base1 + i - 1) % n + n) % n);
    double row = 0.0;
    for (int j = 0; j < 4; ++j) {
      const int b = static_cast<int>(((base2 + j - 1) % n + n) % n);
      row += w2[j] * samples[grid.flat(a, b)];
    }
    acc += w1[i] * row;
  }
  return acc;
}

VelocityHistory::VelocityHistory(const Trajectory& traj) : grid_(traj.states.empty() ? Grid(16) : traj.states.front().omega.grid()) {
  if (traj.states.empty()) throw InputError("trajectory has no stored states");
  const auto frozen = velocity_of(traj.states.front().omega, traj.config);
  for (const auto& s : traj.states) {
    const VelocityField u = traj.config.frozen_velocity ? frozen : velocity_of(s.omega, traj.config);
    times_.push_back(s.t);
    u1_.push_back(u.u1.to_physical());
    u2_.push_back(u.u2.to_physical());
  }
}

std::array<double, 2> VelocityHistory::velocity(double x1, double x2, double t) const {
  const auto count = static_cast<long>(times_.size());
  if (count == 1) {
    return {interpolate_bicubic(grid_, u1_[0], x1, x2), interpolate_bicubic(grid_, u2_[0], x1, x2)};
  }
  // Four-sample window around t, shifted inward at the ends.
  const auto upper = std::upper_bound(times_.begin(), times_.end(), t);
  long i = std::clamp<long>(static_cast<long>(upper - times_.begin()) - 1, 0, count - 2);
  const long width = std::min<long>(4, count);
  long first = std::clamp<long>(i - 1, 0, count - width);
  std::array<double, 2> v{0.0, 0.0};
  for (long a = first; a < first + width; ++a) {
    double w = 1.0;
    for (long b = first; b < first + width; ++b) {
      if (b != a) w *= (t - times_[b]) / (times_[a] - times_[b]);
    }
    if (w == 0.0) continue;
    v[0] += w * interpolate_bicubic(grid_, u1_[a], x1, x2);
    v[1] += w * interpolate_bicubic(grid_, u2_[a], x1, x2);
  }
  return v;
}

Particles trace_particles(const VelocityHistory& history, Particles p, double t_from, double t_to, int steps) {
  if (steps < 1) throw InputError("trace_particles: steps must be >= 1");
  const double span_eps = 1e-12 * std::max(1.0, std::abs(history.t_end()));
  for (double t : {t_from, t_to}) {
    if (t < history.t_begin() - span_eps || t > history.t_end() + span_eps) {
      throw InputError("time " + std::to_string(t) + " outside the trajectory span");
    }
  }
  const double h = (t_to - t_from) / steps;
  for (std::size_t i = 0; i < p.x1.size(); ++i) {
    double x = p.x1[i], y = p.x2[i], t = t_from;
    for (int s = 0; s < steps; ++s) {
      const auto k1 = history.velocity(x, y, t);
      const auto k2 = history.velocity(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], t + 0.5 * h);
      const auto k3 = history.velocity(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], t + 0.5 * h);
      const auto k4 = history.velocity(x + h * k3[0], y + h * k3[1], t + h);
      x += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
      y += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
      t = t_from + (s + 1) * h;
    }
    p.x1[i] = x;
    p.x2[i] = y;
  }
  return p;
}

FlowMap inverse_flow_map(const VelocityHistory& history, double tau, double t, int substeps) {
  if (tau > t) throw InputError("inverse_flow_map requires tau <= t");
  const Grid& grid = history.grid();
  Particles nodes;
  for (int a = 0; a < grid.n(); ++a) {
    for (int b = 0; b < grid.n(); ++b) {
      nodes.x1.push_back(grid.coordinate(a));
      nodes.x2.push_back(grid.coordinate(b));
    }
  }
  FlowMap map{grid, tau, t, nodes};
  if (t == tau) return map;
  const double interval = history.sample_interval();
  const int steps = interval > 0.0 ? std::max(1, static_cast<int>(std::lround((t - tau) / interval * substeps)))
                                   : std::max(1, substeps);
  map.departure = trace_particles(history, std::move(nodes), t, tau, steps);
  return map;
}

FlowMap inverse_flow_map(const Trajectory& traj, double tau, double t, int substeps) {
  return inverse_flow_map(VelocityHistory(traj), tau, t, substeps);
}

std::vector<double> FlowMap::jacobian_determinant() const {
  const int n = grid.n();
  const double h2 = 2.0 * grid.spacing();
  auto disp1 = [&](int a, int b) {
    a = (a + n) % n;
    b = (b + n) % n;
    return departure.x1[grid.flat(a, b)] - grid.coordinate(a);
  };
  auto disp2 = [&](int a, int b) {
    a = (a + n) % n;
    b = (b + n) % n;
    return departure.x2[grid.flat(a, b)] - grid.coordinate(b);
  };
  std::vector<double> det(grid.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double d11 = 1.0 + (disp1(a + 1, b) - disp1(a - 1, b)) / h2;
      const double d12 = (disp1(a, b + 1) - disp1(a, b - 1)) / h2;
      const double d21 = (disp2(a + 1, b) - disp2(a - 1, b)) / h2;
      const double d22 = 1.0 + (disp2(a, b + 1) - disp2(a, b - 1)) / h2;
      det[grid.flat(a, b)] = d11 * d22 - d12 * d21;
    }
  }
  return det;
}

SpectralField FlowMap::compose(const SpectralField& f) const {
  if (!(f.grid() == grid)) throw InputError("compose: field grid differs from flow map grid");
  const auto samples = f.to_physical();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = interpolate_bicubic(grid, samples, departure.x1[i], departure.x2[i]);
  }
  return SpectralField::from_physical(grid, out);
}

}  // namespace bsq
