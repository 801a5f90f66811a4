#pragma once

#include <span>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/solver.hpp"

namespace bsq {

// Periodic bicubic (Catmull-Rom) interpolation of grid samples at (x1, x2).
double interpolate_bicubic(const Grid& grid, std::span<const double> samples, double x1, double x2);

// Velocity samples of a trajectory, interpolated bicubically in space and by
// cubic Lagrange polynomials in time.
class VelocityHistory {
 public:
  explicit VelocityHistory(const Trajectory& traj);

  const Grid& grid() const { return grid_; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  double sample_interval() const { return times_.size() > 1 ? times_[1] - times_[0] : 0.0; }
  std::array<double, 2> velocity(double x1, double x2, double t) const;

 private:
  Grid grid_;
  std::vector<double> times_;
  std::vector<std::vector<double>> u1_, u2_;
};

// Positions stay unwrapped (continuous in x) so displacements are smooth.
struct Particles {
  std::vector<double> x1;
  std::vector<double> x2;
};

// RK4 along the interpolated velocity from t_from to t_to (either direction).
Particles trace_particles(const VelocityHistory& history, Particles start, double t_from, double t_to, int steps);

// Departure points X^-1(x, t; tau) of every grid node x.
struct FlowMap {
  Grid grid;
  double tau = 0.0;
  double t = 0.0;
  Particles departure;

  // Determinant of the Jacobian of the map, by central differences of the
  // periodic displacement field.
  std::vector<double> jacobian_determinant() const;
  // f o X^-1 sampled on the grid by bicubic interpolation of f.
  SpectralField compose(const SpectralField& f) const;
};

// `substeps` RK4 steps per trajectory sample interval.
FlowMap inverse_flow_map(const Trajectory& traj, double tau, double t, int substeps = 1);
FlowMap inverse_flow_map(const VelocityHistory& history, double tau, double t, int substeps = 1);

}  // namespace bsq
