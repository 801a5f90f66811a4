#pragma once

#include <cstddef>
#include <numbers>

namespace bsq {

// Uniform n x n grid on the periodic square [0, 2*pi)^2.
//
// Physical samples and Fourier coefficients share one row-major layout:
// index (a, b) -> a * n + b, where `a` runs along x1 and `b` along x2.
// Array index a carries the wavenumber k1 = a for a < n/2 and a - n otherwise.
class Grid {
 public:
  explicit Grid(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  static constexpr double length() { return 2.0 * std::numbers::pi; }
  double spacing() const { return length() / n_; }
  double cell_area() const { return spacing() * spacing(); }

  // Largest |k| kept after a nonlinear product (2/3 rule, circular).
  int dealias_radius() const { return n_ / 3; }

  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  // Array index of wavenumber k (k taken modulo n).
  int index_of(int k) const { return ((k % n_) + n_) % n_; }
  std::size_t flat(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }
  double coordinate(int index) const { return index * spacing(); }

  bool operator==(const Grid&) const = default;

 private:
  int n_;
};

}  // namespace bsq
