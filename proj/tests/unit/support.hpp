#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bsq/field.hpp"

namespace bsq::testing {

// Band-limited real field with independent Gaussian coefficients on |k| <= kmax.
inline SpectralField random_bandlimited(const Grid& grid, double kmax, unsigned seed, bool zero_mean = true) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField f(grid);
  const int r = static_cast<int>(std::floor(kmax));
  for (int k1 = -r; k1 <= r; ++k1) {
    for (int k2 = -r; k2 <= r; ++k2) {
      if (k1 * k1 + k2 * k2 > kmax * kmax) continue;
      // One representative per conjugate pair.
      if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;
      const std::complex<double> c(normal(gen), normal(gen));
      if (k1 == 0 && k2 == 0) {
        f.at(0, 0) = zero_mean ? 0.0 : c.real();
        continue;
      }
      f.at(k1, k2) = c;
      f.at(-k1, -k2) = std::conj(c);
    }
  }
  return f;
}

inline double coeff_distance(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return d;
}

inline double sample_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Exact spectral convolution of two band-limited fields, restricted to the
// dealiasing disk. Used as the product oracle.
inline SpectralField brute_force_product(const SpectralField& f, const SpectralField& g) {
  const Grid& grid = f.grid();
  const int n = grid.n();
  const int r = grid.dealias_radius();
  SpectralField out(grid);
  std::vector<std::pair<int, int>> fk, gk;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int k1 = grid.wavenumber(a), k2 = grid.wavenumber(b);
      if (f.at(k1, k2) != 0.0) fk.emplace_back(k1, k2);
      if (g.at(k1, k2) != 0.0) gk.emplace_back(k1, k2);
    }
  }
  for (auto [p1, p2] : fk) {
    for (auto [q1, q2] : gk) {
      const int s1 = p1 + q1, s2 = p2 + q2;
      if (s1 * s1 + s2 * s2 > r * r) continue;
      out.at(s1, s2) += f.at(p1, p2) * g.at(q1, q2);
    }
  }
  return out;
}

}  // namespace bsq::testing
