#include "bsq/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/error.hpp"

namespace bsq {
namespace {

constexpr Complex kI{0.0, 1.0};

template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  const int n = grid.n();
  for (int a = 0; a < n; ++a) {
    const double k1 = grid.wavenumber(a);
    for (int b = 0; b < n; ++b) {
      fn(grid.flat(a, b), k1, static_cast<double>(grid.wavenumber(b)));
    }
  }
}

std::vector<double> physical_product_sum(const Grid& grid,
                                         std::initializer_list<std::pair<const SpectralField*, const SpectralField*>> terms) {
  std::vector<double> acc(grid.size(), 0.0);
  for (const auto& [a, b] : terms) {
    const auto pa = a->to_physical();
    const auto pb = b->to_physical();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pa[i] * pb[i];
  }
  return acc;
}

}  // namespace

SpectralField spectral_derivative(const SpectralField& f, Derivative which) {
  SpectralField out(f.grid());
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for_each_mode(f.grid(), [&](std::size_t i, double k1, double k2) {
    switch (which) {
      case Derivative::d1: dst[i] = kI * k1 * src[i]; break;
      case Derivative::d2: dst[i] = kI * k2 * src[i]; break;
      case Derivative::laplacian: dst[i] = -(k1 * k1 + k2 * k2) * src[i]; break;
    }
  });
  return out;
}

VelocityField gradient(const SpectralField& f) {
  return {spectral_derivative(f, Derivative::d1), spectral_derivative(f, Derivative::d2)};
}

SpectralField curl(const VelocityField& u) {
  return spectral_derivative(u.u2, Derivative::d1) - spectral_derivative(u.u1, Derivative::d2);
}

SpectralField divergence(const VelocityField& u) {
  return spectral_derivative(u.u1, Derivative::d1) + spectral_derivative(u.u2, Derivative::d2);
}

VelocityField biot_savart(const SpectralField& w, bool strict) {
  if (strict && std::abs(w.mean()) > 1e-14 * std::max(1.0, w.max_abs_coeff())) {
    throw InputError("biot_savart: vorticity has nonzero mean; no periodic stream function exists");
  }
  VelocityField u{SpectralField(w.grid()), SpectralField(w.grid())};
  auto src = w.coeffs();
  auto d1 = u.u1.coeffs();
  auto d2 = u.u2.coeffs();
  for_each_mode(w.grid(), [&](std::size_t i, double k1, double k2) {
    const double k2sum = k1 * k1 + k2 * k2;
    if (k2sum == 0.0) return;
    const Complex psi = src[i] / k2sum;
    d1[i] = kI * k2 * psi;
    d2[i] = -kI * k1 * psi;
  });
  return u;
}

bool inside_dealias_disk(const Grid& grid, int a, int b) {
  const long k1 = grid.wavenumber(a), k2 = grid.wavenumber(b);
  const long r = grid.dealias_radius();
  return k1 * k1 + k2 * k2 <= r * r;
}

void dealias(SpectralField& f) {
  const Grid& grid = f.grid();
  auto c = f.coeffs();
  for (int a = 0; a < grid.n(); ++a) {
    for (int b = 0; b < grid.n(); ++b) {
      if (!inside_dealias_disk(grid, a, b)) c[grid.flat(a, b)] = 0.0;
    }
  }
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw InputError("product: fields live on different grids");
  auto out = SpectralField::from_physical(f.grid(), physical_product_sum(f.grid(), {{&f, &g}}));
  dealias(out);
  return out;
}

SpectralField advect(const VelocityField& u, const SpectralField& f) {
  const auto fx = spectral_derivative(f, Derivative::d1);
  const auto fy = spectral_derivative(f, Derivative::d2);
  auto out = SpectralField::from_physical(f.grid(),
                                          physical_product_sum(f.grid(), {{&u.u1, &fx}, {&u.u2, &fy}}));
  dealias(out);
  return out;
}

double lp_norm(const Grid& grid, std::span<const double> samples, const LebesgueExponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  const double q = p.value();
  double s = 0.0;
  if (q == 2.0) {
    for (double v : samples) s += v * v;
  } else {
    for (double v : samples) s += std::pow(std::abs(v), q);
  }
  return std::pow(s * grid.cell_area(), 1.0 / q);
}

double lp_norm(const Grid& grid, std::span<const double> x, std::span<const double> y,
               const LebesgueExponent& p) {
  std::vector<double> mag(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mag[i] = std::hypot(x[i], y[i]);
  return lp_norm(grid, mag, p);
}

double lp_norm(const SpectralField& f, const LebesgueExponent& p) {
  return lp_norm(f.grid(), f.to_physical(), p);
}

double lp_norm(const VelocityField& u, const LebesgueExponent& p) {
  return lp_norm(u.grid(), u.u1.to_physical(), u.u2.to_physical(), p);
}

double l2_norm_squared(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return s * Grid::length() * Grid::length();
}

}  // namespace bsq
