#include "bsq/field.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsq/error.hpp"

namespace bsq {

SpectralField::SpectralField(Grid grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) throw InputError("coefficient count does not match grid");
}

SpectralField SpectralField::from_physical(Grid grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) throw InputError("sample count does not match grid");
  return SpectralField(grid, fft::forward_real(grid, samples));
}

SpectralField SpectralField::from_function(Grid grid, const std::function<double(double, double)>& f) {
  std::vector<double> samples(grid.size());
  for (int a = 0; a < grid.n(); ++a) {
    for (int b = 0; b < grid.n(); ++b) {
      samples[grid.flat(a, b)] = f(grid.coordinate(a), grid.coordinate(b));
    }
  }
  return from_physical(grid, samples);
}

SpectralField SpectralField::single_mode(Grid grid, int k1, int k2, Complex c) {
  SpectralField f(grid);
  if (k1 == 0 && k2 == 0) {
    f.at(0, 0) = Complex(c.real(), 0.0);
  } else {
    f.at(k1, k2) += c;
    f.at(-k1, -k2) += std::conj(c);
  }
  return f;
}

std::vector<double> SpectralField::to_physical() const { return fft::inverse_real(grid_, coeffs_); }

double SpectralField::spectral_radius(double tol) const {
  double r = 0.0;
  const int n = grid_.n();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (std::abs(coeffs_[grid_.flat(a, b)]) > tol) {
        const double k1 = grid_.wavenumber(a), k2 = grid_.wavenumber(b);
        r = std::max(r, std::hypot(k1, k2));
      }
    }
  }
  return r;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void SpectralField::check_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw InputError("fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

LebesgueExponent::LebesgueExponent(double p) : p_(p) {
  if (std::isinf(p) && p > 0) {
    infinite_ = true;
  } else if (!(p >= 1.0)) {
    throw InputError("Lebesgue exponent must lie in [1, inf], got " + std::to_string(p));
  }
}

double LebesgueExponent::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

}  // namespace bsq
