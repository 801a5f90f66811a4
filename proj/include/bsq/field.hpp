#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "bsq/fft.hpp"
#include "bsq/grid.hpp"

namespace bsq {

// Real periodic field stored as Fourier coefficients on the integer lattice.
// Coefficients of k and -k are kept conjugate so the physical field is real.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> coeffs);

  static SpectralField from_physical(Grid grid, std::span<const double> samples);
  static SpectralField from_function(Grid grid, const std::function<double(double, double)>& f);
  // c * exp(i k.x) + conj: the real field 2 Re(c e^{ik.x}) for k != 0, or c for k = 0.
  static SpectralField single_mode(Grid grid, int k1, int k2, Complex c);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  Complex at(int k1, int k2) const { return coeffs_[grid_.flat(grid_.index_of(k1), grid_.index_of(k2))]; }
  Complex& at(int k1, int k2) { return coeffs_[grid_.flat(grid_.index_of(k1), grid_.index_of(k2))]; }
  Complex mean() const { return coeffs_[0]; }

  std::vector<double> to_physical() const;

  // Largest |k| carrying a coefficient above `tol` (0 for the zero field).
  double spectral_radius(double tol = 0.0) const;
  double max_abs_coeff() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

 private:
  void check_same_grid(const SpectralField& other) const;

  Grid grid_;
  std::vector<Complex> coeffs_;
};

// Divergence-free velocity (u1, u2).
struct VelocityField {
  SpectralField u1;
  SpectralField u2;

  const Grid& grid() const { return u1.grid(); }
};

// Lebesgue exponent p in [1, inf]; infinity is explicit.
class LebesgueExponent {
 public:
  explicit LebesgueExponent(double p);
  static LebesgueExponent infinity() { return LebesgueExponent(Tag{}); }

  bool is_infinite() const { return infinite_; }
  double value() const;  // +inf when infinite

  bool operator==(const LebesgueExponent&) const = default;

 private:
  struct Tag {};
  explicit LebesgueExponent(Tag) : p_(0.0), infinite_(true) {}
  double p_;
  bool infinite_ = false;
};

inline const LebesgueExponent kDefaultP0{1.5};
inline const LebesgueExponent kDefaultP1{4.0};

}  // namespace bsq
