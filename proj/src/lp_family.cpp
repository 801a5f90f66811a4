#include "bsq/lp_family.hpp"

#include <cmath>
#include <string>

#include "bsq/error.hpp"

namespace bsq {
namespace {

double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double lp_cutoff(double r, const ProfileParams& params) {
  if (r <= params.plateau) return 1.0;
  if (r >= 1.0) return 0.0;
  const double up = mollifier(1.0 - r);
  const double down = mollifier(r - params.plateau);
  return up / (up + down);
}

LPFamily::LPFamily(Grid grid, ProfileParams params) : grid_(grid), params_(params) {
  if (!(params.plateau >= 0.5 && params.plateau < 0.6)) {
    throw InputError("LP profile plateau must lie in [1/2, 3/5), got " + std::to_string(params.plateau));
  }
  const double radius = grid.dealias_radius();
  if (radius < 2.0) throw InputError("grid too small to host the j = 0 annulus");
  while (params_.plateau * std::ldexp(1.0, j_max_ + 1) < radius) ++j_max_;

  const int n = grid.n();
  bands_.assign(static_cast<std::size_t>(j_max_ + 2), std::vector<double>(grid.size(), 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double r = std::hypot(grid.wavenumber(a), grid.wavenumber(b));
      for (int j = -1; j <= j_max_; ++j) bands_[static_cast<std::size_t>(j + 1)][grid.flat(a, b)] = band_multiplier(j, r);
    }
  }
}

double LPFamily::phi_low(double r) const { return lp_cutoff(r, params_); }

double LPFamily::phi_annulus(double r) const { return lp_cutoff(0.5 * r, params_) - lp_cutoff(r, params_); }

double LPFamily::band_multiplier(int j, double r) const {
  if (j <= -2 || j > j_max_) return 0.0;
  if (j == -1) return phi_low(r);
  return phi_annulus(std::ldexp(r, -j));
}

const std::vector<double>& LPFamily::band(int j) const {
  if (j < -1 || j > j_max_) throw InputError("band index " + std::to_string(j) + " outside [-1, j_max]");
  return bands_[static_cast<std::size_t>(j + 1)];
}

std::vector<double> LPFamily::partial(int j) const {
  std::vector<double> m(grid_.size(), 0.0);
  const int top = std::min(j, j_max_);
  for (int k = -1; k <= top; ++k) {
    const auto& b = band(k);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += b[i];
  }
  return m;
}

SpectralField apply_multiplier(const SpectralField& f, const std::vector<double>& multiplier) {
  SpectralField out(f.grid());
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = multiplier[i] * src[i];
  return out;
}

SpectralField band_project(const SpectralField& f, const LPFamily& family, int j, Projection mode) {
  if (!(f.grid() == family.grid())) throw InputError("band_project: field and family grids differ");
  if (mode == Projection::delta) {
    if (j <= -2 || j > family.j_max()) return SpectralField(f.grid());
    return apply_multiplier(f, family.band(j));
  }
  if (j <= -2) return SpectralField(f.grid());
  return apply_multiplier(f, family.partial(j));
}

SpectralField BandDecomposition::sum() const {
  SpectralField s(bands.front().grid());
  for (const auto& b : bands) s += b;
  return s;
}

BandDecomposition decompose(const SpectralField& f, const LPFamily& family) {
  BandDecomposition d;
  d.bands.reserve(static_cast<std::size_t>(family.j_max() + 2));
  for (int j = -1; j <= family.j_max(); ++j) d.bands.push_back(band_project(f, family, j));
  return d;
}

}  // namespace bsq
