#include "bsq/paraproduct.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/error.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq {
namespace {

using Physical = std::vector<double>;

std::vector<Physical> physical_bands(const SpectralField& f, const LPFamily& family) {
  std::vector<Physical> out;
  for (int j = -1; j <= family.j_max(); ++j) out.push_back(band_project(f, family, j).to_physical());
  return out;
}

std::vector<Physical> running_sums(const std::vector<Physical>& bands) {
  std::vector<Physical> out;
  Physical acc(bands.front().size(), 0.0);
  for (const auto& b : bands) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += b[i];
    out.push_back(acc);
  }
  return out;
}

void add_product(Physical& acc, const Physical& a, const Physical& b) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

SpectralField to_dealiased(const Grid& grid, const Physical& samples) {
  auto f = SpectralField::from_physical(grid, samples);
  dealias(f);
  return f;
}

// Index into a j = -1.. vector.
std::size_t at(int j) { return static_cast<std::size_t>(j + 1); }

VelocityField without_mean(const VelocityField& u) {
  VelocityField v = u;
  v.u1.at(0, 0) = 0.0;
  v.u2.at(0, 0) = 0.0;
  return v;
}

double sup_abs(const Physical& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Pointwise Frobenius sup of the 2x2 gradient of (u1, u2) after a multiplier.
double gradient_sup(const VelocityField& u, const std::vector<double>& multiplier) {
  const auto u1 = apply_multiplier(u.u1, multiplier);
  const auto u2 = apply_multiplier(u.u2, multiplier);
  const Physical a = spectral_derivative(u1, Derivative::d1).to_physical();
  const Physical b = spectral_derivative(u1, Derivative::d2).to_physical();
  const Physical c = spectral_derivative(u2, Derivative::d1).to_physical();
  const Physical d = spectral_derivative(u2, Derivative::d2).to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i] + d[i] * d[i]));
  return m;
}

}  // namespace

BonySplit bony_decompose(const SpectralField& f, const SpectralField& g, const LPFamily& family) {
  if (!(f.grid() == g.grid()) || !(f.grid() == family.grid())) {
    throw InputError("bony_decompose: inputs must share the family grid");
  }
  const Grid& grid = f.grid();
  const int J = family.j_max();
  const auto fb = physical_bands(f, family);
  const auto gb = physical_bands(g, family);
  const auto fs = running_sums(fb);
  const auto gs = running_sums(gb);

  Physical t_fg(grid.size(), 0.0), t_gf(grid.size(), 0.0), rem(grid.size(), 0.0);
  for (int j = 1; j <= J; ++j) {  // j = 0 pairs with S_{-2} = 0
    add_product(t_fg, fs[at(j - 2)], gb[at(j)]);
    add_product(t_gf, gs[at(j - 2)], fb[at(j)]);
  }
  for (int j = -1; j <= J; ++j) {
    for (int k = std::max(-1, j - 1); k <= std::min(J, j + 1); ++k) add_product(rem, fb[at(j)], gb[at(k)]);
  }
  return {to_dealiased(grid, t_fg), to_dealiased(grid, t_gf), to_dealiased(grid, rem)};
}

SpectralField commutator_rj(const VelocityField& u, const SpectralField& rho, int j, const LPFamily& family) {
  if (j < -1 || j > family.j_max()) throw InputError("commutator_rj: band index outside [-1, j_max]");
  const VelocityField v = without_mean(u);
  const auto adv = advect(v, rho);
  const auto low = family.partial(std::max(j - 2, -1));
  const VelocityField v_low{apply_multiplier(v.u1, low), apply_multiplier(v.u2, low)};
  return band_project(adv, family, j) - advect(v_low, band_project(rho, family, j));
}

std::vector<SpectralField> commutator_all(const VelocityField& u, const SpectralField& rho, const LPFamily& family) {
  const VelocityField v = without_mean(u);
  const auto adv = advect(v, rho);
  std::vector<SpectralField> out;
  for (int j = -1; j <= family.j_max(); ++j) {
    const auto low = family.partial(std::max(j - 2, -1));
    const VelocityField v_low{apply_multiplier(v.u1, low), apply_multiplier(v.u2, low)};
    out.push_back(band_project(adv, family, j) - advect(v_low, band_project(rho, family, j)));
  }
  return out;
}

CommutatorBandData CommutatorBandData::compute(const VelocityField& u, const SpectralField& rho,
                                               const LPFamily& family) {
  CommutatorBandData d;
  for (int l = -1; l <= family.j_max(); ++l) {
    d.rho_band.push_back(sup_abs(band_project(rho, family, l).to_physical()));
    d.rho_partial.push_back(sup_abs(band_project(rho, family, l, Projection::partial_sum).to_physical()));
    d.gradu_band.push_back(gradient_sup(u, family.band(l)));
    d.gradu_partial.push_back(gradient_sup(u, family.partial(l)));
  }
  const VelocityField low{band_project(u.u1, family, -1), band_project(u.u2, family, -1)};
  d.u_low = lp_norm(low, LebesgueExponent::infinity());
  return d;
}

double CommutatorBandData::rhs(int j, int j_max) const {
  auto low_index = [](int l) { return at(std::max(l - 2, -1)); };
  double diag = 0.0;
  for (int l = std::max(-1, j - 1); l <= std::min(j_max, j + 1); ++l) {
    diag += rho_partial[low_index(l)] * gradu_band[at(l)] + gradu_partial[low_index(l)] * rho_band[at(l)];
  }
  double tail = 0.0;
  for (int l = std::max(-1, j - 1); l <= j_max; ++l) {
    const double grad = l == -1 ? u_low : gradu_band[at(l)];
    double rho_sum = 0.0;
    for (int m = std::max(-1, l - 1); m <= std::min(j_max, l + 1); ++m) rho_sum += rho_band[at(m)];
    tail += std::exp2(-l) * grad * rho_sum;
  }
  return diag + std::exp2(j) * tail;
}

namespace {

RatioReport make_report(int j, double lhs, double rhs) {
  RatioReport r{j, lhs, rhs, 0.0, false};
  constexpr double tol = 1e-13;
  if (rhs > 0.0) {
    r.ratio = lhs / rhs;
  } else if (lhs > tol) {
    r.ratio = INFINITY;
    r.violation = true;
  }
  return r;
}

}  // namespace

RatioReport commutator_bound_ratio(const VelocityField& u, const SpectralField& rho, int j, const LPFamily& family) {
  const double lhs = lp_norm(commutator_rj(u, rho, j, family), LebesgueExponent::infinity());
  const auto data = CommutatorBandData::compute(u, rho, family);
  return make_report(j, lhs, data.rhs(j, family.j_max()));
}

std::vector<RatioReport> commutator_bound_sweep(const VelocityField& u, const SpectralField& rho,
                                                const LPFamily& family) {
  const auto data = CommutatorBandData::compute(u, rho, family);
  const auto rj = commutator_all(u, rho, family);
  std::vector<RatioReport> out;
  for (int j = -1; j <= family.j_max(); ++j) {
    out.push_back(make_report(j, lp_norm(rj[at(j)], LebesgueExponent::infinity()), data.rhs(j, family.j_max())));
  }
  return out;
}

}  // namespace bsq
