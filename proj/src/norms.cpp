#include "bsq/norms.hpp"

#include <algorithm>
#include <cmath>

#include "bsq/error.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq {

std::vector<double> band_norms(const SpectralField& f, const LPFamily& family, const LebesgueExponent& p) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(family.j_max() + 2));
  for (int j = -1; j <= family.j_max(); ++j) out.push_back(lp_norm(band_project(f, family, j), p));
  return out;
}

std::vector<double> band_norms(const VelocityField& v, const LPFamily& family, const LebesgueExponent& p) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(family.j_max() + 2));
  for (int j = -1; j <= family.j_max(); ++j) {
    const VelocityField b{band_project(v.u1, family, j), band_project(v.u2, family, j)};
    out.push_back(lp_norm(b, p));
  }
  return out;
}

double besov_from_bands(const std::vector<double>& bands, double s, const LebesgueExponent& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const int j = static_cast<int>(i) - 1;
    const double w = std::exp2(j * s) * bands[i];
    if (q.is_infinite()) {
      acc = std::max(acc, w);
    } else {
      acc += std::pow(w, q.value());
    }
  }
  return q.is_infinite() ? acc : std::pow(acc, 1.0 / q.value());
}

double bgamma_from_bands(const std::vector<double>& sup_bands, const GammaSpec& gamma, bool use_gamma1) {
  double partial = 0.0, best = 0.0;
  for (std::size_t i = 0; i < sup_bands.size(); ++i) {
    const double N = static_cast<double>(i) - 1.0;
    partial += sup_bands[i];
    const double weight = use_gamma1 ? gamma.gamma1(N) : gamma(N);
    best = std::max(best, partial / weight);
  }
  return best;
}

double b0infinf_from_bands(const std::vector<double>& sup_bands) {
  return sup_bands.empty() ? 0.0 : *std::max_element(sup_bands.begin(), sup_bands.end());
}

namespace {

template <class F>
double norm_impl(const F& f, const NormSpec& spec, const LPFamily& family) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BesovNorm>) {
          return besov_from_bands(band_norms(f, family, s.p), s.s, s.q);
        } else if constexpr (std::is_same_v<T, BGammaNorm>) {
          if (s.gamma == nullptr) throw InputError("B_Gamma norm requested without a Gamma");
          return bgamma_from_bands(band_norms(f, family, LebesgueExponent::infinity()), *s.gamma, s.use_gamma1);
        } else {
          return b0infinf_from_bands(band_norms(f, family, LebesgueExponent::infinity()));
        }
      },
      spec);
}

}  // namespace

double norm(const SpectralField& f, const NormSpec& spec, const LPFamily& family) {
  return norm_impl(f, spec, family);
}

double norm(const VelocityField& v, const NormSpec& spec, const LPFamily& family) {
  return norm_impl(v, spec, family);
}

}  // namespace bsq
