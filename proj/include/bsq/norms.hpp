#pragma once

#include <variant>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/gamma.hpp"
#include "bsq/lp_family.hpp"

namespace bsq {

struct BesovNorm {
  double s = 0.0;
  LebesgueExponent p{2.0};
  LebesgueExponent q{2.0};
};

struct BGammaNorm {
  const GammaSpec* gamma = nullptr;
  bool use_gamma1 = false;
};

struct B0InfInfNorm {};

using NormSpec = std::variant<BesovNorm, BGammaNorm, B0InfInfNorm>;

// Per-band L^p norms ||Delta_j f||_p, index j + 1, for j = -1 .. j_max.
std::vector<double> band_norms(const SpectralField& f, const LPFamily& family, const LebesgueExponent& p);
// Same for a vector field, using the pointwise Euclidean length.
std::vector<double> band_norms(const VelocityField& v, const LPFamily& family, const LebesgueExponent& p);

// Norms from precomputed band norms (index j + 1).
double besov_from_bands(const std::vector<double>& bands, double s, const LebesgueExponent& q);
// sup_{-1 <= N <= j_max} G(N)^-1 sum_{j <= N} bands[j]
double bgamma_from_bands(const std::vector<double>& sup_bands, const GammaSpec& gamma, bool use_gamma1);
double b0infinf_from_bands(const std::vector<double>& sup_bands);

// Sums and sups run over the resolved bands -1 .. family.j_max().
double norm(const SpectralField& f, const NormSpec& spec, const LPFamily& family);
double norm(const VelocityField& v, const NormSpec& spec, const LPFamily& family);

}  // namespace bsq
