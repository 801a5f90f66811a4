#pragma once

#include <vector>

#include "bsq/field.hpp"
#include "bsq/lp_family.hpp"

namespace bsq {

// f g = T_f g + T_g f + R(f, g) with
//   T_f g  = sum_{j>=0} S_{j-2} f Delta_j g   (S_{-2} = 0, S_{-1} = Delta_{-1})
//   R(f,g) = sum_{|j-k|<=1} Delta_j f Delta_k g
// Every part is dealiased exactly like product(f, g).
struct BonySplit {
  SpectralField t_fg;
  SpectralField t_gf;
  SpectralField remainder;

  SpectralField sum() const { return t_fg + t_gf + remainder; }
};

BonySplit bony_decompose(const SpectralField& f, const SpectralField& g, const LPFamily& family);

// R_j(u, rho) = Delta_j (u.grad rho) - (S_{j-2} u).grad Delta_j rho, with S_{j-2}
// read as S_{-1} for j = -1, 0. The spatial mean of u commutes with every
// multiplier and is dropped before evaluation, so constant u gives exactly 0.
SpectralField commutator_rj(const VelocityField& u, const SpectralField& rho, int j, const LPFamily& family);
// R_j for all j = -1 .. j_max (index j + 1).
std::vector<SpectralField> commutator_all(const VelocityField& u, const SpectralField& rho, const LPFamily& family);

struct RatioReport {
  int band = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool violation = false;  // rhs == 0 while lhs is above tolerance
};

// Band sup-norms entering the right side of the commutator estimate.
struct CommutatorBandData {
  std::vector<double> rho_band;      // ||Delta_l rho||_inf
  std::vector<double> rho_partial;   // ||S_l rho||_inf
  std::vector<double> gradu_band;    // ||Delta_l grad u||_inf (pointwise Frobenius)
  std::vector<double> gradu_partial; // ||S_l grad u||_inf
  double u_low = 0.0;                // ||Delta_{-1} u||_inf

  static CommutatorBandData compute(const VelocityField& u, const SpectralField& rho, const LPFamily& family);
  // Right side with unit constants; sums truncated at j_max; at l = -1 the factor
  // ||Delta_l grad u|| is replaced by ||Delta_{-1} u|| keeping the weight 2^-l.
  double rhs(int j, int j_max) const;
};

RatioReport commutator_bound_ratio(const VelocityField& u, const SpectralField& rho, int j, const LPFamily& family);
// One report per band j = -1 .. j_max, sharing the band data.
std::vector<RatioReport> commutator_bound_sweep(const VelocityField& u, const SpectralField& rho,
                                                const LPFamily& family);

}  // namespace bsq
