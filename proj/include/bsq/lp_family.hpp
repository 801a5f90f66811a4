#pragma once

#include <vector>

#include "bsq/field.hpp"

namespace bsq {

// Radial cutoff chi: 1 on [0, plateau], 0 on [1, inf), smooth in between
// (built from the exp(-1/x) mollifier). The low block is Phi^ = chi and the
// annulus profile is varphi^(r) = chi(r/2) - chi(r), so that
//   Phi^(xi) + sum_{j=0}^{J} varphi^(2^-j xi) = chi(2^-(J+1) xi)
// telescopes to 1 on |xi| <= plateau * 2^(J+1).
struct ProfileParams {
  double plateau = 0.55;  // must lie in [1/2, 3/5)
};

double lp_cutoff(double r, const ProfileParams& params);

class LPFamily {
 public:
  explicit LPFamily(Grid grid, ProfileParams params = {});

  const Grid& grid() const { return grid_; }
  const ProfileParams& params() const { return params_; }
  // Largest band index; chosen as the smallest J with S_J = 1 on the dealias disk.
  int j_max() const { return j_max_; }
  // Band-interaction distance: Delta_j Delta_k = 0 whenever |j - k| > overlap().
  static constexpr int overlap() { return 1; }

  double phi_low(double r) const;     // Phi^
  double phi_annulus(double r) const; // varphi^
  // Multiplier of Delta_j evaluated at |xi| = r; zero for j <= -2 and j > j_max.
  double band_multiplier(int j, double r) const;

  // Lattice multipliers, flat grid layout. Valid for -1 <= j <= j_max.
  const std::vector<double>& band(int j) const;
  // Multiplier of S_j = sum_{k=-1}^{j} Delta_k (all zeros for j <= -2).
  std::vector<double> partial(int j) const;

 private:
  Grid grid_;
  ProfileParams params_;
  int j_max_ = 0;
  std::vector<std::vector<double>> bands_;  // index j + 1
};

enum class Projection { delta, partial_sum };

SpectralField band_project(const SpectralField& f, const LPFamily& family, int j,
                           Projection mode = Projection::delta);
// Apply an arbitrary lattice multiplier.
SpectralField apply_multiplier(const SpectralField& f, const std::vector<double>& multiplier);

// All bands Delta_{-1} f ... Delta_{j_max} f; bands[j + 1] holds Delta_j f.
struct BandDecomposition {
  std::vector<SpectralField> bands;
  const SpectralField& operator[](int j) const { return bands.at(static_cast<std::size_t>(j + 1)); }
  int j_max() const { return static_cast<int>(bands.size()) - 2; }
  SpectralField sum() const;
};

BandDecomposition decompose(const SpectralField& f, const LPFamily& family);

}  // namespace bsq
