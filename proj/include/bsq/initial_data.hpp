#pragma once

#include <cstdint>
#include <string>

#include "bsq/field.hpp"

namespace bsq {

// Seeded random field with coefficient magnitudes amplitude * |k|^-beta on
// kmin <= |k| <= kmax. Phases are uniform random unless `coherent`, in which
// case every mode is a cosine peaking at the origin. Always mean-free and
// Hermitian.
struct RandomSpectrum {
  double beta = 3.0;
  double kmin = 1.0;
  double kmax = 8.0;
  double amplitude = 1.0;
  bool coherent = false;
  std::uint64_t seed = 0;
};

SpectralField random_field(const Grid& grid, const RandomSpectrum& spec);

// Catalog entries used by configs and tests.
//   zero, sine_x1 (sin x1), cosine_x1 (cos x1), taylor_green (-2A cos x1 cos x2),
//   single_mode (A cos(k1 x1 + k2 x2)), random (RandomSpectrum), snapshot (path)
struct InitialDataSpec {
  std::string kind = "zero";
  double amplitude = 1.0;
  int k1 = 1;
  int k2 = 0;
  RandomSpectrum random;
  std::string path;
};

SpectralField make_initial_field(const Grid& grid, const InitialDataSpec& spec);
bool is_known_initial_kind(const std::string& kind);

}  // namespace bsq
