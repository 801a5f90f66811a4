#include "bsq/initial_data.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "bsq/error.hpp"
#include "bsq/snapshot.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq {

SpectralField random_field(const Grid& grid, const RandomSpectrum& spec) {
  if (spec.kmax > grid.dealias_radius()) {
    throw InputError("random_field: kmax exceeds the dealias radius of the grid");
  }
  SpectralField f(grid);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int kmax = static_cast<int>(std::floor(spec.kmax));
  // Visit each +/- pair once: the upper half plane k2 > 0, plus k2 == 0, k1 > 0.
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = 0; k2 <= kmax; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;
      const double r = std::hypot(k1, k2);
      const double theta = phase(rng);  // drawn for every lattice pair so the stream is stable
      if (r < spec.kmin || r > spec.kmax) continue;
      const double mag = 0.5 * spec.amplitude * std::pow(r, -spec.beta);
      const Complex c = spec.coherent ? Complex(mag, 0.0) : std::polar(mag, theta);
      f.at(k1, k2) = c;
      f.at(-k1, -k2) = std::conj(c);
    }
  }
  return f;
}

bool is_known_initial_kind(const std::string& kind) {
  static const std::array<const char*, 7> kinds = {"zero",        "sine_x1", "cosine_x1", "taylor_green",
                                                   "single_mode", "random",  "snapshot"};
  for (const char* k : kinds) {
    if (kind == k) return true;
  }
  return false;
}

SpectralField make_initial_field(const Grid& grid, const InitialDataSpec& spec) {
  const double a = spec.amplitude;
  if (spec.kind == "zero") return SpectralField(grid);
  if (spec.kind == "sine_x1") return SpectralField::single_mode(grid, 1, 0, Complex(0.0, -0.5 * a));
  if (spec.kind == "cosine_x1") return SpectralField::single_mode(grid, 1, 0, Complex(0.5 * a, 0.0));
  if (spec.kind == "taylor_green") {
    // -2A cos x1 cos x2 = -A/2 (e^{i(x1+x2)} + e^{i(x1-x2)} + c.c.)
    return SpectralField::single_mode(grid, 1, 1, Complex(-0.5 * a, 0.0)) +
           SpectralField::single_mode(grid, 1, -1, Complex(-0.5 * a, 0.0));
  }
  if (spec.kind == "single_mode") return SpectralField::single_mode(grid, spec.k1, spec.k2, Complex(0.5 * a, 0.0));
  if (spec.kind == "random") return random_field(grid, spec.random);
  if (spec.kind == "snapshot") {
    auto snap = read_snapshot(spec.path);
    if (!(snap.field.grid() == grid)) {
      throw InputError("snapshot " + spec.path + " has n=" + std::to_string(snap.field.grid().n()) +
                       ", expected " + std::to_string(grid.n()));
    }
    return snap.field;
  }
  throw InputError("unknown initial data kind '" + spec.kind + "'");
}

}  // namespace bsq
