#pragma once

#include <span>
#include <vector>

#include "bsq/field.hpp"

namespace bsq {

enum class Derivative { d1, d2, laplacian };

SpectralField spectral_derivative(const SpectralField& f, Derivative which);
VelocityField gradient(const SpectralField& f);
SpectralField curl(const VelocityField& u);
SpectralField divergence(const VelocityField& u);

// Stream-function Biot-Savart law on the torus: u = (d2 psi, -d1 psi) with
// -Lap psi = w, so curl(u) = w. The k = 0 mode of w is ignored unless
// `strict` is set, in which case a nonzero mean is rejected.
VelocityField biot_savart(const SpectralField& w, bool strict = false);

// Zero every mode with |k| > grid.dealias_radius().
void dealias(SpectralField& f);
bool inside_dealias_disk(const Grid& grid, int a, int b);

// Pointwise product of two fields, transformed back and dealiased.
SpectralField product(const SpectralField& f, const SpectralField& g);
// u . grad f, pseudospectral with 2/3-rule dealiasing.
SpectralField advect(const VelocityField& u, const SpectralField& f);

// Equal-weight quadrature norm on the periodic grid; p = inf is the grid max.
double lp_norm(const SpectralField& f, const LebesgueExponent& p);
double lp_norm(const Grid& grid, std::span<const double> samples, const LebesgueExponent& p);
// Norm of the pointwise Euclidean length of a vector field (x, y).
double lp_norm(const Grid& grid, std::span<const double> x, std::span<const double> y,
               const LebesgueExponent& p);
double lp_norm(const VelocityField& u, const LebesgueExponent& p);

// L2 norm squared by Parseval: (2 pi)^2 sum |c_k|^2.
double l2_norm_squared(const SpectralField& f);

}  // namespace bsq
