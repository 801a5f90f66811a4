#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bsq/grid.hpp"

namespace bsq {

using Complex = std::complex<double>;

// 2D complex FFTs on a Grid, normalized so that
//   f(x) = sum_k c_k exp(i k.x),   c_k = n^-2 sum_x f(x) exp(-i k.x).
// Plans are created once per grid size in a mutex-guarded registry; execution
// is reentrant.
namespace fft {

void forward(const Grid& grid, std::span<const Complex> physical, std::span<Complex> coeffs);
void inverse(const Grid& grid, std::span<const Complex> coeffs, std::span<Complex> physical);

std::vector<Complex> forward_real(const Grid& grid, std::span<const double> physical);
std::vector<double> inverse_real(const Grid& grid, std::span<const Complex> coeffs);

}  // namespace fft
}  // namespace bsq
