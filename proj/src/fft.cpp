#include "bsq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "bsq/error.hpp"

namespace bsq::fft {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanRegistry {
 public:
  static PlanRegistry& instance() {
    static PlanRegistry registry;
    return registry;
  }

  Plans get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    // FFTW_UNALIGNED lets the plans run on std::vector storage of any alignment.
    const auto count = static_cast<std::size_t>(n) * n;
    auto* in = fftw_alloc_complex(count);
    auto* out = fftw_alloc_complex(count);
    Plans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.forward = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanRegistry() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

void check_sizes(const Grid& grid, std::size_t a, std::size_t b) {
  if (a != grid.size() || b != grid.size()) throw InputError("fft: buffer size does not match grid");
}

}  // namespace

void forward(const Grid& grid, std::span<const Complex> physical, std::span<Complex> coeffs) {
  check_sizes(grid, physical.size(), coeffs.size());
  const Plans p = PlanRegistry::instance().get(grid.n());
  // fftw_execute_dft does not write its input for out-of-place complex plans.
  fftw_execute_dft(p.forward, as_fftw(const_cast<Complex*>(physical.data())), as_fftw(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : coeffs) c *= scale;
}

void inverse(const Grid& grid, std::span<const Complex> coeffs, std::span<Complex> physical) {
  check_sizes(grid, coeffs.size(), physical.size());
  const Plans p = PlanRegistry::instance().get(grid.n());
  fftw_execute_dft(p.backward, as_fftw(const_cast<Complex*>(coeffs.data())), as_fftw(physical.data()));
}

std::vector<Complex> forward_real(const Grid& grid, std::span<const double> physical) {
  std::vector<Complex> in(physical.begin(), physical.end());
  std::vector<Complex> out(grid.size());
  forward(grid, in, out);
  return out;
}

std::vector<double> inverse_real(const Grid& grid, std::span<const Complex> coeffs) {
  std::vector<Complex> out(grid.size());
  inverse(grid, coeffs, out);
  std::vector<double> real(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) real[i] = out[i].real();
  return real;
}

}  // namespace bsq::fft
