#include "bsq/grid.hpp"

#include <string>

#include "bsq/error.hpp"

namespace bsq {

Grid::Grid(int n) : n_(n) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw InputError("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
}

}  // namespace bsq
