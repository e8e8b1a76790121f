#pragma once

#include <utility>
#include <vector>

#include "strop/linalg/ring.hpp"

namespace strop::testing {

// Plain Gaussian elimination on a dense matrix; an oracle independent of
// the sparse kernels in the library.
inline std::size_t dense_rank(std::vector<std::vector<linalg::Scalar>> m,
                              const linalg::CoefficientRing& ring) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && ring.normalize(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    auto inv = ring.inv(ring.normalize(m[rank][c]));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      auto f = ring.mul(ring.normalize(m[r][c]), inv);
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ring.sub(m[r][k], ring.mul(f, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace strop::testing
