#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strop/hochschild/window.hpp"

namespace strop::hochschild {

// Brute-force Hochschild cohomology of a small algebra with zero
// differential: every map A^{⊗s} -> A of internal degree t is a dense
// coordinate vector over all basis tuples (the full, unnormalized complex),
// with the classical differential
//   δf(a_1..a_{s+1}) = (-1)^{t|a_1|} a_1 f(a_2..) + Σ_i (-1)^i f(.., a_i a_{i+1}, ..)
//                      + (-1)^{s+1} f(a_1..a_s) a_{s+1}
// and cup product (f ∪ g)(a, b) = (-1)^{t_g Σ|a_i|} f(a) g(b). Shares no
// code with the window or the sparse elimination kernels.
class DenseHochschildOracle {
 public:
  // Computes H^{s,t} for s ≤ max_length. Throws InvalidArgument when the
  // differential is nonzero and OracleScaleExceeded past max_cells cells.
  DenseHochschildOracle(const FiniteGradedAlgebra& a, std::size_t max_length,
                        std::size_t max_cells = std::size_t(1) << 18);

  const FiniteGradedAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t max_length() const noexcept { return length_; }

  // Basis tuples of C^{s,t}: inputs then output.
  const std::vector<Cell>& cells(int s, int t) const;
  std::size_t dimension(int s, int t) const;
  std::size_t total_dimension(int n) const;
  // Bidegrees (s, t) with s ≤ max_length, s + t = n and nonzero cochains.
  std::vector<std::pair<int, int>> bidegrees(int n) const;

  Vector differential(int s, int t, const Vector& f) const;
  Vector cup(int s1, int t1, const Vector& f, int s2, int t2, const Vector& g) const;
  // Class coordinates of a cocycle; throws InvalidArgument otherwise.
  Vector classify(int s, int t, const Vector& z) const;
  const std::vector<Vector>& representatives(int s, int t) const;
  // Product of classes given in coordinates; nullopt when s1 + s2 > max_length.
  std::optional<Vector> product(int s1, int t1, const Vector& x, int s2, int t2,
                                const Vector& y) const;

 private:
  struct Block {
    std::vector<Cell> cells;
    std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::size_t> index;
    std::vector<Vector> reps;
    std::vector<Vector> solve_basis;  // image basis followed by reps
    std::size_t image_rank = 0;
  };
  const Block* block(int s, int t) const;
  Block& ensure(int s, int t);
  std::optional<Vector> solve(const Block& b, const Vector& z) const;

  FiniteGradedAlgebra algebra_;
  std::size_t length_;
  std::map<std::pair<int, int>, Block> blocks_;
};

// Comparison of the window pipeline against the dense oracle. The pipeline
// runs normalized with S = oracle_length; a degree n is compared when it is
// saturated and no normalized cell of length ≥ oracle_length sits in it.
// Classes are matched through the décalage embedding; products must satisfy
// P(x y) = Σ (-1)^{s_y t_x} P(x)_{s_x,t_x} ∪ P(y)_{s_y,t_y} blockwise.
struct OracleComparison {
  struct Row {
    int degree = 0;
    std::size_t pipeline = 0;
    std::size_t oracle = 0;
    bool compared = false;
    bool match = false;
  };
  std::vector<Row> rows;
  std::size_t products_checked = 0;
  std::size_t product_mismatches = 0;
  std::optional<int> first_difference;
  std::string note;
  bool passed() const {
    return !first_difference && product_mismatches == 0 &&
           std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.compared; });
  }
};

OracleComparison compare_with_oracle(const FiniteGradedAlgebra& a, int n_min, int n_max,
                                     std::size_t oracle_length, bool inject_sign_fault = false);

}  // namespace strop::hochschild
