#pragma once

#include <optional>
#include <vector>

#include "strop/linalg/ring.hpp"
#include "strop/linalg/sparse_matrix.hpp"

namespace strop::linalg {

using IntegerMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
  // Positive invariant factors d_1 | d_2 | ... | d_r, r = rank over Q.
  std::vector<Integer> invariant_factors;
  // Unimodular transforms with row_transform * A * col_transform = diag(factors),
  // present only when requested.
  std::optional<IntegerMatrix> row_transform;
  std::optional<IntegerMatrix> col_transform;
};

// Smith normal form by gcd-pivot reduction. Entries must be integers.
SmithForm smith_normal_form(const SparseMatrix& m, bool with_transforms = false);

IntegerMatrix to_integer_matrix(const SparseMatrix& m);
IntegerMatrix integer_product(const IntegerMatrix& a, const IntegerMatrix& b);

// Kernel/image bookkeeping for one degree of a complex:
//   ... -> C_prev --d_in--> C_mid --d_out--> C_next -> ...
struct HomologyDimensions {
  std::size_t dimension = 0;     // field dimension, or free rank over Z
  std::vector<Integer> torsion;  // invariant factors > 1 (Z only)
};

// Throws CompositeNotZero when d_out * d_in != 0 and InvalidArgument when the
// middle dimensions disagree.
HomologyDimensions homology_dimensions(const SparseMatrix& d_out, const SparseMatrix& d_in,
                                       const CoefficientRing& ring);

}  // namespace strop::linalg
