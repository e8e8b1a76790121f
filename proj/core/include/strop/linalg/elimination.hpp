#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "strop/linalg/ring.hpp"
#include "strop/linalg/sparse_matrix.hpp"

namespace strop::linalg {

// Exact rank over a field. Rationals use fraction-free row reduction with
// content removal; prime fields use modular elimination. Throws
// IntegerRingNotSupported over Z (use smith_normal_form).
std::size_t rank(const SparseMatrix& m, const CoefficientRing& ring);

// Basis of the right kernel {v : m v = 0}. One vector per pivot-free column,
// in increasing column order, with a 1 in that column.
std::vector<Vector> kernel_basis(const SparseMatrix& m, const CoefficientRing& ring);

// Inverse of a square matrix over a field; throws InvalidArgument if singular.
SparseMatrix inverse(const SparseMatrix& m, const CoefficientRing& ring);

// Reduced row echelon form over a field.
struct RowEchelon {
  std::vector<std::size_t> pivot_columns;  // increasing
  SparseMatrix reduced;                    // rank x cols, pivots equal to 1
};
RowEchelon row_echelon(const SparseMatrix& m, const CoefficientRing& ring);

// Incrementally grown subspace of ring^dim over a field. Generators are kept
// in insertion order so coordinates are reproducible.
class EchelonSpace {
 public:
  EchelonSpace(std::size_t dim, CoefficientRing ring);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const CoefficientRing& ring() const noexcept { return ring_; }

  // Adds v when it is independent of the current span. Returns whether it was added.
  bool insert(const Vector& v);
  bool contains(const Vector& v) const;
  // Coefficients expressing v in terms of the inserted generators, if v is in the span.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  struct Row {
    Vector values;       // leading entry is 1 at `pivot`
    std::size_t pivot;
    Vector combination;  // values = sum combination[g] * generator g
  };
  // Reduces v in place; `comb` tracks the subtracted generator combination.
  void reduce(Vector& v, Vector* comb) const;

  std::size_t dim_;
  CoefficientRing ring_;
  std::vector<Row> rows_;
};

}  // namespace strop::linalg
