#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "strop/linalg/ring.hpp"

namespace strop::linalg {

using Vector = std::vector<Scalar>;

struct Entry {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

// Coordinate-format matrix kept in row-major order. Construction sums
// duplicate coordinates and drops zeros, so the stored entries are always
// unique, nonzero and in bounds.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  // Entries are reduced into `ring` before summation.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Entry> entries,
                                    const CoefficientRing& ring);
  static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows,
                                 const CoefficientRing& ring);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }

  Scalar at(std::size_t r, std::size_t c) const;
  std::vector<std::vector<Scalar>> to_dense() const;
  SparseMatrix transpose() const;

  Vector apply(const Vector& x, const CoefficientRing& ring) const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const CoefficientRing& ring);

}  // namespace strop::linalg
