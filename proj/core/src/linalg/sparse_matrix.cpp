#include "strop/linalg/sparse_matrix.hpp"

#include <algorithm>
#include <map>

#include "strop/error.hpp"

namespace strop::linalg {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Entry> entries,
                                         const CoefficientRing& ring) {
  SparseMatrix m(rows, cols);
  for (const auto& e : entries)
    if (e.row >= rows || e.col >= cols)
      throw InvalidArgument("matrix entry out of bounds");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
    } else {
      if (!m.entries_.empty() && m.entries_.back().value == 0) m.entries_.pop_back();
      m.entries_.push_back(std::move(e));
    }
    m.entries_.back().value = ring.normalize(m.entries_.back().value);
  }
  if (!m.entries_.empty() && m.entries_.back().value == 0) m.entries_.pop_back();
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows,
                                      const CoefficientRing& ring) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw InvalidArgument("ragged dense matrix");
    for (std::size_t c = 0; c < nc; ++c)
      if (rows[r][c] != 0) entries.push_back({r, c, rows[r][c]});
  }
  return from_triplets(rows.size(), nc, std::move(entries), ring);
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, Scalar(1)});
  return m;
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c),
                             [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                               return e.row != key.first ? e.row < key.first : e.col < key.second;
                             });
  if (it != entries_.end() && it->row == r && it->col == c) return it->value;
  return Scalar(0);
}

std::vector<std::vector<Scalar>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols_));
  for (const auto& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  t.entries_.reserve(entries_.size());
  for (const auto& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
  std::sort(t.entries_.begin(), t.entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return t;
}

Vector SparseMatrix::apply(const Vector& x, const CoefficientRing& ring) const {
  if (x.size() != cols_) throw InvalidArgument("vector length does not match matrix columns");
  Vector y(rows_);
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
  for (auto& v : y) v = ring.normalize(v);
  return y;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size())
    return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const CoefficientRing& ring) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product dimension mismatch");
  // Row ranges of b for the inner join.
  std::vector<std::size_t> start(b.rows() + 1, 0);
  for (const auto& e : b.entries()) ++start[e.row + 1];
  for (std::size_t i = 0; i < b.rows(); ++i) start[i + 1] += start[i];
  auto be = b.entries();

  std::vector<Entry> out;
  std::map<std::size_t, Scalar> acc;
  auto ae = a.entries();
  for (std::size_t i = 0; i < ae.size();) {
    std::size_t row = ae[i].row;
    acc.clear();
    for (; i < ae.size() && ae[i].row == row; ++i)
      for (std::size_t k = start[ae[i].col]; k < start[ae[i].col + 1]; ++k)
        acc[be[k].col] += ae[i].value * be[k].value;
    for (auto& [col, v] : acc) {
      Scalar r = ring.normalize(v);
      if (r != 0) out.push_back({row, col, std::move(r)});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(out), ring);
}

}  // namespace strop::linalg
