#include "strop/linalg/smith.hpp"

#include <algorithm>
#include <utility>

#include "strop/error.hpp"
#include "strop/linalg/elimination.hpp"

namespace strop::linalg {
namespace {

IntegerMatrix identity_matrix(std::size_t n) {
  IntegerMatrix id(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

class SmithReducer {
 public:
  SmithReducer(IntegerMatrix a, bool track)
      : a_(std::move(a)), rows_(a_.size()), cols_(rows_ ? a_[0].size() : 0), track_(track) {
    if (track_) {
      u_ = identity_matrix(rows_);
      v_ = identity_matrix(cols_);
    }
  }

  SmithForm run() {
    std::size_t t = 0;
    for (; t < std::min(rows_, cols_); ++t) {
      if (!place_min_pivot(t)) break;
      while (true) {
        bool clean = clear_column(t) && clear_row(t);
        if (!clean) {
          place_min_pivot(t);
          continue;
        }
        // Enforce divisibility of the remaining block by the pivot.
        auto bad = find_nondivisible(t);
        if (!bad) break;
        add_row(t, *bad, Integer(1));
      }
      if (a_[t][t] < 0) negate_row(t);
    }
    SmithForm out;
    for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(a_[i][i]);
    if (track_) {
      out.row_transform = std::move(u_);
      out.col_transform = std::move(v_);
    }
    return out;
  }

 private:
  // Moves the smallest nonzero |entry| of the trailing block to (t, t).
  bool place_min_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows_; ++i)
      for (std::size_t j = t; j < cols_; ++j)
        if (a_[i][j] != 0 && (!best || abs(a_[i][j]) < abs(a_[best->first][best->second])))
          best = {i, j};
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Returns true when the column below the pivot is already zero.
  bool clear_column(std::size_t t) {
    bool clean = true;
    for (std::size_t i = t + 1; i < rows_; ++i) {
      if (a_[i][t] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a_[i][t].get_mpz_t(), a_[t][t].get_mpz_t());
      add_row(i, t, Integer(-q));
      if (a_[i][t] != 0) clean = false;
    }
    return clean;
  }

  bool clear_row(std::size_t t) {
    bool clean = true;
    for (std::size_t j = t + 1; j < cols_; ++j) {
      if (a_[t][j] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a_[t][j].get_mpz_t(), a_[t][t].get_mpz_t());
      add_col(j, t, Integer(-q));
      if (a_[t][j] != 0) clean = false;
    }
    return clean;
  }

  std::optional<std::size_t> find_nondivisible(std::size_t t) const {
    for (std::size_t i = t + 1; i < rows_; ++i)
      for (std::size_t j = t + 1; j < cols_; ++j)
        if (a_[i][j] % a_[t][t] != 0) return i;
    return std::nullopt;
  }

  // row dst += f * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j) a_[dst][j] += f * a_[src][j];
    if (track_)
      for (std::size_t j = 0; j < rows_; ++j) u_[dst][j] += f * u_[src][j];
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < rows_; ++i) a_[i][dst] += f * a_[i][src];
    if (track_)
      for (std::size_t i = 0; i < cols_; ++i) v_[i][dst] += f * v_[i][src];
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (track_) std::swap(u_[i], u_[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (track_)
      for (auto& row : v_) std::swap(row[i], row[j]);
  }
  void negate_row(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (track_)
      for (auto& x : u_[i]) x = -x;
  }

  IntegerMatrix a_;
  std::size_t rows_;
  std::size_t cols_;
  bool track_;
  IntegerMatrix u_;
  IntegerMatrix v_;
};

}  // namespace

IntegerMatrix to_integer_matrix(const SparseMatrix& m) {
  IntegerMatrix a(m.rows(), std::vector<Integer>(m.cols(), Integer(0)));
  for (const auto& e : m.entries()) {
    if (e.value.get_den() != 1) throw InvalidArgument("Smith normal form needs integer entries");
    a[e.row][e.col] = e.value.get_num();
  }
  return a;
}

IntegerMatrix integer_product(const IntegerMatrix& a, const IntegerMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  IntegerMatrix c(n, std::vector<Integer>(m, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw InvalidArgument("integer matrix product dimension mismatch");
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  }
  return c;
}

SmithForm smith_normal_form(const SparseMatrix& m, bool with_transforms) {
  auto a = to_integer_matrix(m);
  if (m.rows() == 0 || m.cols() == 0) {
    SmithForm out;
    if (with_transforms) {
      out.row_transform = identity_matrix(m.rows());
      out.col_transform = identity_matrix(m.cols());
    }
    return out;
  }
  return SmithReducer(std::move(a), with_transforms).run();
}

HomologyDimensions homology_dimensions(const SparseMatrix& d_out, const SparseMatrix& d_in,
                                       const CoefficientRing& ring) {
  if (d_out.cols() != d_in.rows())
    throw InvalidArgument("d_out and d_in do not share a middle dimension");
  auto check_ring = ring.is_field() ? ring : CoefficientRing::rationals();
  if (!multiply(d_out, d_in, check_ring).is_zero())
    throw CompositeNotZero("d_out * d_in is not zero; the complex is wrongly assembled");

  std::size_t mid = d_in.rows();
  HomologyDimensions out;
  if (ring.is_field()) {
    out.dimension = mid - rank(d_out, ring) - rank(d_in, ring);
    return out;
  }
  auto s_out = smith_normal_form(d_out);
  auto s_in = smith_normal_form(d_in);
  out.dimension = mid - s_out.invariant_factors.size() - s_in.invariant_factors.size();
  for (const auto& f : s_in.invariant_factors)
    if (f > 1) out.torsion.push_back(f);
  return out;
}

}  // namespace strop::linalg
