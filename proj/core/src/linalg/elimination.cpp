#include "strop/linalg/elimination.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "strop/error.hpp"
#include "strop/linalg/arith.hpp"

namespace strop::linalg {
namespace {

void require_field(const CoefficientRing& ring) {
  if (!ring.is_field())
    throw IntegerRingNotSupported("rank/kernel require a field; use smith_normal_form over Z");
}

template <class Arith>
std::vector<SparseRow<Arith>> rows_of(const SparseMatrix& m, const Arith& ar) {
  std::vector<SparseRow<Arith>> rows(m.rows());
  for (const auto& e : m.entries()) {
    auto v = ar.from_scalar(e.value);
    if (!ar.is_zero(v)) rows[e.row].emplace_back(e.col, std::move(v));
  }
  return rows;
}

// Lead-reduced echelon form: every stored row has a distinct leading column
// and a leading coefficient of one.
template <class Arith>
struct Echelon {
  std::map<std::size_t, SparseRow<Arith>> by_pivot;

  void add(const Arith& ar, SparseRow<Arith> row) {
    while (!row.empty()) {
      auto it = by_pivot.find(row.front().first);
      if (it == by_pivot.end()) {
        auto inv = ar.inv(row.front().second);
        for (auto& [c, v] : row) v = ar.mul(v, inv);
        by_pivot.emplace(row.front().first, std::move(row));
        return;
      }
      auto factor = row.front().second;
      row_axpy(ar, row, factor, it->second);
    }
  }

  // Clears every entry above each pivot, yielding the reduced form.
  void back_substitute(const Arith& ar) {
    for (auto it = by_pivot.rbegin(); it != by_pivot.rend(); ++it) {
      const auto& prow = it->second;
      std::size_t pc = it->first;
      for (auto jt = by_pivot.begin(); jt->first < pc; ++jt) {
        auto& row = jt->second;
        auto pos = std::lower_bound(row.begin(), row.end(), pc,
                                    [](const auto& e, std::size_t c) { return e.first < c; });
        if (pos != row.end() && pos->first == pc) {
          auto factor = pos->second;
          row_axpy(ar, row, factor, prow);
        }
      }
    }
  }
};

template <class Arith>
Echelon<Arith> echelon_of(const SparseMatrix& m, const Arith& ar) {
  auto rows = rows_of(m, ar);
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
  Echelon<Arith> ech;
  for (auto i : order)
    if (!rows[i].empty()) ech.add(ar, std::move(rows[i]));
  return ech;
}

// Fraction-free rank over Q: rows stay integral and primitive.
std::size_t rational_rank(const SparseMatrix& m) {
  using IRow = std::vector<std::pair<std::size_t, Integer>>;
  std::vector<IRow> rows(m.rows());
  std::vector<Integer> dens(m.rows(), Integer(1));
  for (const auto& e : m.entries()) mpz_lcm(dens[e.row].get_mpz_t(), dens[e.row].get_mpz_t(), e.value.get_den_mpz_t());
  for (const auto& e : m.entries())
    rows[e.row].emplace_back(e.col, Integer(e.value.get_num() * (dens[e.row] / e.value.get_den())));

  auto make_primitive = [](IRow& row) {
    Integer g(0);
    for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
      for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  };

  std::map<std::size_t, IRow> pivots;
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
  for (auto idx : order) {
    IRow row = std::move(rows[idx]);
    make_primitive(row);
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      const IRow& p = it->second;
      Integer g;
      mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), row.front().second.get_mpz_t());
      Integer a = p.front().second / g;    // multiplies row
      Integer b = row.front().second / g;  // multiplies pivot
      IRow out;
      out.reserve(row.size() + p.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < p.size()) {
        if (j == p.size() || (i < row.size() && row[i].first < p[j].first)) {
          out.emplace_back(row[i].first, Integer(a * row[i].second));
          ++i;
        } else if (i == row.size() || p[j].first < row[i].first) {
          out.emplace_back(p[j].first, Integer(-b * p[j].second));
          ++j;
        } else {
          Integer v = a * row[i].second - b * p[j].second;
          if (v != 0) out.emplace_back(row[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      row = std::move(out);
      make_primitive(row);
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank(const SparseMatrix& m, const CoefficientRing& ring) {
  require_field(ring);
  if (ring.kind() == CoefficientRing::Kind::Rationals) return rational_rank(m);
  return echelon_of(m, ModularArith{ring.characteristic()}).by_pivot.size();
}

RowEchelon row_echelon(const SparseMatrix& m, const CoefficientRing& ring) {
  require_field(ring);
  return with_field_arith(ring, [&](const auto& ar) {
    auto ech = echelon_of(m, ar);
    ech.back_substitute(ar);
    RowEchelon out;
    std::vector<Entry> entries;
    std::size_t r = 0;
    for (const auto& [pc, row] : ech.by_pivot) {
      out.pivot_columns.push_back(pc);
      for (const auto& [c, v] : row) entries.push_back({r, c, ar.to_scalar(v)});
      ++r;
    }
    out.reduced = SparseMatrix::from_triplets(r, m.cols(), std::move(entries), ring);
    return out;
  });
}

std::vector<Vector> kernel_basis(const SparseMatrix& m, const CoefficientRing& ring) {
  auto ech = row_echelon(m, ring);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  // Column-wise view of the reduced rows restricted to free columns.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> free_col(m.cols());
  for (const auto& e : ech.reduced.entries())
    if (!is_pivot[e.col]) free_col[e.col].emplace_back(e.row, e.value);

  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (const auto& [r, val] : free_col[f]) v[ech.pivot_columns[r]] = ring.neg(val);
    basis.push_back(std::move(v));
  }
  return basis;
}

SparseMatrix inverse(const SparseMatrix& m, const CoefficientRing& ring) {
  require_field(ring);
  if (m.rows() != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
  std::size_t n = m.rows();
  std::vector<Entry> aug;
  for (const auto& e : m.entries()) aug.push_back(e);
  for (std::size_t i = 0; i < n; ++i) aug.push_back({i, n + i, Scalar(1)});
  auto ech = row_echelon(SparseMatrix::from_triplets(n, 2 * n, std::move(aug), ring), ring);
  if (ech.pivot_columns.size() < n || (n > 0 && ech.pivot_columns[n - 1] != n - 1))
    throw InvalidArgument("matrix is singular");
  std::vector<Entry> out;
  for (const auto& e : ech.reduced.entries())
    if (e.col >= n) out.push_back({e.row, e.col - n, e.value});
  return SparseMatrix::from_triplets(n, n, std::move(out), ring);
}

EchelonSpace::EchelonSpace(std::size_t dim, CoefficientRing ring) : dim_(dim), ring_(ring) {
  require_field(ring_);
}

void EchelonSpace::reduce(Vector& v, Vector* comb) const {
  for (const auto& row : rows_) {
    if (v[row.pivot] == 0) continue;
    Scalar f = v[row.pivot];
    for (std::size_t i = 0; i < dim_; ++i)
      if (row.values[i] != 0) v[i] = ring_.sub(v[i], ring_.mul(f, row.values[i]));
    if (comb) {
      comb->resize(std::max(comb->size(), row.combination.size()));
      for (std::size_t g = 0; g < row.combination.size(); ++g)
        if (row.combination[g] != 0)
          (*comb)[g] = ring_.sub((*comb)[g], ring_.mul(f, row.combination[g]));
    }
  }
}

bool EchelonSpace::insert(const Vector& v) {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match space dimension");
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = ring_.normalize(v[i]);
  std::size_t g = rows_.size();
  Vector comb(g + 1);
  comb[g] = 1;
  // reduce() subtracts, so comb tracks w = generator - sum(...)
  reduce(w, &comb);
  auto it = std::find_if(w.begin(), w.end(), [](const Scalar& x) { return x != 0; });
  if (it == w.end()) return false;
  std::size_t pivot = static_cast<std::size_t>(it - w.begin());
  Scalar inv = ring_.inv(*it);
  for (auto& x : w) x = ring_.mul(x, inv);
  for (auto& x : comb) x = ring_.mul(x, inv);
  // Keep earlier rows reduced against the new pivot so reduce() is single-pass.
  for (auto& row : rows_) {
    if (row.values[pivot] == 0) continue;
    Scalar f = row.values[pivot];
    for (std::size_t i = 0; i < dim_; ++i)
      if (w[i] != 0) row.values[i] = ring_.sub(row.values[i], ring_.mul(f, w[i]));
    row.combination.resize(comb.size());
    for (std::size_t k = 0; k < comb.size(); ++k)
      if (comb[k] != 0) row.combination[k] = ring_.sub(row.combination[k], ring_.mul(f, comb[k]));
  }
  rows_.push_back({std::move(w), pivot, std::move(comb)});
  return true;
}

bool EchelonSpace::contains(const Vector& v) const {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match space dimension");
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = ring_.normalize(v[i]);
  reduce(w, nullptr);
  return std::all_of(w.begin(), w.end(), [](const Scalar& x) { return x == 0; });
}

std::optional<Vector> EchelonSpace::coordinates(const Vector& v) const {
  if (v.size() != dim_) throw InvalidArgument("vector length does not match space dimension");
  Vector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = ring_.normalize(v[i]);
  // v = sum_rows f_r * row_r, and row_r = sum_g comb_r[g] * gen_g.
  Vector coords(rows_.size());
  for (const auto& row : rows_) {
    if (w[row.pivot] == 0) continue;
    Scalar f = w[row.pivot];
    for (std::size_t i = 0; i < dim_; ++i)
      if (row.values[i] != 0) w[i] = ring_.sub(w[i], ring_.mul(f, row.values[i]));
    for (std::size_t g = 0; g < row.combination.size(); ++g)
      if (row.combination[g] != 0) coords[g] = ring_.add(coords[g], ring_.mul(f, row.combination[g]));
  }
  if (!std::all_of(w.begin(), w.end(), [](const Scalar& x) { return x == 0; })) return std::nullopt;
  return coords;
}

}  // namespace strop::linalg
