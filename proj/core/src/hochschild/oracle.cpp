#include "strop/hochschild/oracle.hpp"

#include "strop/error.hpp"
#include "strop/hochschild/cohomology.hpp"
#include "strop/hochschild/coface.hpp"
#include "strop/linalg/elimination.hpp"

namespace strop::hochschild {

namespace {

// Incremental row reduction that remembers how each stored row is built
// from the accepted generators.
class DenseSolver {
 public:
  DenseSolver(std::size_t dim, CoefficientRing ring) : dim_(dim), ring_(std::move(ring)) {}

  std::size_t accepted() const { return count_; }

  bool insert(const Vector& v) {
    auto [rest, comb] = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && rest[p] == 0) ++p;
    if (p == dim_) return false;
    comb.resize(count_ + 1);
    comb[count_] = 1;
    auto inv = ring_.inv(rest[p]);
    for (auto& x : rest) x = ring_.mul(x, inv);
    for (auto& x : comb) x = ring_.mul(x, inv);
    rows_.push_back({std::move(rest), p, std::move(comb)});
    ++count_;
    return true;
  }

  std::optional<Vector> solve(const Vector& v) const {
    auto [rest, comb] = reduce(v);
    for (const auto& x : rest)
      if (x != 0) return std::nullopt;
    comb.resize(count_);
    for (auto& x : comb) x = ring_.neg(x);
    return comb;
  }

 private:
  struct Row {
    Vector values;
    std::size_t pivot;
    Vector comb;
  };

  // v - Σ c_r row_r with every pivot cleared; returns the remainder and -Σ c_r comb_r
  std::pair<Vector, Vector> reduce(const Vector& v) const {
    Vector rest(dim_);
    for (std::size_t i = 0; i < dim_; ++i) rest[i] = ring_.normalize(v[i]);
    Vector comb(count_ + 1);
    for (const auto& r : rows_) {
      Scalar c = rest[r.pivot];
      if (c == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        if (r.values[i] != 0) rest[i] = ring_.sub(rest[i], ring_.mul(c, r.values[i]));
      for (std::size_t i = 0; i < r.comb.size(); ++i)
        if (r.comb[i] != 0) comb[i] = ring_.sub(comb[i], ring_.mul(c, r.comb[i]));
    }
    return {rest, comb};
  }

  std::size_t dim_;
  CoefficientRing ring_;
  std::vector<Row> rows_;
  std::size_t count_ = 0;
};

Vector unit_vector(std::size_t i, std::size_t m) {
  Vector v(m);
  v[i] = 1;
  return v;
}

// Null space by Gauss-Jordan elimination on a dense matrix.
std::vector<Vector> null_space(std::vector<Vector> m, std::size_t cols, const CoefficientRing& ring) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    auto inv = ring.inv(m[rank][c]);
    for (auto& x : m[rank]) x = ring.mul(x, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      auto f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ring.sub(m[r][k], ring.mul(f, m[rank][k]));
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<Vector> out;
  std::size_t next = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (next < pivots.size() && pivots[next] == free) {
      ++next;
      continue;
    }
    Vector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = ring.neg(m[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

DenseHochschildOracle::DenseHochschildOracle(const FiniteGradedAlgebra& a, std::size_t max_length,
                                             std::size_t max_cells)
    : algebra_(a), length_(max_length) {
  if (!a.has_zero_differential()) throw InvalidArgument("the dense oracle needs zero differential");
  const std::size_t m = a.dim();
  std::size_t total = 0;
  for (std::size_t s = 0; s <= length_ + 1; ++s) {
    std::vector<std::size_t> tuple(s, 0);
    while (true) {
      int in = 0;
      for (auto u : tuple) in += a.degree(u);
      for (std::size_t o = 0; o < m; ++o) {
        auto& b = ensure(static_cast<int>(s), a.degree(o) - in);
        b.index[{tuple, o}] = b.cells.size();
        b.cells.push_back({tuple, o});
        if (++total > max_cells) throw OracleScaleExceeded("more than " + std::to_string(max_cells) + " cochain cells");
      }
      std::size_t k = s;
      while (k > 0 && ++tuple[k - 1] == m) tuple[--k] = 0;
      if (k == 0) break;
    }
  }

  const auto& ring = a.ring();
  for (auto& [key, b] : blocks_) {
    auto [s, t] = key;
    if (static_cast<std::size_t>(s) > length_) continue;
    const auto cols = b.cells.size();
    DenseSolver span(cols, ring);
    if (const auto* below = block(s - 1, t)) {
      for (std::size_t j = 0; j < below->cells.size(); ++j) {
        Vector e(below->cells.size());
        e[j] = 1;
        if (span.insert(differential(s - 1, t, e))) b.solve_basis.push_back(differential(s - 1, t, e));
      }
    }
    b.image_rank = b.solve_basis.size();
    std::vector<Vector> rows;
    if (const auto* above = block(s + 1, t)) {
      rows.assign(above->cells.size(), Vector(cols));
      for (std::size_t j = 0; j < cols; ++j) {
        Vector e(cols);
        e[j] = 1;
        auto col = differential(s, t, e);
        for (std::size_t i = 0; i < col.size(); ++i) rows[i][j] = col[i];
      }
    }
    for (auto& z : null_space(std::move(rows), cols, ring))
      if (span.insert(z)) {
        b.reps.push_back(z);
        b.solve_basis.push_back(std::move(z));
      }
  }
}

DenseHochschildOracle::Block& DenseHochschildOracle::ensure(int s, int t) { return blocks_[{s, t}]; }

const DenseHochschildOracle::Block* DenseHochschildOracle::block(int s, int t) const {
  auto it = blocks_.find({s, t});
  return it == blocks_.end() ? nullptr : &it->second;
}

const std::vector<Cell>& DenseHochschildOracle::cells(int s, int t) const {
  static const std::vector<Cell> none;
  const auto* b = block(s, t);
  return b ? b->cells : none;
}

std::size_t DenseHochschildOracle::dimension(int s, int t) const {
  if (s < 0 || static_cast<std::size_t>(s) > length_) throw InvalidArgument("tensor length outside the oracle");
  const auto* b = block(s, t);
  return b ? b->reps.size() : 0;
}

std::size_t DenseHochschildOracle::total_dimension(int n) const {
  std::size_t out = 0;
  for (auto [s, t] : bidegrees(n)) out += dimension(s, t);
  return out;
}

std::vector<std::pair<int, int>> DenseHochschildOracle::bidegrees(int n) const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, b] : blocks_)
    if (key.first + key.second == n && static_cast<std::size_t>(key.first) <= length_)
      out.push_back(key);
  return out;
}

const std::vector<Vector>& DenseHochschildOracle::representatives(int s, int t) const {
  static const std::vector<Vector> none;
  const auto* b = block(s, t);
  return b ? b->reps : none;
}

Vector DenseHochschildOracle::differential(int s, int t, const Vector& f) const {
  const auto& a = algebra_;
  const auto& ring = a.ring();
  const std::size_t m = a.dim();
  const auto* src = block(s, t);
  const auto* dst = block(s + 1, t);
  if (!dst) return {};
  Vector out(dst->cells.size());
  if (!src) return out;
  // F(tuple) as a vector in A
  auto value = [&](const std::vector<std::size_t>& tuple) {
    Vector v(m);
    for (std::size_t o = 0; o < m; ++o) {
      auto it = src->index.find({tuple, o});
      if (it != src->index.end()) v[o] = f[it->second];
    }
    return v;
  };
  auto sgn = [](long k) { return (k & 1) ? Scalar(-1) : Scalar(1); };
  std::map<std::vector<std::size_t>, bool> done;
  for (const auto& cell : dst->cells) {
    const auto& b = cell.inputs;
    if (done.count(b)) continue;
    done[b] = true;
    Vector total(m);
    auto accumulate = [&](const Vector& v, const Scalar& k) {
      for (std::size_t i = 0; i < m; ++i) total[i] = ring.add(total[i], ring.mul(k, v[i]));
    };
    const std::size_t len = b.size();
    {
      std::vector<std::size_t> tail(b.begin() + 1, b.end());
      accumulate(a.multiply(unit_vector(b[0], m), value(tail)), sgn(static_cast<long>(t) * a.degree(b[0])));
    }
    for (std::size_t i = 0; i + 1 < len; ++i)
      for (const auto& [c, k] : a.product(b[i], b[i + 1])) {
        std::vector<std::size_t> merged(b.begin(), b.begin() + static_cast<long>(i));
        merged.push_back(c);
        merged.insert(merged.end(), b.begin() + static_cast<long>(i) + 2, b.end());
        accumulate(value(merged), ring.mul(k, sgn(static_cast<long>(i) + 1)));
      }
    {
      std::vector<std::size_t> head(b.begin(), b.end() - 1);
      accumulate(a.multiply(value(head), unit_vector(b.back(), m)), sgn(static_cast<long>(len)));
    }
    for (std::size_t o = 0; o < m; ++o) {
      auto it = dst->index.find({b, o});
      if (it != dst->index.end()) out[it->second] = total[o];
    }
  }
  return out;
}

Vector DenseHochschildOracle::cup(int s1, int t1, const Vector& f, int s2, int t2, const Vector& g) const {
  const auto& a = algebra_;
  const auto& ring = a.ring();
  const std::size_t m = a.dim();
  const auto* bf = block(s1, t1);
  const auto* bg = block(s2, t2);
  const auto* dst = block(s1 + s2, t1 + t2);
  if (!dst) return {};
  Vector out(dst->cells.size());
  if (!bf || !bg) return out;
  auto value = [&](const Block& blk, const Vector& h, const std::vector<std::size_t>& tuple) {
    Vector v(m);
    for (std::size_t o = 0; o < m; ++o) {
      auto it = blk.index.find({tuple, o});
      if (it != blk.index.end()) v[o] = h[it->second];
    }
    return v;
  };
  for (std::size_t k = 0; k < dst->cells.size(); ++k) {
    const auto& cell = dst->cells[k];
    std::vector<std::size_t> left(cell.inputs.begin(), cell.inputs.begin() + s1);
    std::vector<std::size_t> right(cell.inputs.begin() + s1, cell.inputs.end());
    long deg = 0;
    for (auto u : left) deg += a.degree(u);
    auto v = a.multiply(value(*bf, f, left), value(*bg, g, right));
    Scalar c = v[cell.output];
    out[k] = (static_cast<long>(t2) * deg) & 1 ? ring.neg(c) : c;
  }
  return out;
}

std::optional<Vector> DenseHochschildOracle::solve(const Block& b, const Vector& z) const {
  DenseSolver span(b.cells.size(), algebra_.ring());
  for (const auto& v : b.solve_basis) span.insert(v);
  return span.solve(z);
}

Vector DenseHochschildOracle::classify(int s, int t, const Vector& z) const {
  const auto* b = block(s, t);
  if (!b || static_cast<std::size_t>(s) > length_) throw InvalidArgument("bidegree outside the oracle");
  auto d = differential(s, t, z);
  for (const auto& x : d)
    if (x != 0) throw InvalidArgument("cochain is not a cocycle");
  auto coords = solve(*b, z);
  if (!coords) throw Error("InternalError", "cocycle outside the oracle span");
  return Vector(coords->begin() + static_cast<long>(b->image_rank), coords->end());
}

std::optional<Vector> DenseHochschildOracle::product(int s1, int t1, const Vector& x, int s2, int t2,
                                                     const Vector& y) const {
  if (static_cast<std::size_t>(s1 + s2) > length_) return std::nullopt;
  const auto& ring = algebra_.ring();
  auto combine = [&](int s, int t, const Vector& coords) {
    Vector v(cells(s, t).size());
    const auto& reps = representatives(s, t);
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = ring.add(v[k], ring.mul(coords[i], reps[i][k]));
    return v;
  };
  auto f = combine(s1, t1, x), g = combine(s2, t2, y);
  const auto* dst = block(s1 + s2, t1 + t2);
  if (!dst) return Vector{};
  return classify(s1 + s2, t1 + t2, cup(s1, t1, f, s2, t2, g));
}

OracleComparison compare_with_oracle(const FiniteGradedAlgebra& a, int n_min, int n_max,
                                     std::size_t oracle_length, bool inject_sign_fault) {
  if (oracle_length == 0) throw InvalidArgument("oracle length must be positive");
  OracleComparison out;
  const auto& ring = a.ring();
  WindowSpec spec;
  spec.max_tensor = oracle_length;
  spec.n_min = n_min;
  spec.n_max = n_max;
  spec.inject_sign_fault = inject_sign_fault;
  auto w = HochschildWindow::build(a, spec);
  DenseHochschildOracle oracle(a, oracle_length - 1);

  for (int n = w->stored_min(); n + 2 <= w->stored_max(); ++n) {
    auto dd = linalg::multiply(w->differential_matrix(n + 1), w->differential_matrix(n), ring);
    if (!dd.is_zero()) {
      out.first_difference = std::clamp(n + 2, n_min, n_max);
      out.note = CompositeNotZero("differential does not square to zero at degree " +
                                  std::to_string(n))
                     .what();
      return out;
    }
  }
  std::optional<HochschildCohomology> h;
  try {
    h.emplace(w);
  } catch (const Error& e) {
    out.first_difference = n_min;
    out.note = e.what();
    return out;
  }

  std::map<int, std::vector<Vector>> P;  // class -> concatenated oracle coordinates
  std::map<int, std::vector<std::pair<int, int>>> blocks;
  std::map<int, bool> usable;
  for (int n = n_min; n <= n_max; ++n) {
    OracleComparison::Row row{n, h->dimension(n), oracle.total_dimension(n), false, false};
    row.compared = w->saturated(n) && w->no_high_cells(n, oracle_length - 1);
    if (row.compared) {
      row.match = row.pipeline == row.oracle;
      blocks[n] = oracle.bidegrees(n);
      if (row.match) {
        auto& rows = P[n];
        for (std::size_t i = 0; i < row.pipeline; ++i) {
          auto z = h->representative(n, i);
          Vector coords;
          for (auto [s, t] : blocks[n]) {
            const auto& cells = oracle.cells(s, t);
            Vector f(cells.size());
            for (std::size_t k = 0; k < cells.size(); ++k) {
              auto idx = w->normalized() && std::any_of(cells[k].inputs.begin(), cells[k].inputs.end(),
                                                        [&](std::size_t u) { return u == *a.unit_index(); })
                             ? std::nullopt
                             : w->find(n, cells[k]);
              if (idx) f[k] = z.coefficients[*idx] * decalage_sign(*w, cells[k]);
            }
            auto c = oracle.classify(s, t, f);
            coords.insert(coords.end(), c.begin(), c.end());
          }
          rows.push_back(std::move(coords));
        }
        if (!rows.empty()) {
          auto m = SparseMatrix::from_dense(rows, ring);
          row.match = linalg::rank(m, ring) == rows.size();
        }
      }
      if (!row.match && !out.first_difference) out.first_difference = n;
      usable[n] = row.match;
    }
    out.rows.push_back(row);
  }

  auto part = [&](int n, const Vector& full, std::size_t which) {
    std::size_t off = 0;
    for (std::size_t b = 0; b < which; ++b) {
      auto [s, t] = blocks[n][b];
      off += oracle.dimension(s, t);
    }
    auto [s, t] = blocks[n][which];
    return Vector(full.begin() + static_cast<long>(off),
                  full.begin() + static_cast<long>(off + oracle.dimension(s, t)));
  };
  for (const auto& [n1, ok1] : usable)
    for (const auto& [n2, ok2] : usable) {
      const int n = n1 + n2;
      if (!ok1 || !ok2 || !usable.count(n) || !usable[n]) continue;
      for (std::size_t i = 0; i < P[n1].size(); ++i)
        for (std::size_t j = 0; j < P[n2].size(); ++j) {
          auto c = *h->product(n1, i, n2, j);
          Vector lhs(P[n].empty() ? oracle.total_dimension(n) : P[n][0].size());
          for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t q = 0; q < lhs.size(); ++q) lhs[q] = ring.add(lhs[q], ring.mul(c[k], P[n][k][q]));
          Vector rhs(lhs.size());
          for (std::size_t b1 = 0; b1 < blocks[n1].size(); ++b1)
            for (std::size_t b2 = 0; b2 < blocks[n2].size(); ++b2) {
              auto [s1, t1] = blocks[n1][b1];
              auto [s2, t2] = blocks[n2][b2];
              auto x = part(n1, P[n1][i], b1), y = part(n2, P[n2][j], b2);
              auto prod = oracle.product(s1, t1, x, s2, t2, y);
              if (!prod) continue;  // lands beyond the oracle, where nothing survives
              auto target = std::find(blocks[n].begin(), blocks[n].end(), std::make_pair(s1 + s2, t1 + t2));
              if (target == blocks[n].end()) continue;
              std::size_t off = 0;
              for (auto it = blocks[n].begin(); it != target; ++it) off += oracle.dimension(it->first, it->second);
              const bool neg = (static_cast<long>(s2) * t1) & 1;
              for (std::size_t q = 0; q < prod->size(); ++q)
                rhs[off + q] = ring.add(rhs[off + q], neg ? ring.neg((*prod)[q]) : (*prod)[q]);
            }
          ++out.products_checked;
          if (lhs != rhs) {
            ++out.product_mismatches;
            if (!out.first_difference) out.first_difference = n;
          }
        }
    }
  return out;
}

}  // namespace strop::hochschild
