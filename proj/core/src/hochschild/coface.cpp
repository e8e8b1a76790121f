#include "strop/hochschild/coface.hpp"

#include "strop/error.hpp"

namespace strop::hochschild {

namespace {

int parity_sign(long k) { return (k & 1) ? -1 : 1; }

struct CellDegrees {
  long s = 0;
  long t = 0;
};

CellDegrees degrees_of(const FiniteGradedAlgebra& a, const Cell& c) {
  long sum = 0;
  for (auto u : c.inputs) sum += a.degree(u);
  return {static_cast<long>(c.inputs.size()), a.degree(c.output) - sum};
}

}  // namespace

int decalage_sign(const HochschildWindow& w, const Cell& c) {
  const auto& a = w.algebra();
  auto [s, t] = degrees_of(a, c);
  long e = s * (s - 1) / 2 + s * t;
  for (long i = 0; i < s; ++i) e += a.degree(c.inputs[static_cast<std::size_t>(i)]) * (s - 1 - i);
  return parity_sign(e);
}

CofaceMatrices coface_matrices(const HochschildWindow& w, int n) {
  if (!w.stores(n) || !w.stores(n + 1))
    throw DegreeOutOfWindow("coface maps from degree " + std::to_string(n) + " leave the window");
  const auto& a = w.algebra();
  const auto& ring = a.ring();
  const std::size_t S = w.max_tensor();
  const std::size_t rows = w.dim(n + 1), cols = w.dim(n);
  std::vector<std::vector<linalg::Entry>> delta(S + 1);
  std::vector<linalg::Entry> internal, total;

  for (std::size_t j = 0; j < cols; ++j) {
    const Cell c = w.cell(n, j);
    const auto [s, t] = degrees_of(a, c);
    const int ec = decalage_sign(w, c);
    auto row = [&](const Cell& r) {
      auto i = w.find(n + 1, r);
      if (!i) throw Error("InternalError", "coface image outside the window");
      return *i;
    };
    auto put = [&](std::vector<linalg::Entry>& into, const Cell& r, const Scalar& v, int sign,
                   int total_sign) {
      auto i = row(r);
      into.push_back({i, j, v * sign});
      total.push_back({i, j, v * (sign * total_sign * decalage_sign(w, r) * ec)});
    };

    // internal part
    const int int_sign = parity_sign(s);
    for (const auto& [o, v] : a.differential(c.output)) {
      Cell r = c;
      r.output = o;
      put(internal, r, v, 1, int_sign);
    }
    long prefix = 0;
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
      for (auto p : w.alphabet())
        for (const auto& [x, v] : a.differential(p))
          if (x == c.inputs[i]) {
            Cell r = c;
            r.inputs[i] = p;
            put(internal, r, v, -parity_sign(t + prefix), int_sign);
          }
      prefix += a.degree(c.inputs[i]);
    }
    if (static_cast<std::size_t>(s) + 1 > S) continue;

    const auto last = static_cast<std::size_t>(s) + 1;
    for (auto p : w.alphabet()) {
      for (const auto& [x, v] : a.product(p, c.output)) {
        Cell r;
        r.inputs.push_back(p);
        r.inputs.insert(r.inputs.end(), c.inputs.begin(), c.inputs.end());
        r.output = x;
        put(delta[0], r, v, parity_sign(a.degree(p) * t), 1);
      }
      for (const auto& [x, v] : a.product(c.output, p)) {
        Cell r = c;
        r.inputs.push_back(p);
        r.output = x;
        put(delta[last], r, v, 1, parity_sign(static_cast<long>(last)));
      }
    }
    for (std::size_t i = 0; i < c.inputs.size(); ++i)
      for (auto x : w.alphabet())
        for (auto y : w.alphabet())
          for (const auto& [z, v] : a.product(x, y)) {
            if (z != c.inputs[i]) continue;
            Cell r = c;
            r.inputs[i] = y;
            r.inputs.insert(r.inputs.begin() + static_cast<long>(i), x);
            put(delta[i + 1], r, v, 1, parity_sign(static_cast<long>(i) + 1));
          }
  }

  CofaceMatrices out;
  out.degree = n;
  for (auto& e : delta) out.cofaces.push_back(SparseMatrix::from_triplets(rows, cols, std::move(e), ring));
  out.internal = SparseMatrix::from_triplets(rows, cols, std::move(internal), ring);
  out.assembled = SparseMatrix::from_triplets(rows, cols, std::move(total), ring);
  return out;
}

}  // namespace strop::hochschild
