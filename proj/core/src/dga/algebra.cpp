#include "strop/dga/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "strop/error.hpp"
#include "strop/linalg/elimination.hpp"

namespace strop::dga {
namespace {

const Combination kEmpty;

Scalar sign(int exponent) { return (exponent & 1) ? Scalar(-1) : Scalar(1); }

class Accumulator {
 public:
  explicit Accumulator(const CoefficientRing& ring) : ring_(ring) {}
  void add(std::size_t i, const Scalar& c) {
    auto [it, inserted] = terms_.try_emplace(i, c);
    if (!inserted) it->second += c;
  }
  void add(const Combination& c, const Scalar& f) {
    for (const auto& [i, v] : c) add(i, f * v);
  }
  Combination take() {
    Combination out;
    for (auto& [i, v] : terms_) {
      auto n = ring_.normalize(v);
      if (n != 0) out.emplace_back(i, std::move(n));
    }
    terms_.clear();
    return out;
  }

 private:
  const CoefficientRing& ring_;
  std::map<std::size_t, Scalar> terms_;
};

std::string describe(const FiniteGradedAlgebra& a, std::size_t i) {
  return "'" + a.name(i) + "'";
}

}  // namespace

Vector to_dense(const Combination& c, std::size_t dim) {
  Vector v(dim);
  for (const auto& [i, x] : c) v[i] = x;
  return v;
}

Combination to_sparse(const Vector& v) {
  Combination c;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) c.emplace_back(i, v[i]);
  return c;
}

FiniteGradedAlgebra::FiniteGradedAlgebra(CoefficientRing ring, std::vector<BasisElement> basis,
                                         Vector unit, std::vector<ProductEntry> products,
                                         std::vector<Combination> differential,
                                         Validation validation)
    : ring_(ring), basis_(std::move(basis)), unit_(std::move(unit)) {
  if (!ring_.is_field())
    throw IntegerRingNotSupported("graded algebras are defined over a field");
  const std::size_t n = basis_.size();
  if (n == 0) throw InvalidAlgebra("algebra has an empty basis");
  std::set<std::string> names;
  for (const auto& b : basis_) {
    if (b.name.empty()) throw InvalidAlgebra("basis element with an empty name");
    if (b.degree < 0) throw InvalidAlgebra("basis element '" + b.name + "' has negative degree");
    if (!names.insert(b.name).second) throw InvalidAlgebra("duplicate basis name '" + b.name + "'");
  }
  index();

  auto check_combination = [&](Combination& c, int expected_degree, const std::string& what) {
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Accumulator acc(ring_);
    for (const auto& [i, v] : c) {
      if (i >= n) throw InvalidAlgebra(what + " refers to a basis index out of range");
      acc.add(i, v);
    }
    c = acc.take();
    for (const auto& [i, v] : c)
      if (basis_[i].degree != expected_degree)
        throw InvalidAlgebra(what + " is not homogeneous of degree " +
                             std::to_string(expected_degree));
  };

  if (unit_.size() != n) throw InvalidAlgebra("unit vector has the wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    unit_[i] = ring_.normalize(unit_[i]);
    if (unit_[i] != 0 && basis_[i].degree != 0)
      throw InvalidAlgebra("unit has a component outside degree 0");
  }
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (unit_[i] != 0) {
      ++support;
      if (unit_[i] == 1) unit_index_ = i;
    }
  if (support == 0) throw InvalidAlgebra("unit is zero");
  if (support != 1) unit_index_.reset();

  left_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& p : products) {
    if (p.left >= n || p.right >= n) throw InvalidAlgebra("product refers to an unknown basis index");
    if (!seen.insert({p.left, p.right}).second)
      throw InvalidAlgebra("product " + describe(*this, p.left) + "*" + describe(*this, p.right) +
                           " given twice");
    check_combination(p.value, basis_[p.left].degree + basis_[p.right].degree,
                      "product " + describe(*this, p.left) + "*" + describe(*this, p.right));
    if (!p.value.empty()) left_[p.left].emplace_back(p.right, std::move(p.value));
  }
  for (auto& row : left_)
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  if (differential.empty()) differential.assign(n, {});
  if (differential.size() != n) throw InvalidAlgebra("differential has the wrong length");
  d_ = std::move(differential);
  for (std::size_t i = 0; i < n; ++i) {
    check_combination(d_[i], basis_[i].degree + 1, "differential of " + describe(*this, i));
    if (!d_[i].empty()) zero_d_ = false;
  }
  validate(validation);
}

void FiniteGradedAlgebra::index() {
  max_degree_ = 0;
  for (const auto& b : basis_) max_degree_ = std::max(max_degree_, b.degree);
  by_degree_.assign(static_cast<std::size_t>(max_degree_) + 1, {});
  for (std::size_t i = 0; i < basis_.size(); ++i)
    by_degree_[static_cast<std::size_t>(basis_[i].degree)].push_back(i);
}

std::optional<std::size_t> FiniteGradedAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

const std::vector<std::size_t>& FiniteGradedAlgebra::in_degree(int k) const {
  static const std::vector<std::size_t> none;
  if (k < 0 || k > max_degree_) return none;
  return by_degree_[static_cast<std::size_t>(k)];
}

const Combination& FiniteGradedAlgebra::product(std::size_t i, std::size_t j) const {
  const auto& row = left_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  if (it == row.end() || it->first != j) return kEmpty;
  return it->second;
}

Vector FiniteGradedAlgebra::multiply(const Vector& x, const Vector& y) const {
  Accumulator acc(ring_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (const auto& [j, c] : left_[i])
      if (y[j] != 0) acc.add(c, x[i] * y[j]);
  }
  return to_dense(acc.take(), dim());
}

Vector FiniteGradedAlgebra::apply_differential(const Vector& x) const {
  Accumulator acc(ring_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) acc.add(d_[i], x[i]);
  return to_dense(acc.take(), dim());
}

SparseMatrix FiniteGradedAlgebra::differential_matrix(int k) const {
  const auto& src = in_degree(k);
  const auto& dst = in_degree(k + 1);
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t r = 0; r < dst.size(); ++r) local[dst[r]] = r;
  std::vector<linalg::Entry> e;
  for (std::size_t c = 0; c < src.size(); ++c)
    for (const auto& [i, v] : d_[src[c]]) e.push_back({local.at(i), c, v});
  return SparseMatrix::from_triplets(dst.size(), src.size(), std::move(e), ring_);
}

void FiniteGradedAlgebra::validate(Validation validation) const {
  const std::size_t n = dim();
  auto basis_times = [&](std::size_t i, const Combination& c) {
    Accumulator acc(ring_);
    for (const auto& [j, v] : c) acc.add(product(i, j), v);
    return acc.take();
  };
  auto times_basis = [&](const Combination& c, std::size_t k) {
    Accumulator acc(ring_);
    for (const auto& [j, v] : c) acc.add(product(j, k), v);
    return acc.take();
  };
  Combination unit_c = to_sparse(unit_);

  for (std::size_t i = 0; i < n; ++i) {
    Combination e{{i, Scalar(1)}};
    if (times_basis(unit_c, i) != e || basis_times(i, unit_c) != e)
      throw InvalidAlgebra("unit is not a two-sided identity on " + describe(*this, i));
  }

  std::mt19937_64 rng(0x5eed);
  const std::size_t sample = 64;
  auto pick = [&](std::vector<std::size_t>& out) {
    out.clear();
    if (validation == Validation::Exhaustive || n <= sample) {
      for (std::size_t k = 0; k < n; ++k) out.push_back(k);
    } else {
      for (std::size_t k = 0; k < sample; ++k) out.push_back(rng() % n);
    }
  };

  // (ij)k = i(jk). A side can only be nonzero when ij or jk is, so it
  // suffices to run over nonzero pairs on either side.
  std::vector<std::size_t> third;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, ij] : left_[i]) {
      pick(third);
      for (auto k : third) {
        if (times_basis(ij, k) != basis_times(i, product(j, k)))
          throw InvalidAlgebra("associativity fails on (" + name(i) + ", " + name(j) + ", " +
                               name(k) + ")");
      }
    }
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [k, jk] : left_[j]) {
      pick(third);
      for (auto i : third)
        if (basis_times(i, jk) != times_basis(product(i, j), k))
          throw InvalidAlgebra("associativity fails on (" + name(i) + ", " + name(j) + ", " +
                               name(k) + ")");
    }

  if (zero_d_) return;
  for (std::size_t i = 0; i < n; ++i) {
    Accumulator acc(ring_);
    for (const auto& [j, v] : d_[i]) acc.add(d_[j], v);
    if (!acc.take().empty()) throw InvalidAlgebra("d∘d is nonzero on " + describe(*this, i));
  }
  // d(xy) = d(x) y + (-1)^|x| x d(y)
  auto leibniz = [&](std::size_t i, std::size_t j) {
    Accumulator lhs(ring_);
    for (const auto& [m, v] : product(i, j)) lhs.add(d_[m], v);
    Accumulator rhs(ring_);
    rhs.add(times_basis(d_[i], j), Scalar(1));
    rhs.add(basis_times(i, d_[j]), sign(basis_[i].degree));
    if (lhs.take() != rhs.take())
      throw InvalidAlgebra("Leibniz rule fails on (" + name(i) + ", " + name(j) + ")");
  };
  if (validation == Validation::Exhaustive || n <= sample) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) leibniz(i, j);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, ij] : left_[i]) leibniz(i, j);
    for (std::size_t t = 0; t < 20000; ++t) leibniz(rng() % n, rng() % n);
  }
}

bool FiniteGradedAlgebra::is_graded_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) {
      Combination ji = product(j, i);
      if (basis_[i].degree * basis_[j].degree % 2 != 0)
        for (auto& [k, v] : ji) v = ring_.neg(v);
      if (product(i, j) != ji) return false;
    }
  return true;
}

std::vector<ProductEntry> FiniteGradedAlgebra::product_entries() const {
  std::vector<ProductEntry> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& [j, c] : left_[i]) out.push_back({i, j, c});
  return out;
}

FiniteGradedAlgebra FiniteGradedAlgebra::change_basis(const std::vector<Vector>& vectors,
                                                      std::vector<BasisElement> names) const {
  const std::size_t n = dim();
  if (vectors.size() != n || names.size() != n)
    throw InvalidArgument("change of basis needs exactly dim() vectors and names");
  std::vector<linalg::Entry> e;
  for (std::size_t c = 0; c < n; ++c) {
    if (vectors[c].size() != n) throw InvalidArgument("basis vector has the wrong length");
    for (std::size_t r = 0; r < n; ++r) {
      if (vectors[c][r] == 0) continue;
      if (basis_[r].degree != names[c].degree)
        throw InvalidArgument("new basis element '" + names[c].name + "' is not homogeneous");
      e.push_back({r, c, vectors[c][r]});
    }
  }
  auto p = SparseMatrix::from_triplets(n, n, std::move(e), ring_);
  auto p_inv = linalg::inverse(p, ring_);
  auto coords = [&](const Vector& v) { return to_sparse(p_inv.apply(v, ring_)); };

  std::vector<ProductEntry> products;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto c = coords(multiply(vectors[i], vectors[j]));
      if (!c.empty()) products.push_back({i, j, std::move(c)});
    }
  std::vector<Combination> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = coords(apply_differential(vectors[i]));
  Vector unit = p_inv.apply(unit_, ring_);
  return FiniteGradedAlgebra(ring_, std::move(names), std::move(unit), std::move(products),
                             std::move(d), n <= 64 ? Validation::Exhaustive : Validation::Sampled);
}

FiniteGradedAlgebra FiniteGradedAlgebra::with_unit_basis() const {
  if (unit_index_) return *this;
  std::size_t slot = dim();
  for (auto i : in_degree(0))
    if (unit_[i] != 0) {
      slot = i;
      break;
    }
  if (index_of("1")) throw InvalidAlgebra("cannot name the unit '1': the name is taken");
  std::vector<Vector> vectors;
  for (std::size_t i = 0; i < dim(); ++i) {
    Vector v(dim());
    v[i] = 1;
    vectors.push_back(std::move(v));
  }
  vectors[slot] = unit_;
  auto names = basis_;
  names[slot].name = "1";
  return change_basis(vectors, std::move(names));
}

bool operator==(const FiniteGradedAlgebra& a, const FiniteGradedAlgebra& b) {
  return a.ring_ == b.ring_ && a.basis_ == b.basis_ && a.unit_ == b.unit_ && a.left_ == b.left_ &&
         a.d_ == b.d_;
}

std::optional<HodgeRoles> hodge_roles(const FiniteGradedAlgebra& a) {
  const std::size_t n = a.dim();
  HodgeRoles r;
  r.role.assign(n, HodgeRole::Harmonic);
  r.partner.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.partner[i] = i;
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = a.differential(i);
    if (d.empty()) continue;
    if (d.size() != 1) return std::nullopt;
    std::size_t t = d.front().first;
    if (hit[t] || !a.differential(t).empty()) return std::nullopt;
    hit[t] = true;
    r.role[i] = HodgeRole::Source;
    r.role[t] = HodgeRole::Target;
    r.partner[i] = t;
    r.partner[t] = i;
  }
  return r;
}

AdaptedAlgebra adapt(const FiniteGradedAlgebra& a) {
  const std::size_t n = a.dim();
  const auto& ring = a.ring();
  std::set<std::string> used;
  auto unique_name = [&](std::string s) {
    while (used.count(s)) s += "'";
    used.insert(s);
    return s;
  };
  auto unit_vector = [&](std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
  };
  auto is_basis_vector = [&](const Vector& v) -> std::optional<std::size_t> {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      if (at || v[i] != 1) return std::nullopt;
      at = i;
    }
    return at;
  };

  struct Chosen {
    Vector vec;
    std::string name;
    HodgeRole role;
  };
  std::vector<Chosen> chosen;
  std::vector<std::size_t> previous_sources;  // indices into `chosen`
  std::vector<std::size_t> source_of_target;  // parallel to chosen, for targets

  for (int k = 0; k <= a.max_degree() + 1; ++k) {
    const auto& idx = a.in_degree(k);
    auto local = [&](const Vector& v) {
      Vector out(idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r) out[r] = v[idx[r]];
      return out;
    };
    linalg::EchelonSpace span(idx.size(), ring);
    std::vector<Chosen> harmonic, targets, sources;
    std::vector<std::size_t> target_sources;
    for (auto s : previous_sources) {
      Vector c = a.apply_differential(chosen[s].vec);
      span.insert(local(c));
      auto orig = is_basis_vector(c);
      targets.push_back({c, orig ? a.name(*orig) : "d" + chosen[s].name, HodgeRole::Target});
      target_sources.push_back(s);
    }
    if (idx.empty()) {
      previous_sources.clear();
      continue;
    }
    auto dk = a.differential_matrix(k);
    std::size_t cocycles = idx.size() - linalg::rank(dk, ring);

    std::vector<Vector> candidates;
    if (k == 0 && !a.unit_index()) candidates.push_back(a.unit());
    for (auto i : idx)
      if (a.differential(i).empty()) candidates.push_back(unit_vector(i));
    for (const auto& z : linalg::kernel_basis(dk, ring)) {
      Vector v(n);
      for (std::size_t r = 0; r < idx.size(); ++r) v[idx[r]] = z[r];
      candidates.push_back(std::move(v));
    }
    std::size_t made = 0;
    for (auto& v : candidates) {
      if (span.rank() == cocycles) break;
      if (!span.insert(local(v))) continue;
      std::string name;
      if (k == 0 && v == a.unit() && !a.unit_index())
        name = "1";
      else if (auto orig = is_basis_vector(v))
        name = a.name(*orig);
      else
        name = "h" + std::to_string(k) + "_" + std::to_string(made);
      ++made;
      harmonic.push_back({std::move(v), name, HodgeRole::Harmonic});
    }
    for (auto i : idx) {
      if (span.rank() == idx.size()) break;
      Vector v = unit_vector(i);
      if (span.insert(local(v))) sources.push_back({std::move(v), a.name(i), HodgeRole::Source});
    }

    // Original names take precedence; synthesized ones get primes on a clash.
    for (auto* group : {&harmonic, &targets, &sources})
      for (auto& c : *group)
        if (auto orig = is_basis_vector(c.vec)) used.insert(a.name(*orig));
    for (auto* group : {&harmonic, &targets, &sources})
      for (auto& c : *group)
        if (!is_basis_vector(c.vec)) c.name = unique_name(c.name);

    previous_sources.clear();
    for (auto& c : harmonic) chosen.push_back(std::move(c));
    for (std::size_t t = 0; t < targets.size(); ++t) {
      chosen.push_back(std::move(targets[t]));
      source_of_target.resize(chosen.size(), n);
      source_of_target.back() = target_sources[t];
    }
    for (auto& c : sources) {
      previous_sources.push_back(chosen.size());
      chosen.push_back(std::move(c));
    }
  }

  std::vector<Vector> vectors;
  std::vector<BasisElement> names;
  for (const auto& c : chosen) {
    vectors.push_back(c.vec);
    int deg = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (c.vec[i] != 0) deg = a.degree(i);
    names.push_back({c.name, deg});
  }
  AdaptedAlgebra out{a.change_basis(vectors, names), {}, vectors};
  auto roles = hodge_roles(out.algebra);
  if (!roles) throw InvalidAlgebra("internal: adapted basis is not Hodge-adapted");
  out.roles = std::move(*roles);
  return out;
}

CohomologyAlgebra cohomology_algebra(const FiniteGradedAlgebra& a) {
  auto ad = adapt(a);
  const auto& b = ad.algebra;
  std::vector<std::size_t> harmonic;
  std::vector<std::size_t> position(b.dim(), b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (ad.roles.role[i] == HodgeRole::Harmonic) {
      position[i] = harmonic.size();
      harmonic.push_back(i);
    }
  auto project = [&](const Combination& c) {
    Combination out;
    for (const auto& [i, v] : c)
      if (position[i] < b.dim()) out.emplace_back(position[i], v);
    return out;
  };
  std::vector<BasisElement> basis;
  CohomologyAlgebra out{a, {}};
  for (auto h : harmonic) {
    basis.push_back(b.basis()[h]);
    out.representatives.push_back(ad.to_original[h]);
  }
  std::vector<ProductEntry> products;
  for (std::size_t x = 0; x < harmonic.size(); ++x)
    for (std::size_t y = 0; y < harmonic.size(); ++y) {
      auto c = project(b.product(harmonic[x], harmonic[y]));
      if (!c.empty()) products.push_back({x, y, std::move(c)});
    }
  Vector unit(harmonic.size());
  for (std::size_t x = 0; x < harmonic.size(); ++x) unit[x] = b.unit()[harmonic[x]];
  out.algebra = FiniteGradedAlgebra(a.ring(), std::move(basis), std::move(unit),
                                    std::move(products), {});
  return out;
}

std::vector<std::size_t> cohomology_dimensions(const FiniteGradedAlgebra& a) {
  std::vector<std::size_t> out;
  std::size_t incoming = 0;
  for (int k = 0; k <= a.max_degree(); ++k) {
    std::size_t r = linalg::rank(a.differential_matrix(k), a.ring());
    out.push_back(a.in_degree(k).size() - r - incoming);
    incoming = r;
  }
  return out;
}

}  // namespace strop::dga
