#include "strop/dga/simplicial.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "strop/error.hpp"
#include "strop/linalg/elimination.hpp"

namespace strop::dga {
namespace {

Scalar sign(std::size_t exponent) { return (exponent & 1) ? Scalar(-1) : Scalar(1); }

Simplex without(const Simplex& s, std::size_t i) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) f.push_back(s[j]);
  return f;
}

Simplex slice(const Simplex& s, std::size_t from, std::size_t to) {
  return Simplex(s.begin() + static_cast<std::ptrdiff_t>(from),
                 s.begin() + static_cast<std::ptrdiff_t>(to));
}

void require_same(const Cochain& a, const Cochain& b) {
  if (a.complex != b.complex && !(a.complex && b.complex && *a.complex == *b.complex))
    throw MismatchedComplex("cochains live on different complexes");
  if (!(a.ring == b.ring)) throw MismatchedComplex("cochains use different coefficient rings");
}

std::size_t index_in(const SimplicialComplexData& k, const Simplex& s) {
  auto i = k.index_of(s);
  if (!i) throw InvalidArgument("simplex is not in the complex");
  return *i;
}

}  // namespace

SimplicialComplexData::SimplicialComplexData(std::size_t vertex_count, std::vector<Simplex> facets)
    : vertex_count_(vertex_count), facets_(std::move(facets)) {
  std::set<Simplex> distinct;
  std::size_t top = 0;
  for (auto& f : facets_) {
    if (f.empty()) throw NonSimplicialInput("empty facet");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw NonSimplicialInput("facet repeats a vertex");
    if (f.back() >= vertex_count_)
      throw NonSimplicialInput("facet vertex " + std::to_string(f.back()) + " is out of range");
    if (!distinct.insert(f).second) throw NonSimplicialInput("duplicate facet");
    top = std::max(top, f.size());
  }
  std::vector<std::set<Simplex>> faces(top);
  for (const auto& f : facets_) {
    const std::size_t m = f.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      faces[s.size() - 1].insert(std::move(s));
    }
  }
  for (auto& level : faces) simplices_.emplace_back(level.begin(), level.end());
}

const std::vector<Simplex>& SimplicialComplexData::simplices(int dim) const {
  static const std::vector<Simplex> none;
  if (dim < 0 || dim > dimension()) return none;
  return simplices_[static_cast<std::size_t>(dim)];
}

std::size_t SimplicialComplexData::simplex_count() const noexcept {
  std::size_t n = 0;
  for (const auto& level : simplices_) n += level.size();
  return n;
}

std::optional<std::size_t> SimplicialComplexData::index_of(const Simplex& s) const {
  if (s.empty()) return std::nullopt;
  const auto& level = simplices(static_cast<int>(s.size()) - 1);
  auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it == level.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

bool SimplicialComplexData::is_pure() const noexcept {
  for (const auto& f : facets_)
    if (static_cast<int>(f.size()) - 1 != dimension()) return false;
  return true;
}

SimplicialComplexData load_complex(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("complex description: ") + e.what());
  }
  if (!root.IsMap() || !root["vertices"] || !root["facets"])
    throw ParseError("complex description needs 'vertices' and 'facets'");
  try {
    long long n = root["vertices"].as<long long>();
    if (n < 0) throw ParseError("'vertices' must be nonnegative");
    if (!root["facets"].IsSequence()) throw ParseError("'facets' must be a list");
    std::vector<Simplex> facets;
    for (const auto& f : root["facets"]) {
      if (!f.IsSequence()) throw ParseError("each facet must be a list of vertex indices");
      Simplex s;
      for (const auto& v : f) {
        long long x = v.as<long long>();
        if (x < 0) throw ParseError("vertex indices must be nonnegative");
        s.push_back(static_cast<std::uint32_t>(x));
      }
      facets.push_back(std::move(s));
    }
    return SimplicialComplexData(static_cast<std::size_t>(n), std::move(facets));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("complex description: ") + e.what());
  }
}

SimplicialComplexData load_complex_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_complex(ss.str());
}

Cochain Cochain::zero(std::shared_ptr<const SimplicialComplexData> k, CoefficientRing ring,
                      int degree) {
  Cochain c{std::move(k), ring, degree, {}};
  c.coefficients.assign(c.complex->simplices(degree).size(), Scalar(0));
  return c;
}

Cochain Cochain::unit(std::shared_ptr<const SimplicialComplexData> k, CoefficientRing ring) {
  Cochain c = zero(std::move(k), ring, 0);
  for (auto& x : c.coefficients) x = 1;
  return c;
}

Scalar Cochain::operator()(const Simplex& s) const {
  if (static_cast<int>(s.size()) - 1 != degree) return 0;
  auto i = complex->index_of(s);
  return i ? coefficients[*i] : Scalar(0);
}

bool Cochain::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const Scalar& x) { return x == 0; });
}

SparseMatrix coboundary_matrix(const SimplicialComplexData& k, int p,
                               const CoefficientRing& ring) {
  const auto& rows = k.simplices(p + 1);
  const auto& cols = k.simplices(p);
  std::vector<linalg::Entry> e;
  if (p >= 0)
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t i = 0; i < rows[r].size(); ++i)
        e.push_back({r, index_in(k, without(rows[r], i)), sign(i)});
  return SparseMatrix::from_triplets(rows.size(), cols.size(), std::move(e), ring);
}

Cochain coboundary(const Cochain& c) {
  auto out = Cochain::zero(c.complex, c.ring, c.degree + 1);
  out.coefficients = coboundary_matrix(*c.complex, c.degree, c.ring).apply(c.coefficients, c.ring);
  return out;
}

Cochain cup_product(const Cochain& a, const Cochain& b) {
  require_same(a, b);
  const auto& k = *a.complex;
  auto out = Cochain::zero(a.complex, a.ring, a.degree + b.degree);
  const auto p = static_cast<std::size_t>(a.degree);
  const auto& top = k.simplices(a.degree + b.degree);
  for (std::size_t r = 0; r < top.size(); ++r) {
    const auto& s = top[r];
    Scalar front = a.coefficients[index_in(k, slice(s, 0, p + 1))];
    if (front == 0) continue;
    Scalar back = b.coefficients[index_in(k, slice(s, p, s.size()))];
    out.coefficients[r] = a.ring.mul(front, back);
  }
  return out;
}

std::string simplex_name(const Simplex& s) {
  std::string out = "s";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '_';
    out += std::to_string(s[i]);
  }
  return out;
}

FiniteGradedAlgebra build_cochain_dga(const SimplicialComplexData& k,
                                      const CoefficientRing& ring) {
  std::vector<std::size_t> offset;
  std::vector<BasisElement> basis;
  for (int d = 0; d <= k.dimension(); ++d) {
    offset.push_back(basis.size());
    for (const auto& s : k.simplices(d)) basis.push_back({simplex_name(s), d});
  }
  auto global = [&](const Simplex& s) {
    return offset[s.size() - 1] + index_in(k, s);
  };

  // e_σ ∪ e_τ = e_ρ exactly when ρ splits as σ = front, τ = back.
  std::vector<ProductEntry> products;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& rho : k.simplices(d))
      for (std::size_t p = 0; p < rho.size(); ++p)
        products.push_back({global(slice(rho, 0, p + 1)), global(slice(rho, p, rho.size())),
                            {{global(rho), Scalar(1)}}});

  std::vector<Combination> d(basis.size());
  for (int q = 1; q <= k.dimension(); ++q)
    for (const auto& sigma : k.simplices(q))
      for (std::size_t i = 0; i < sigma.size(); ++i)
        d[global(without(sigma, i))].emplace_back(global(sigma), ring.normalize(sign(i)));

  Vector unit(basis.size());
  for (std::size_t v = 0; v < k.simplices(0).size(); ++v) unit[v] = 1;
  auto mode = k.simplex_count() <= 64 ? Validation::Exhaustive : Validation::Sampled;
  return FiniteGradedAlgebra(ring, std::move(basis), std::move(unit), std::move(products),
                             std::move(d), mode);
}

FiniteGradedAlgebra cohomology_ring(const SimplicialComplexData& k, const CoefficientRing& ring) {
  return cohomology_algebra(build_cochain_dga(k, ring)).algebra;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplexData& k,
                                       const CoefficientRing& ring) {
  std::vector<std::size_t> out;
  std::size_t incoming = 0;
  for (int p = 0; p <= k.dimension(); ++p) {
    std::size_t r = linalg::rank(coboundary_matrix(k, p, ring), ring);
    out.push_back(k.simplices(p).size() - r - incoming);
    incoming = r;
  }
  return out;
}

Vector fundamental_class(const SimplicialComplexData& k, const CoefficientRing& ring) {
  if (!k.is_pure()) throw NotPure("complex has facets of different dimensions");
  const int d = k.dimension();
  const auto& top = k.simplices(d);
  Vector out(top.size(), Scalar(1));
  if (d == 0) return out;

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cofaces(
      k.simplices(d - 1).size());
  for (std::size_t t = 0; t < top.size(); ++t)
    for (std::size_t i = 0; i < top[t].size(); ++i)
      cofaces[index_in(k, without(top[t], i))].emplace_back(t, i);

  if (ring.is_prime_field() && ring.characteristic() == 2) {
    for (const auto& c : cofaces)
      if (c.size() % 2 != 0)
        throw NotOrientable("a codimension-one face has an odd number of cofaces");
    return out;
  }
  for (const auto& c : cofaces)
    if (c.size() != 2)
      throw NotOrientable("a codimension-one face does not have exactly two cofaces");

  // Adjacent facets must induce opposite signs on their shared face.
  std::vector<int> eps(top.size(), 0);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> faces_of(top.size());
  for (std::size_t f = 0; f < cofaces.size(); ++f)
    for (const auto& [t, i] : cofaces[f]) faces_of[t].emplace_back(f, i);
  for (std::size_t start = 0; start < top.size(); ++start) {
    if (eps[start] != 0) continue;
    eps[start] = 1;
    std::queue<std::size_t> todo;
    todo.push(start);
    while (!todo.empty()) {
      auto t = todo.front();
      todo.pop();
      for (const auto& [f, i] : faces_of[t]) {
        const auto& pair = cofaces[f];
        const auto& other = pair[0].first == t && pair[0].second == i ? pair[1] : pair[0];
        int want = -eps[t] * (((i + other.second) & 1) ? -1 : 1);
        if (eps[other.first] == 0) {
          eps[other.first] = want;
          todo.push(other.first);
        } else if (eps[other.first] != want) {
          throw NotOrientable("orientations of adjacent facets cannot be made consistent");
        }
      }
    }
  }
  for (std::size_t t = 0; t < top.size(); ++t) out[t] = ring.normalize(Scalar(eps[t]));
  auto boundary = coboundary_matrix(k, d - 1, ring).transpose().apply(out, ring);
  for (const auto& x : boundary)
    if (x != 0) throw NotOrientable("signed facet sum is not a cycle");
  return out;
}

Vector cap_product(const SimplicialComplexData& k, const CoefficientRing& ring, int chain_degree,
                   const Vector& chain, const Cochain& phi) {
  if (phi.complex && !(*phi.complex == k)) throw MismatchedComplex("cochain is on another complex");
  const int q = chain_degree - phi.degree;
  if (q < 0) return {};
  const auto& cells = k.simplices(chain_degree);
  Vector out(k.simplices(q).size());
  const auto p = static_cast<std::size_t>(phi.degree);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (chain[r] == 0) continue;
    const auto& s = cells[r];
    Scalar f = phi.coefficients[index_in(k, slice(s, 0, p + 1))];
    if (f == 0) continue;
    auto b = index_in(k, slice(s, p, s.size()));
    out[b] = ring.add(out[b], ring.mul(chain[r], f));
  }
  return out;
}

bool is_cycle(const SimplicialComplexData& k, const CoefficientRing& ring, const HomologyClass& c) {
  if (c.degree < 0 || c.degree > k.dimension()) return c.cycle.empty();
  if (c.cycle.size() != k.simplices(c.degree).size()) return false;
  if (c.degree == 0) return true;
  auto b = coboundary_matrix(k, c.degree - 1, ring).transpose().apply(c.cycle, ring);
  return std::all_of(b.begin(), b.end(), [](const Scalar& x) { return x == 0; });
}

namespace {

// Boundaries in C_q: the rows of δ: C^q -> C^{q+1}.
linalg::EchelonSpace boundary_space(const SimplicialComplexData& k, const CoefficientRing& ring,
                                    int q) {
  const std::size_t n = k.simplices(q).size();
  linalg::EchelonSpace span(n, ring);
  auto dq = coboundary_matrix(k, q, ring);
  std::vector<Vector> rows(dq.rows(), Vector(n));
  for (const auto& e : dq.entries()) rows[e.row][e.col] = e.value;
  for (const auto& r : rows) span.insert(r);
  return span;
}

// Cochain α with [M] ⌢ α homologous to the cycle a.
Cochain dual_cochain(const std::shared_ptr<const SimplicialComplexData>& k,
                     const CoefficientRing& ring, const Vector& fundamental,
                     const HomologyClass& a) {
  const int d = k->dimension();
  const int p = d - a.degree;
  auto span = boundary_space(*k, ring, a.degree);
  std::size_t base = span.rank();
  std::vector<std::pair<std::size_t, Vector>> images;  // generator index -> cocycle
  for (auto& z : linalg::kernel_basis(coboundary_matrix(*k, p, ring), ring)) {
    Cochain zc{k, ring, p, z};
    if (span.insert(cap_product(*k, ring, d, fundamental, zc)))
      images.emplace_back(base + images.size(), std::move(z));
  }
  auto coords = span.coordinates(a.cycle);
  if (!coords) throw InvalidArgument("class is not in the image of Poincaré duality");
  auto alpha = Cochain::zero(k, ring, p);
  for (const auto& [g, z] : images)
    for (std::size_t i = 0; i < z.size(); ++i)
      alpha.coefficients[i] = ring.add(alpha.coefficients[i], ring.mul((*coords)[g], z[i]));
  return alpha;
}

}  // namespace

bool homologous(const SimplicialComplexData& k, const CoefficientRing& ring,
                const HomologyClass& a, const HomologyClass& b) {
  if (a.degree != b.degree) return false;
  if (a.degree < 0 || a.degree > k.dimension()) return true;
  Vector diff(a.cycle.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ring.sub(a.cycle[i], b.cycle[i]);
  return boundary_space(k, ring, a.degree).contains(diff);
}

HomologyClass intersection_product(const HomologyClass& a, const HomologyClass& b,
                                   const SimplicialComplexData& k, const CoefficientRing& ring) {
  auto fundamental = fundamental_class(k, ring);
  for (const auto* c : {&a, &b})
    if (c->degree < 0 || c->degree > k.dimension() || !is_cycle(k, ring, *c))
      throw InvalidArgument("intersection_product needs cycles of the complex");
  const int d = k.dimension();
  HomologyClass out{a.degree + b.degree - d, {}};
  if (out.degree < 0) return out;
  auto shared = std::make_shared<const SimplicialComplexData>(k);
  auto alpha = dual_cochain(shared, ring, fundamental, a);
  auto beta = dual_cochain(shared, ring, fundamental, b);
  out.cycle = cap_product(k, ring, d, fundamental, cup_product(alpha, beta));
  return out;
}

}  // namespace strop::dga
