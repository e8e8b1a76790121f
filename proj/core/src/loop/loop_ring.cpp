#include "strop/loop/loop_ring.hpp"

#include <algorithm>

#include "strop/error.hpp"

namespace strop::loop {

namespace {

using hochschild::HochschildCohomology;
using hochschild::HochschildCochain;
using hochschild::HochschildWindow;
using hochschild::WindowSpec;

std::string degree_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

LoopRingResult run(const FiniteGradedAlgebra& a, Source source, int d, const LoopWindow& window,
                   std::vector<std::string> warnings) {
  if (window.q_min > window.q_max) throw InvalidArgument("empty loop-degree window");
  auto ad = dga::adapt(a);
  const int n_min = -window.q_max, n_max = -window.q_min;

  std::size_t S = 0;
  if (window.max_tensor) {
    S = *window.max_tensor;
  } else if (auto s = saturating_tensor_bound(ad.algebra, n_min, n_max, window.tensor_cap)) {
    S = *s;
  } else if (window.require_saturation) {
    throw WindowTooSmall("no tensor length up to " + std::to_string(window.tensor_cap) +
                         " saturates the window");
  } else {
    S = window.fallback_tensor;
  }
  WindowSpec spec;
  spec.max_tensor = S;
  spec.n_min = n_min;
  spec.n_max = n_max;
  spec.require_saturation = window.require_saturation;
  auto w = HochschildWindow::build(ad.algebra, spec);
  auto h = std::make_shared<const HochschildCohomology>(w);
  auto p = hochschild::ring_presentation(*h);

  LoopRingResult out;
  out.source = source;
  out.ring = a.ring();
  out.manifold_dimension = d;
  out.max_tensor = S;
  std::vector<int> unsaturated;
  for (int q = window.q_min; q <= window.q_max; ++q) {
    const auto* rd = p.degree(-q);
    out.degrees.push_back({q, rd->dimension, rd->saturated, rd->labels});
    if (!rd->saturated) unsaturated.push_back(q);
  }
  for (const auto& rp : p.products)
    out.products.push_back({-rp.left_degree, rp.left, -rp.right_degree, rp.right, rp.value});
  for (const auto& [x, y] : p.incomplete) out.incomplete.emplace_back(-x, -y);
  out.unit = p.unit;
  if (!unsaturated.empty())
    warnings.push_back("tensor length " + std::to_string(S) +
                       " does not saturate loop degrees " + degree_list(unsaturated) +
                       "; their dimensions are those of the truncated complex");
  out.warnings = std::move(warnings);
  out.cohomology = std::move(h);
  out.adapted_basis = std::move(ad.to_original);
  return out;
}

}  // namespace

const LoopDegree* LoopRingResult::degree(int q) const {
  for (const auto& d : degrees)
    if (d.degree == q) return &d;
  return nullptr;
}

const LoopProduct* LoopRingResult::product(int q1, std::size_t i, int q2, std::size_t j) const {
  for (const auto& p : products)
    if (p.left_degree == q1 && p.left == i && p.right_degree == q2 && p.right == j) return &p;
  return nullptr;
}

std::optional<std::size_t> saturating_tensor_bound(const FiniteGradedAlgebra& a, int n_min, int n_max,
                                                   std::size_t cap) {
  WindowSpec probe;
  probe.max_tensor = 0;
  probe.n_min = n_min;
  probe.n_max = n_max;
  probe.normalized = a.unit_index().has_value();
  auto w = HochschildWindow::build(a, probe);
  for (std::size_t S = 0; S <= cap; ++S) {
    bool all = true;
    for (int n = n_min; n <= n_max && all; ++n)
      all = w->no_high_cells(n, S) && w->no_high_cells(n + 1, S);
    if (all) return S;
  }
  return std::nullopt;
}

LoopRingResult loop_ring_from_formal(const FiniteGradedAlgebra& a, int d, const LoopWindow& window) {
  std::vector<std::string> warnings;
  if (!a.has_zero_differential()) warnings.push_back("formal input has a nonzero differential");
  if (!a.is_graded_commutative()) warnings.push_back("formal input is not graded commutative");
  if (a.max_degree() != d || a.in_degree(d).size() != 1)
    warnings.push_back("top degree is not a single class in degree " + std::to_string(d));
  auto dims = dga::cohomology_dimensions(a);
  if (dims.size() > 1 && dims[1] != 0)
    warnings.push_back("H^1 is nonzero: the input is not simply connected, so the result is the "
                       "Hochschild cohomology of the algebra and not certified loop homology");
  return run(a, Source::FormalAlgebra, d, window, std::move(warnings));
}

LoopRingResult loop_ring_from_complex(const dga::SimplicialComplexData& k, const CoefficientRing& ring,
                                      const LoopWindow& window) {
  dga::fundamental_class(k, ring);
  std::vector<std::string> warnings;
  auto betti = dga::betti_numbers(k, ring);
  if (betti.size() > 1 && betti[1] != 0)
    warnings.push_back("H^1 is nonzero: the input is not simply connected, so the result is the "
                       "Hochschild cohomology of the cochain algebra and not certified loop homology");
  auto a = dga::build_cochain_dga(k, ring);
  return run(a, Source::SimplicialComplex, k.dimension(), window, std::move(warnings));
}

ConstantLoopMap constant_loop_map(const LoopRingResult& result) {
  ConstantLoopMap out;
  const auto& h = *result.cohomology;
  const auto& w = h.window();
  const auto& alg = w->algebra();
  const auto& ring = alg.ring();
  auto roles = dga::hodge_roles(alg);
  std::vector<std::size_t> harmonic;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!roles || roles->role[i] == dga::HodgeRole::Harmonic) harmonic.push_back(i);

  std::vector<std::optional<std::size_t>> image_of(alg.dim());
  for (auto i : harmonic) {
    const int n = alg.degree(i);
    if (n < h.n_min() || n > h.n_max()) continue;
    Vector e(alg.dim());
    e[i] = 1;
    auto c = HochschildCochain::constant(w, e, n);
    if (!hochschild::differential(c).is_zero()) {
      out.skipped.push_back(alg.name(i));
      continue;
    }
    image_of[i] = out.images.size();
    out.images.push_back({n, alg.name(i), -n, h.classify(c)});
  }

  out.unital = false;
  if (auto u = alg.unit_index(); u && image_of[*u])
    out.unital = result.unit.empty() || out.images[*image_of[*u]].value == result.unit;

  out.multiplicative = true;
  for (auto i : harmonic)
    for (auto j : harmonic) {
      if (!image_of[i] || !image_of[j]) continue;
      const auto& x = out.images[*image_of[i]];
      const auto& y = out.images[*image_of[j]];
      const int n = x.cohomology_degree + y.cohomology_degree;
      if (n < h.n_min() || n > h.n_max()) continue;
      // expected: image of the harmonic part of h_i h_j
      Vector expected(h.dimension(n));
      bool defined = true;
      for (const auto& [k, c] : alg.product(i, j)) {
        if (roles && roles->role[k] != dga::HodgeRole::Harmonic) continue;
        if (!image_of[k]) {
          defined = false;
          break;
        }
        const auto& v = out.images[*image_of[k]].value;
        for (std::size_t q = 0; q < expected.size(); ++q) expected[q] = ring.add(expected[q], ring.mul(c, v[q]));
      }
      if (!defined) continue;
      Vector actual(h.dimension(n));
      for (std::size_t a = 0; a < x.value.size(); ++a)
        for (std::size_t b = 0; b < y.value.size(); ++b) {
          if (x.value[a] == 0 || y.value[b] == 0) continue;
          auto prod = *h.product(x.cohomology_degree, a, y.cohomology_degree, b);
          auto k = ring.mul(x.value[a], y.value[b]);
          for (std::size_t q = 0; q < actual.size(); ++q) actual[q] = ring.add(actual[q], ring.mul(k, prod[q]));
        }
      ++out.pairs_checked;
      if (actual != expected) out.multiplicative = false;
    }
  return out;
}

}  // namespace strop::loop
