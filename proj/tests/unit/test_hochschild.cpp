#include <gtest/gtest.h>

#include <random>

#include "dense_rank.hpp"
#include "random_algebra.hpp"
#include "strop/dga/algebra_io.hpp"
#include "strop/dga/simplicial.hpp"
#include "strop/error.hpp"
#include "strop/hochschild/cohomology.hpp"

using namespace strop;
using namespace strop::hochschild;
using namespace strop::testing;

namespace {

const auto Q = CoefficientRing::rationals();
const auto F2 = CoefficientRing::prime_field(2);

WindowPtr make(const FiniteGradedAlgebra& a, std::size_t S, int lo, int hi, bool normalized = true) {
  WindowSpec spec;
  spec.max_tensor = S;
  spec.n_min = lo;
  spec.n_max = hi;
  spec.normalized = normalized;
  return HochschildWindow::build(a, spec);
}

FiniteGradedAlgebra load(const std::string& name) {
  return dga::load_algebra_file(std::string(STROP_DATA_DIR) + "/algebras/" + name + ".yaml");
}

FiniteGradedAlgebra cochains(const std::string& name, const CoefficientRing& ring) {
  return dga::build_cochain_dga(
      dga::load_complex_file(std::string(STROP_DATA_DIR) + "/complexes/" + name + ".yaml"), ring);
}

HochschildCochain random_cochain(std::mt19937_64& rng, const WindowPtr& w, int n) {
  // at most a dozen nonzero terms keeps dense cup products cheap
  auto c = HochschildCochain::zero(w, n);
  if (c.coefficients.empty()) return c;
  for (int k = 0; k < 12; ++k)
    c.coefficients[rng() % c.coefficients.size()] = random_scalar(rng, w->algebra().ring());
  return c;
}

Vector add(const Vector& a, const Vector& b, const CoefficientRing& ring, const Scalar& k = 1) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], ring.mul(k, b[i]));
  return out;
}

// dim H^n straight from ranks of the window matrices.
std::size_t rank_dimension(const WindowPtr& w, int n) {
  const auto& ring = w->algebra().ring();
  return w->dim(n) - dense_rank(w->differential_matrix(n).to_dense(), ring) -
         dense_rank(w->differential_matrix(n - 1).to_dense(), ring);
}

void expect_d_squared_zero(const WindowPtr& w) {
  const auto& ring = w->algebra().ring();
  for (int n = w->stored_min(); n + 2 <= w->stored_max(); ++n) {
    auto dd = linalg::multiply(w->differential_matrix(n + 1), w->differential_matrix(n), ring);
    EXPECT_TRUE(dd.is_zero()) << "degree " << n;
  }
}

}  // namespace

TEST(Window, GroundField) {
  auto k = load("point");
  auto w = make(k, 4, -3, 3);
  for (int n = -3; n <= 3; ++n) EXPECT_EQ(w->dim(n), n == 0 ? 1u : 0u);
  HochschildCohomology h(w);
  for (int n = -3; n <= 3; ++n) EXPECT_EQ(h.dimension(n), n == 0 ? 1u : 0u);
}

TEST(Window, DualNumbersDegreeTwo) {
  auto a = load("sphere2_f2");
  auto w = make(a, 3, -4, 3);
  // maps x^{⊗s} -> 1 (degree -s) and x^{⊗s} -> x (degree 2 - s)
  std::map<std::pair<int, int>, int> per_bidegree;
  for (int n = w->stored_min(); n <= w->stored_max(); ++n)
    for (std::size_t i = 0; i < w->dim(n); ++i) {
      auto c = w->cell(n, i);
      auto b = w->bidegree(c);
      EXPECT_EQ(b.s + b.t, n);
      for (auto u : c.inputs) EXPECT_NE(u, *a.unit_index());
      ++per_bidegree[{b.s, b.t}];
    }
  for (int s = 0; s <= 3; ++s) {
    EXPECT_EQ((per_bidegree[{s, -2 * s}]), 1);
    EXPECT_EQ((per_bidegree[{s, 2 - 2 * s}]), 1);
  }
  EXPECT_EQ(per_bidegree.size(), 8u);
}

TEST(Window, FullDualNumbers) {
  auto a = load("dual_numbers_f2");
  auto w = make(a, 2, 0, 2, false);
  EXPECT_EQ(w->dim(2), 8u);
  EXPECT_EQ(w->alphabet().size(), 2u);
  EXPECT_THROW(make(upper_triangular(Q), 2, 0, 1), InvalidArgument);
  EXPECT_NO_THROW(make(upper_triangular(Q), 2, 0, 1, false));
}

TEST(Window, CodesRoundTrip) {
  auto a = cochains("sphere2", F2).with_unit_basis();
  auto w = make(a, 3, -1, 1);
  for (int n = w->stored_min(); n <= w->stored_max(); ++n)
    for (std::size_t i = 0; i < w->dim(n); ++i) {
      auto c = w->cell(n, i);
      EXPECT_EQ(w->total_degree(c), n);
      EXPECT_EQ(w->find(n, c), i);
    }
}

TEST(Window, Errors) {
  auto a = load("sphere2_q");
  auto w = make(a, 2, 0, 2);
  auto phi = HochschildCochain::zero(w, 3);
  EXPECT_THROW(differential(phi), DegreeOutOfWindow);
  EXPECT_THROW(w->differential_matrix(-2), DegreeOutOfWindow);
  auto other = make(a, 2, 0, 2);
  EXPECT_THROW(cup(HochschildCochain::zero(w, 0), HochschildCochain::zero(other, 0)),
               MismatchedWindow);
  EXPECT_THROW(cup(HochschildCochain::zero(w, 2), HochschildCochain::zero(w, 2)),
               DegreeOutOfWindow);
  WindowSpec spec{2, -6, 2, true, true, false};
  EXPECT_THROW(HochschildWindow::build(a, spec), WindowTooSmall);
  spec.max_tensor = 8;
  EXPECT_NO_THROW(HochschildWindow::build(a, spec));
}

TEST(Differential, SquaresToZeroOnRandomAlgebras) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto a = random_algebra(rng);
    bool normalized = a.unit_index() && rng() % 3 != 0;
    std::size_t S = 2 + rng() % 2;
    expect_d_squared_zero(make(a, S, -3, 4, normalized));
  }
}

TEST(Differential, SquaresToZeroOnCochainAlgebras) {
  for (auto ring : {F2, Q}) {
    auto a = cochains("sphere2", ring);
    expect_d_squared_zero(make(a.with_unit_basis(), 2, -1, 1));
    expect_d_squared_zero(make(dga::adapt(a).algebra, 3, -1, 1));
    expect_d_squared_zero(make(a, 2, 0, 1, false));
  }
}

TEST(Differential, CentralElementsAreCocycles) {
  // a ∈ CH^0 with A graded commutative and d = 0
  auto a = load("sphere3_q");
  auto w = make(a, 2, 0, 3);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto phi = HochschildCochain::constant(w, basis_vector(a.dim(), i), a.degree(i));
    EXPECT_TRUE(differential(phi).is_zero());
  }
}

TEST(Differential, IdentityOfDualNumbers) {
  // φ = id, full complex: xφ(y) - φ(xy) + φ(x)y on (e, e) is e² - e² + e² = 0
  auto a = load("dual_numbers_f2");
  auto w = make(a, 2, 0, 2, false);
  auto phi = HochschildCochain::zero(w, 1);
  for (std::size_t i = 0; i < a.dim(); ++i) phi.coefficients[*w->find(1, Cell{{i}, i})] = 1;
  auto d = differential(phi);
  auto e = *a.index_of("e");
  for (std::size_t o = 0; o < a.dim(); ++o) EXPECT_EQ(d.coefficients[*w->find(2, Cell{{e, e}, o})], 0);
}

TEST(Differential, FaultInjectionIsVisible) {
  // noncommutative: d² fails; commutative: the complex survives but HH changes
  WindowSpec spec{3, -3, 2, true, false, true};
  auto w = HochschildWindow::build(quantum_exterior(Q, 1, 2, Scalar(2)), spec);
  bool broken = false;
  for (int n = w->stored_min(); n + 2 <= w->stored_max(); ++n)
    broken |= !linalg::multiply(w->differential_matrix(n + 1), w->differential_matrix(n), Q).is_zero();
  EXPECT_TRUE(broken);

  auto a = load("sphere3_q");
  spec = {4, -3, 3, true, false, true};
  auto faulty = HochschildWindow::build(a, spec);
  spec.inject_sign_fault = false;
  auto honest = HochschildWindow::build(a, spec);
  bool differs = false;
  for (int n = -3; n <= 3; ++n) differs |= rank_dimension(faulty, n) != rank_dimension(honest, n);
  EXPECT_TRUE(differs);
}

TEST(Cup, Examples) {
  auto a = load("dual_numbers_f2");
  auto w = make(a, 3, 0, 3);
  auto e = *a.index_of("e");
  auto one = *a.unit_index();
  auto phi = HochschildCochain::basis(w, 1, *w->find(1, Cell{{e}, one}));
  auto sq = cup(phi, phi);
  auto expected = HochschildCochain::basis(w, 2, *w->find(2, Cell{{e, e}, one}));
  EXPECT_EQ(sq.coefficients, expected.coefficients);

  auto unit = HochschildCochain::constant(w, a.unit(), 0);
  std::mt19937_64 rng(3);
  for (int n = 0; n <= 3; ++n) {
    auto psi = random_cochain(rng, w, n);
    EXPECT_EQ(cup(unit, psi).coefficients, psi.coefficients);
    EXPECT_EQ(cup(psi, unit).coefficients, psi.coefficients);
  }

  // s = 0 products are products in A
  auto s3 = load("sphere3_q");
  auto w3 = make(s3, 1, 0, 3);
  auto x = basis_vector(2, 1);
  auto c = cup(HochschildCochain::constant(w3, s3.unit(), 0), HochschildCochain::constant(w3, x, 3));
  EXPECT_EQ(c.coefficients, HochschildCochain::constant(w3, x, 3).coefficients);
}

TEST(Cup, LeibnizAndAssociativity) {
  std::mt19937_64 rng(12);
  std::vector<FiniteGradedAlgebra> algebras;
  for (int t = 0; t < 8; ++t) algebras.push_back(random_algebra(rng));
  algebras.push_back(dga::adapt(cochains("sphere2", Q)).algebra);
  for (const auto& a : algebras) {
    const auto& ring = a.ring();
    auto w = make(a, 3, -3, 3, a.unit_index().has_value());
    for (int k = 0; k < 100; ++k) {
      int p = -2 + static_cast<int>(rng() % 4), q = -2 + static_cast<int>(rng() % 4);
      if (p + q + 1 > w->stored_max() || p + q < w->stored_min()) continue;
      auto phi = random_cochain(rng, w, p), psi = random_cochain(rng, w, q);
      auto lhs = differential(cup(phi, psi));
      auto rhs = add(cup(differential(phi), psi).coefficients, cup(phi, differential(psi)).coefficients,
                     ring, p % 2 ? -1 : 1);
      ASSERT_EQ(lhs.coefficients, rhs);
    }
    for (int k = 0; k < 30; ++k) {
      int p = -1 + static_cast<int>(rng() % 3), q = -1 + static_cast<int>(rng() % 3),
          r = -1 + static_cast<int>(rng() % 3);
      if (!w->stores(p + q) || !w->stores(q + r) || !w->stores(p + q + r)) continue;
      auto x = random_cochain(rng, w, p), y = random_cochain(rng, w, q), z = random_cochain(rng, w, r);
      ASSERT_EQ(cup(cup(x, y), z).coefficients, cup(x, cup(y, z)).coefficients);
    }
  }
}

TEST(Cohomology, MorseMatchesRanks) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    auto a = random_algebra(rng);
    auto ad = dga::adapt(a).algebra;
    auto w = make(ad, 3, -2, 3);
    HochschildCohomology h(w);
    EXPECT_TRUE(h.uses_morse());
    for (int n = -2; n <= 3; ++n) {
      EXPECT_EQ(h.dimension(n), rank_dimension(w, n)) << "degree " << n;
      EXPECT_LE(h.critical_cells(n), w->dim(n));
    }
  }
}

TEST(Cohomology, CochainAlgebraAdaptedAndPlain) {
  auto a = cochains("sphere2", F2);
  auto plain = make(a.with_unit_basis(), 2, -1, 1);
  auto adapted = make(dga::adapt(a).algebra, 2, -1, 1);
  HochschildCohomology hp(plain), ha(adapted);
  EXPECT_FALSE(hp.uses_morse());
  EXPECT_TRUE(ha.uses_morse());
  for (int n = -1; n <= 1; ++n) {
    EXPECT_EQ(hp.dimension(n), ha.dimension(n));
    EXPECT_LT(ha.critical_cells(n), hp.critical_cells(n));
  }
}

TEST(Cohomology, RepresentativesAreCocycles) {
  auto a = dga::adapt(cochains("sphere2", Q)).algebra;
  auto w = make(a, 3, -2, 1);
  HochschildCohomology h(w);
  for (int n = -2; n <= 1; ++n)
    for (std::size_t i = 0; i < h.dimension(n); ++i) {
      auto z = h.representative(n, i);
      EXPECT_TRUE(differential(z).is_zero());
      auto c = h.classify(z);
      EXPECT_EQ(c, basis_vector(h.dimension(n), i));
    }
  // a coboundary classifies to zero
  std::mt19937_64 rng(2);
  auto b = differential(random_cochain(rng, w, -1));
  EXPECT_TRUE(h.is_coboundary(b));
  auto nonclosed = HochschildCochain::basis(w, 0, 0);
  if (!differential(nonclosed).is_zero()) EXPECT_THROW(h.classify(nonclosed), InvalidArgument);
}

TEST(Cohomology, DualNumbersGradedTwo) {
  // HH of F2[x]/(x²), |x| = 2 in degrees -2..2, saturated from S = 6
  auto w = make(load("sphere2_f2"), 6, -2, 2);
  HochschildCohomology h(w);
  for (int n = -2; n <= 2; ++n) {
    EXPECT_TRUE(h.saturated(n));
    EXPECT_EQ(h.dimension(n), rank_dimension(w, n));
  }
}

TEST(Cohomology, NormalizedAgreesWithFull) {
  std::mt19937_64 rng(14);
  int compared = 0;
  for (int t = 0; t < 40 && compared < 10; ++t) {
    auto a = random_algebra(rng);
    if (a.dim() > 3 || !a.unit_index()) continue;
    auto wn = make(a, 3, -1, 2, true);
    auto wf = make(a, 3, -1, 2, false);
    for (int n = -1; n <= 2; ++n)
      if (wn->saturated(n) && wf->saturated(n)) {
        EXPECT_EQ(rank_dimension(wn, n), rank_dimension(wf, n));
        ++compared;
      }
  }
  EXPECT_GT(compared, 0);
}

TEST(Ring, GradedCommutativeUpToCoboundary) {
  std::vector<FiniteGradedAlgebra> algebras{load("sphere2_f2"), load("sphere3_q"), load("rp2_f2"),
                                            dga::adapt(cochains("sphere2", Q)).algebra};
  for (const auto& a : algebras) {
    auto w = make(a, 3, -3, 3);
    HochschildCohomology h(w);
    const auto& ring = a.ring();
    for (int p = -3; p <= 3; ++p)
      for (int q = -3; q <= 3; ++q) {
        if (p + q < -3 || p + q > 3) continue;
        for (std::size_t i = 0; i < h.dimension(p); ++i)
          for (std::size_t j = 0; j < h.dimension(q); ++j) {
            auto x = h.representative(p, i), y = h.representative(q, j);
            auto diff = add(cup(x, y).coefficients, cup(y, x).coefficients, ring,
                            (p * q) % 2 ? 1 : -1);
            EXPECT_TRUE(h.is_coboundary(HochschildCochain{w, p + q, diff}));
          }
      }
  }
}

TEST(Ring, PresentationIsUnitalAndAssociative) {
  for (auto a : {load("sphere2_f2"), load("sphere3_q"), load("dual_numbers_f2")}) {
    auto w = make(a, 6, -3, 3);
    HochschildCohomology h(w);
    auto p = ring_presentation(h);
    const auto& ring = p.ring;
    ASSERT_EQ(p.unit.size(), p.degree(0)->dimension);
    for (const auto& d : p.degrees) {
      if (!d.saturated) continue;
      for (std::size_t i = 0; i < d.dimension; ++i) {
        // unit · x = x
        Vector sum(d.dimension);
        for (std::size_t u = 0; u < p.unit.size(); ++u)
          if (p.unit[u] != 0) sum = add(sum, p.product(0, u, d.degree, i)->value, ring, p.unit[u]);
        EXPECT_EQ(sum, basis_vector(d.dimension, i));
      }
    }
    // associativity wherever all three products are reported
    auto mult = [&](int n1, const Vector& x, int n2, const Vector& y) -> std::optional<Vector> {
      const auto* c = p.degree(n1 + n2);
      if (!c || !p.complete(n1, n2)) return std::nullopt;
      Vector out(c->dimension);
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
          if (x[i] != 0 && y[j] != 0)
            out = add(out, p.product(n1, i, n2, j)->value, ring, ring.mul(x[i], y[j]));
      return out;
    };
    int checked = 0;
    for (const auto& a1 : p.degrees)
      for (const auto& a2 : p.degrees)
        for (const auto& a3 : p.degrees) {
          if (!a1.dimension || !a2.dimension || !a3.dimension) continue;
          for (std::size_t i = 0; i < a1.dimension; ++i)
            for (std::size_t j = 0; j < a2.dimension; ++j)
              for (std::size_t k = 0; k < a3.dimension; ++k) {
                auto x = basis_vector(a1.dimension, i), y = basis_vector(a2.dimension, j),
                     z = basis_vector(a3.dimension, k);
                auto xy = mult(a1.degree, x, a2.degree, y);
                auto yz = mult(a2.degree, y, a3.degree, z);
                if (!xy || !yz) continue;
                auto l = mult(a1.degree + a2.degree, *xy, a3.degree, z);
                auto r = mult(a1.degree, x, a2.degree + a3.degree, *yz);
                if (!l || !r) continue;
                EXPECT_EQ(*l, *r);
                ++checked;
              }
        }
    EXPECT_GT(checked, 0);
  }
}

TEST(Ring, ConstantColumnMultipliesAsInA) {
  auto a = load("sphere3_q");
  auto w = make(a, 6, -3, 3);
  HochschildCohomology h(w);
  auto x = h.classify(HochschildCochain::constant(w, basis_vector(2, 1), 3));
  auto one = h.classify(HochschildCochain::constant(w, a.unit(), 0));
  EXPECT_FALSE(std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v == 0; }));
  EXPECT_EQ(one, ring_presentation(h).unit);
}
