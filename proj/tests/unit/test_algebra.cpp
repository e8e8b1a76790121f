#include <gtest/gtest.h>

#include <random>

#include "random_algebra.hpp"
#include "strop/dga/algebra_io.hpp"
#include "strop/dga/simplicial.hpp"
#include "strop/error.hpp"

using namespace strop;
using namespace strop::dga;
using namespace strop::testing;

namespace {

const auto Q = CoefficientRing::rationals();
const auto F2 = CoefficientRing::prime_field(2);

FiniteGradedAlgebra sphere_cochains(const CoefficientRing& ring) {
  return build_cochain_dga(
      load_complex_file(std::string(STROP_DATA_DIR) + "/complexes/sphere2.yaml"), ring);
}

}  // namespace

TEST(Algebra, RejectsBrokenAxioms) {
  std::vector<BasisElement> b{{"1", 0}, {"x", 1}};
  Vector unit{Scalar(1), Scalar(0)};
  std::vector<ProductEntry> ok{{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}};
  EXPECT_NO_THROW(FiniteGradedAlgebra(Q, b, unit, ok, {}));
  // missing right unit action
  EXPECT_THROW(FiniteGradedAlgebra(Q, b, unit, {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}}, {}),
               InvalidAlgebra);
  // degree bookkeeping: x*x would land in degree 2
  auto bad = ok;
  bad.push_back({1, 1, {{0, 1}}});
  EXPECT_THROW(FiniteGradedAlgebra(Q, b, unit, bad, {}), InvalidAlgebra);
  // d must raise degree by one
  EXPECT_THROW(FiniteGradedAlgebra(Q, b, unit, ok, {{{0, 1}}, {}}), InvalidAlgebra);
  // d(1) = x breaks Leibniz
  EXPECT_THROW(FiniteGradedAlgebra(Q, b, unit, ok, {{{1, 1}}, {}}), InvalidAlgebra);
  EXPECT_THROW(FiniteGradedAlgebra(Q, {{"1", 0}, {"1", 0}}, unit, {}, {}), InvalidAlgebra);
  EXPECT_THROW(FiniteGradedAlgebra(CoefficientRing::integers(), b, unit, ok, {}),
               IntegerRingNotSupported);
}

TEST(Algebra, RejectsNonAssociative) {
  // 1, a, b in degree 0 with a*a = b but a*b = 0, b*a = a.
  std::vector<BasisElement> b{{"1", 0}, {"a", 0}, {"b", 0}};
  std::vector<ProductEntry> p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.push_back({0, i, {{i, 1}}});
    if (i) p.push_back({i, 0, {{i, 1}}});
  }
  p.push_back({1, 1, {{2, 1}}});
  p.push_back({2, 1, {{1, 1}}});
  EXPECT_THROW(FiniteGradedAlgebra(Q, b, basis_vector(3, 0), p, {}), InvalidAlgebra);
}

TEST(Algebra, RandomFamiliesAreValid) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto a = random_algebra(rng);
    EXPECT_LE(a.dim(), 4u);
    auto again = parse_algebra(serialize_algebra(a));
    EXPECT_EQ(again, a);
  }
}

TEST(Algebra, WithUnitBasis) {
  auto m = upper_triangular(Q);
  EXPECT_FALSE(m.unit_index());
  auto u = m.with_unit_basis();
  ASSERT_TRUE(u.unit_index());
  EXPECT_EQ(u.name(*u.unit_index()), "1");
  EXPECT_EQ(u.dim(), 3u);
  auto s = sphere_cochains(Q);
  EXPECT_FALSE(s.unit_index());
  EXPECT_TRUE(s.with_unit_basis().unit_index());
}

TEST(Adapt, IdentityWhenFormal) {
  auto a = truncated_polynomial(F2, 3, 2);
  auto ad = adapt(a);
  EXPECT_EQ(ad.algebra, a);
  for (auto r : ad.roles.role) EXPECT_EQ(r, HodgeRole::Harmonic);
}

TEST(Adapt, HodgeDecompositionOfCochains) {
  for (auto ring : {Q, F2}) {
    auto a = sphere_cochains(ring);
    auto ad = adapt(a);
    const auto& b = ad.algebra;
    ASSERT_TRUE(b.unit_index());
    EXPECT_EQ(ad.roles.role[*b.unit_index()], HodgeRole::Harmonic);
    std::vector<std::size_t> harmonic(3);
    for (std::size_t i = 0; i < b.dim(); ++i) {
      if (ad.roles.role[i] == HodgeRole::Harmonic) ++harmonic[static_cast<std::size_t>(b.degree(i))];
      if (ad.roles.role[i] == HodgeRole::Source) {
        ASSERT_EQ(b.differential(i).size(), 1u);
        EXPECT_EQ(b.differential(i)[0].first, ad.roles.partner[i]);
      }
      // the adapted element is the stated vector of the original algebra
      EXPECT_EQ(a.apply_differential(ad.to_original[i]),
                [&] {
                  Vector v(a.dim());
                  for (const auto& [j, c] : b.differential(i))
                    for (std::size_t k = 0; k < a.dim(); ++k)
                      v[k] = ring.add(v[k], ring.mul(c, ad.to_original[j][k]));
                  return v;
                }());
    }
    EXPECT_EQ(harmonic, (std::vector<std::size_t>{1, 0, 1}));
    EXPECT_EQ(cohomology_dimensions(a), harmonic);
  }
}

TEST(Adapt, RandomAlgebrasKeepCohomology) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    auto a = random_algebra(rng);
    auto ad = adapt(a);
    ASSERT_TRUE(hodge_roles(ad.algebra));
    ASSERT_TRUE(ad.algebra.unit_index());
    auto dims = cohomology_dimensions(a);
    std::vector<std::size_t> harmonic(dims.size());
    for (std::size_t i = 0; i < ad.algebra.dim(); ++i)
      if (ad.roles.role[i] == HodgeRole::Harmonic)
        ++harmonic[static_cast<std::size_t>(ad.algebra.degree(i))];
    EXPECT_EQ(harmonic, dims);
  }
}

TEST(AlgebraIo, CanonicalRoundTrip) {
  auto text = serialize_algebra(sphere_cochains(Q));
  auto a = parse_algebra(text);
  EXPECT_EQ(serialize_algebra(a), text);
  EXPECT_EQ(a, sphere_cochains(Q));

  auto f = load_algebra_file(std::string(STROP_DATA_DIR) + "/algebras/sphere2_f2.yaml");
  EXPECT_EQ(f.dim(), 2u);
  EXPECT_EQ(f.ring(), F2);
  EXPECT_TRUE(f.product(1, 1).empty());
  EXPECT_EQ(parse_algebra(serialize_algebra(f)), f);
}

TEST(AlgebraIo, Errors) {
  EXPECT_THROW(parse_algebra("ring: q\nbasis: [[1, 0]]"), ParseError);
  EXPECT_THROW(parse_algebra("ring: q\nbasis: [[1, 0]]\nunit: y"), ParseError);
  EXPECT_THROW(parse_algebra("ring: q\nbasis: [[1, 0], [x, 1]]\nunit: 1\nproducts: [[x, x, [[1, 1]]]]"),
               InvalidAlgebra);
  EXPECT_THROW(parse_algebra("ring: r\nbasis: [[1, 0]]\nunit: 1"), ParseError);
  EXPECT_THROW(parse_algebra("ring: q\nbasis: [[1, 0], [x, 1]]\nunit: 1\nproducts: [[x, x, [[1/0, 1]]]]"),
               Error);
}
