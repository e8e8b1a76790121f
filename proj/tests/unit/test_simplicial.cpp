#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <random>

#include "dense_rank.hpp"
#include "strop/dga/simplicial.hpp"
#include "strop/error.hpp"
#include "strop/linalg/elimination.hpp"

using namespace strop;
using namespace strop::dga;
using strop::testing::dense_rank;

namespace {

const auto Q = CoefficientRing::rationals();
const auto F2 = CoefficientRing::prime_field(2);
const auto F3 = CoefficientRing::prime_field(3);
const auto Z = CoefficientRing::integers();

std::shared_ptr<const SimplicialComplexData> bundled(const std::string& name) {
  return std::make_shared<const SimplicialComplexData>(
      load_complex_file(std::string(STROP_DATA_DIR) + "/complexes/" + name + ".yaml"));
}

const std::vector<std::string> kBundled{"point", "circle", "sphere2", "rp2", "sphere3"};

// Dense coboundary written out from the alternating face formula.
std::vector<std::vector<Scalar>> dense_delta(const SimplicialComplexData& k, int p) {
  const auto& rows = k.simplices(p + 1);
  const auto& cols = k.simplices(p);
  std::vector<std::vector<Scalar>> m(rows.size(), std::vector<Scalar>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      Simplex face = rows[r];
      face.erase(face.begin() + static_cast<long>(i));
      auto c = std::find(cols.begin(), cols.end(), face) - cols.begin();
      m[r][static_cast<std::size_t>(c)] += (i % 2 ? -1 : 1);
    }
  return m;
}

Cochain random_cochain(std::shared_ptr<const SimplicialComplexData> k, const CoefficientRing& ring,
                       int degree, std::mt19937_64& rng) {
  auto c = Cochain::zero(std::move(k), ring, degree);
  for (auto& x : c.coefficients) x = ring.normalize(Scalar(static_cast<long>(rng() % 5) - 2));
  return c;
}

Cochain basis_cochain(std::shared_ptr<const SimplicialComplexData> k, const CoefficientRing& ring,
                      int degree, std::size_t i) {
  auto c = Cochain::zero(std::move(k), ring, degree);
  c.coefficients[i] = 1;
  return c;
}

Cochain add(const Cochain& a, const Cochain& b, const Scalar& f = 1) {
  Cochain out = a;
  for (std::size_t i = 0; i < out.coefficients.size(); ++i)
    out.coefficients[i] = a.ring.add(a.coefficients[i], a.ring.mul(f, b.coefficients[i]));
  return out;
}

// H^1(RP^2; F2) generator found by enumerating all 1-cochains.
Cochain rp2_alpha(const std::shared_ptr<const SimplicialComplexData>& k) {
  const auto& edges = k->simplices(1);
  auto d1 = dense_delta(*k, 1);
  auto d0 = dense_delta(*k, 0);
  std::vector<std::uint32_t> coboundaries;
  for (std::uint32_t v = 0; v < (1u << k->simplices(0).size()); ++v) {
    std::uint32_t img = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      long s = 0;
      for (std::size_t x = 0; x < d0[e].size(); ++x)
        if (v >> x & 1) s += d0[e][x].get_num().get_si();
      if (s % 2) img |= 1u << e;
    }
    coboundaries.push_back(img);
  }
  for (std::uint32_t a = 1; a < (1u << edges.size()); ++a) {
    bool cocycle = true;
    for (const auto& row : d1) {
      long s = 0;
      for (std::size_t e = 0; e < row.size(); ++e)
        if (a >> e & 1) s += row[e].get_num().get_si();
      if (s % 2) cocycle = false;
    }
    if (!cocycle || std::count(coboundaries.begin(), coboundaries.end(), a)) continue;
    auto c = Cochain::zero(k, F2, 1);
    for (std::size_t e = 0; e < edges.size(); ++e) c.coefficients[e] = (a >> e) & 1;
    return c;
  }
  throw std::logic_error("no H^1 class found");
}

}  // namespace

TEST(LoadComplex, SpecExamples) {
  auto circle = load_complex("vertices: 3\nfacets: [[0,1],[1,2],[0,2]]");
  EXPECT_EQ(circle.simplices(0).size(), 3u);
  EXPECT_EQ(circle.simplices(1).size(), 3u);
  EXPECT_EQ(circle.simplex_count(), 6u);
  auto s2 = load_complex("vertices: 4\nfacets: [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]");
  EXPECT_EQ(s2.simplex_count(), 14u);
  EXPECT_THROW(load_complex("vertices: 3\nfacets: [[0,0,1]]"), NonSimplicialInput);
}

TEST(LoadComplex, MalformedInput) {
  EXPECT_THROW(load_complex("vertices: [\n"), ParseError);
  EXPECT_THROW(load_complex("facets: [[0]]"), ParseError);
  EXPECT_THROW(load_complex("vertices: 2\nfacets: [[0, x]]"), ParseError);
  EXPECT_THROW(load_complex("vertices: 2\nfacets: [[0, 2]]"), NonSimplicialInput);
  EXPECT_THROW(load_complex("vertices: 2\nfacets: [[0, 1], [1, 0]]"), NonSimplicialInput);
}

TEST(LoadComplex, FaceClosedAndSorted) {
  for (const auto& name : kBundled) {
    auto k = bundled(name);
    for (int d = 0; d <= k->dimension(); ++d) {
      const auto& level = k->simplices(d);
      EXPECT_TRUE(std::is_sorted(level.begin(), level.end()));
      for (const auto& s : level) {
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
        EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
        if (d == 0) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex f = s;
          f.erase(f.begin() + static_cast<long>(i));
          EXPECT_TRUE(k->index_of(f).has_value());
        }
      }
    }
  }
}

TEST(Coboundary, SpecExamples) {
  auto circle = bundled("circle");
  EXPECT_TRUE(coboundary(Cochain::unit(circle, Q)).is_zero());
  // δ1_{v0}([0,1]) = 1_{v0}(1) - 1_{v0}(0) = -1, likewise on [0,2]; [1,2] misses v0.
  auto d = coboundary(basis_cochain(circle, Q, 0, 0));
  EXPECT_EQ(d.coefficients, (Vector{Scalar(-1), Scalar(-1), Scalar(0)}));
  auto top = random_cochain(circle, Q, 1, *std::make_unique<std::mt19937_64>(1));
  EXPECT_TRUE(coboundary(top).is_zero());
}

TEST(Coboundary, SquaresToZeroAndMatchesFormula) {
  std::mt19937_64 rng(2);
  for (const auto& name : kBundled) {
    auto k = bundled(name);
    for (auto ring : {Q, F2, F3})
      for (int p = 0; p <= k->dimension(); ++p) {
        EXPECT_EQ(coboundary_matrix(*k, p, ring).to_dense(),
                  linalg::SparseMatrix::from_dense(dense_delta(*k, p), ring).to_dense());
        for (int t = 0; t < 5; ++t)
          EXPECT_TRUE(coboundary(coboundary(random_cochain(k, ring, p, rng))).is_zero());
      }
  }
}

TEST(Cup, SpecExamples) {
  std::mt19937_64 rng(3);
  auto s2 = bundled("sphere2");
  for (int p = 0; p <= 2; ++p) {
    auto b = random_cochain(s2, Q, p, rng);
    EXPECT_EQ(cup_product(Cochain::unit(s2, Q), b).coefficients, b.coefficients);
    EXPECT_EQ(cup_product(b, Cochain::unit(s2, Q)).coefficients, b.coefficients);
  }
  auto circle = bundled("circle");
  auto ab = cup_product(random_cochain(circle, Q, 1, rng), random_cochain(circle, Q, 1, rng));
  EXPECT_EQ(ab.degree, 2);
  EXPECT_TRUE(ab.coefficients.empty());

  auto rp2 = bundled("rp2");
  auto alpha = rp2_alpha(rp2);
  auto aa = cup_product(alpha, alpha);
  Scalar pairing = 0;
  for (const auto& x : aa.coefficients) pairing += x;  // fundamental cycle = all ones over F2
  EXPECT_EQ(F2.normalize(pairing), 1);
}

TEST(Cup, MismatchedComplex) {
  auto a = Cochain::unit(bundled("circle"), Q);
  auto b = Cochain::unit(bundled("sphere2"), Q);
  EXPECT_THROW(cup_product(a, b), MismatchedComplex);
  EXPECT_THROW(cup_product(a, Cochain::unit(bundled("circle"), F2)), MismatchedComplex);
}

TEST(Cup, ExhaustiveAssociativityOnSmallComplexes) {
  for (const auto& name : {"circle", "sphere2"}) {
    auto k = bundled(name);
    ASSERT_LE(k->simplex_count(), 20u);
    for (int p = 0; p <= k->dimension(); ++p)
      for (int q = 0; p + q <= k->dimension(); ++q)
        for (int r = 0; p + q + r <= k->dimension(); ++r)
          for (std::size_t i = 0; i < k->simplices(p).size(); ++i)
            for (std::size_t j = 0; j < k->simplices(q).size(); ++j)
              for (std::size_t l = 0; l < k->simplices(r).size(); ++l) {
                auto a = basis_cochain(k, Q, p, i), b = basis_cochain(k, Q, q, j),
                     c = basis_cochain(k, Q, r, l);
                EXPECT_EQ(cup_product(cup_product(a, b), c).coefficients,
                          cup_product(a, cup_product(b, c)).coefficients);
              }
  }
}

TEST(Cup, RandomAssociativityAndLeibniz) {
  std::mt19937_64 rng(4);
  for (const auto& name : {"rp2", "sphere3"}) {
    auto k = bundled(name);
    const int d = k->dimension();
    for (auto ring : {Q, F2, F3})
      for (int t = 0; t < 30; ++t) {
        int p = static_cast<int>(rng() % (d + 1));
        int q = static_cast<int>(rng() % (d + 1 - p));
        auto a = random_cochain(k, ring, p, rng), b = random_cochain(k, ring, q, rng);
        if (p + q < d) {
          auto lhs = coboundary(cup_product(a, b));
          auto rhs = add(cup_product(coboundary(a), b), cup_product(a, coboundary(b)),
                         p % 2 ? -1 : 1);
          EXPECT_EQ(lhs.coefficients, rhs.coefficients);
        }
        int r = static_cast<int>(rng() % (d + 1 - p - q));
        auto c = random_cochain(k, ring, r, rng);
        EXPECT_EQ(cup_product(cup_product(a, b), c).coefficients,
                  cup_product(a, cup_product(b, c)).coefficients);
      }
  }
}

TEST(CochainDga, SpecExamples) {
  auto point = build_cochain_dga(*bundled("point"), Q);
  EXPECT_EQ(point.dim(), 1u);
  EXPECT_EQ(point.unit_index(), std::optional<std::size_t>(0));
  EXPECT_EQ(build_cochain_dga(*bundled("circle"), F2).dim(), 6u);
  auto s2 = build_cochain_dga(*bundled("sphere2"), Q);
  EXPECT_EQ(s2.dim(), 14u);
  EXPECT_FALSE(s2.has_zero_differential());
  EXPECT_THROW(build_cochain_dga(*bundled("circle"), Z), IntegerRingNotSupported);
}

TEST(CohomologyRing, SpecExamples) {
  auto s2 = *bundled("sphere2");
  // Oracle: dim H^p = n_p - rank δ_p - rank δ_{p-1} with dense elimination.
  std::vector<std::size_t> oracle;
  std::size_t prev = 0;
  for (int p = 0; p <= 2; ++p) {
    auto r = dense_rank(dense_delta(s2, p), Q);
    oracle.push_back(s2.simplices(p).size() - r - prev);
    prev = r;
  }
  EXPECT_EQ(oracle, (std::vector<std::size_t>{1, 0, 1}));
  auto h = cohomology_ring(s2, Q);
  std::vector<std::size_t> dims(3);
  for (const auto& b : h.basis()) ++dims[static_cast<std::size_t>(b.degree)];
  EXPECT_EQ(dims, oracle);
  EXPECT_TRUE(h.has_zero_differential());

  auto rp2 = cohomology_ring(*bundled("rp2"), F2);
  ASSERT_EQ(rp2.dim(), 3u);
  EXPECT_EQ(rp2.in_degree(1).size(), 1u);
  auto a = rp2.in_degree(1)[0];
  EXPECT_FALSE(rp2.product(a, a).empty());

  auto point = cohomology_ring(*bundled("point"), F2);
  EXPECT_EQ(point.dim(), 1u);
}

TEST(CohomologyRing, GradedCommutative) {
  for (const auto& name : kBundled)
    for (auto ring : {Q, F2, F3})
      EXPECT_TRUE(cohomology_ring(*bundled(name), ring).is_graded_commutative()) << name;
}

TEST(Betti, EulerCharacteristic) {
  for (const auto& name : kBundled) {
    auto k = bundled(name);
    for (auto ring : {Q, F2, F3}) {
      auto b = betti_numbers(*k, ring);
      long chi_b = 0, chi_s = 0;
      for (std::size_t p = 0; p < b.size(); ++p) {
        chi_b += (p % 2 ? -1 : 1) * static_cast<long>(b[p]);
        chi_s += (p % 2 ? -1 : 1) * static_cast<long>(k->simplices(static_cast<int>(p)).size());
      }
      EXPECT_EQ(chi_b, chi_s) << name;
    }
  }
  EXPECT_EQ(betti_numbers(*bundled("rp2"), Q), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(betti_numbers(*bundled("rp2"), F2), (std::vector<std::size_t>{1, 1, 1}));
}

TEST(FundamentalClass, SpecExamples) {
  auto s2 = bundled("sphere2");
  auto m = fundamental_class(*s2, Z);
  // Oracle: every ±1 sign pattern solving the 6x4 boundary system.
  auto d = dense_delta(*s2, 1);
  std::vector<Vector> solutions;
  for (int mask = 0; mask < 16; ++mask) {
    Vector c(4);
    for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = (mask >> i & 1) ? -1 : 1;
    bool cycle = true;
    for (std::size_t e = 0; e < 6; ++e) {
      Scalar s = 0;
      for (std::size_t t = 0; t < 4; ++t) s += d[t][e] * c[t];
      if (s != 0) cycle = false;
    }
    if (cycle) solutions.push_back(c);
  }
  ASSERT_EQ(solutions.size(), 2u);
  EXPECT_TRUE(m == solutions[0] || m == solutions[1]);
  EXPECT_NE(m[0], m[1]);  // alternating

  auto rp2 = bundled("rp2");
  EXPECT_EQ(fundamental_class(*rp2, F2), Vector(10, Scalar(1)));
  EXPECT_THROW(fundamental_class(*rp2, Q), NotOrientable);
  EXPECT_THROW(fundamental_class(*rp2, F3), NotOrientable);
  EXPECT_THROW(fundamental_class(load_complex("vertices: 4\nfacets: [[0,1,2],[2,3]]"), Q),
               NotPure);
  EXPECT_THROW(fundamental_class(load_complex("vertices: 3\nfacets: [[0,1,2]]"), Q),
               NotOrientable);
}

TEST(FundamentalClass, RP2HasNoSignedCycle) {
  auto rp2 = bundled("rp2");
  auto d = dense_delta(*rp2, 1);
  for (int mask = 0; mask < 1024; ++mask) {
    bool cycle = true;
    for (std::size_t e = 0; e < d[0].size() && cycle; ++e) {
      Scalar s = 0;
      for (std::size_t t = 0; t < 10; ++t) s += d[t][e] * ((mask >> t & 1) ? -1 : 1);
      if (s != 0) cycle = false;
    }
    EXPECT_FALSE(cycle);
  }
}

TEST(Intersection, SpecExamples) {
  auto s2 = bundled("sphere2");
  HomologyClass m{2, fundamental_class(*s2, Q)};
  auto mm = intersection_product(m, m, *s2, Q);
  EXPECT_TRUE(homologous(*s2, Q, mm, m));

  HomologyClass pt{0, Vector{Scalar(1), Scalar(0), Scalar(0), Scalar(0)}};
  auto pp = intersection_product(pt, pt, *s2, Q);
  EXPECT_EQ(pp.degree, -2);
  EXPECT_TRUE(pp.cycle.empty());
  EXPECT_TRUE(homologous(*s2, Q, intersection_product(m, pt, *s2, Q), pt));

  // RP^2 over F2: the 1-cycle 0-1-2-4-0 is not a boundary, and two such lines meet in a point.
  auto rp2 = bundled("rp2");
  HomologyClass line{1, Vector(rp2->simplices(1).size())};
  for (Simplex e : {Simplex{0, 1}, Simplex{1, 2}, Simplex{2, 4}, Simplex{0, 4}})
    line.cycle[*rp2->index_of(e)] = 1;
  ASSERT_TRUE(is_cycle(*rp2, F2, line));
  HomologyClass zero1{1, Vector(line.cycle.size())};
  ASSERT_FALSE(homologous(*rp2, F2, line, zero1));
  auto ll = intersection_product(line, line, *rp2, F2);
  HomologyClass point{0, Vector(6)};
  point.cycle[0] = 1;
  EXPECT_EQ(ll.degree, 0);
  EXPECT_TRUE(homologous(*rp2, F2, ll, point));
  EXPECT_THROW(intersection_product(line, line, *rp2, Q), NotOrientable);
}

TEST(Intersection, AssociativeAndUnital) {
  struct Case {
    std::string name;
    CoefficientRing ring;
  };
  for (const auto& c : {Case{"sphere2", Q}, Case{"rp2", F2}, Case{"sphere3", F3}}) {
    auto k = bundled(c.name);
    const int d = k->dimension();
    HomologyClass m{d, fundamental_class(*k, c.ring)};
    // Homology generators: cocycles of the transposed boundary, i.e. cycles.
    std::vector<HomologyClass> gens;
    for (int q = 0; q <= d; ++q) {
      auto bd = q == 0 ? linalg::SparseMatrix(0, k->simplices(0).size())
                       : coboundary_matrix(*k, q - 1, c.ring).transpose();
      auto cycles = linalg::kernel_basis(bd, c.ring);
      for (std::size_t i = 0; i < std::min<std::size_t>(2, cycles.size()); ++i)
        gens.push_back(HomologyClass{q, cycles[i]});
    }
    for (const auto& a : gens) {
      EXPECT_TRUE(homologous(*k, c.ring, intersection_product(m, a, *k, c.ring), a));
      EXPECT_TRUE(homologous(*k, c.ring, intersection_product(a, m, *k, c.ring), a));
    }
    for (const auto& a : gens)
      for (const auto& b : gens)
        for (const auto& x : gens) {
          if (a.degree + b.degree + x.degree < 2 * d) continue;
          auto l = intersection_product(intersection_product(a, b, *k, c.ring), x, *k, c.ring);
          auto r = intersection_product(a, intersection_product(b, x, *k, c.ring), *k, c.ring);
          EXPECT_TRUE(homologous(*k, c.ring, l, r));
        }
  }
}
