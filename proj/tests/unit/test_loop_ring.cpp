#include <gtest/gtest.h>

#include "strop/dga/algebra_io.hpp"
#include "strop/error.hpp"
#include "strop/hochschild/oracle.hpp"
#include "strop/loop/loop_ring.hpp"

using namespace strop;
using namespace strop::loop;

namespace {

const auto Q = CoefficientRing::rationals();
const auto F2 = CoefficientRing::prime_field(2);

FiniteGradedAlgebra algebra(const std::string& name) {
  return dga::load_algebra_file(std::string(STROP_DATA_DIR) + "/algebras/" + name + ".yaml");
}

dga::SimplicialComplexData complex(const std::string& name) {
  return dga::load_complex_file(std::string(STROP_DATA_DIR) + "/complexes/" + name + ".yaml");
}

LoopWindow window(int lo, int hi, std::optional<std::size_t> S = std::nullopt) {
  LoopWindow w;
  w.q_min = lo;
  w.q_max = hi;
  w.max_tensor = S;
  return w;
}

}  // namespace

TEST(LoopRing, Point) {
  for (auto r : {loop_ring_from_formal(algebra("point"), 0, window(-3, 3)),
                 loop_ring_from_complex(complex("point"), Q, window(-3, 3))}) {
    for (const auto& d : r.degrees) EXPECT_EQ(d.dimension, d.degree == 0 ? 1u : 0u);
    EXPECT_EQ(r.unit, (Vector{1}));
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(LoopRing, ReindexingAndUnit) {
  auto r = loop_ring_from_formal(algebra("sphere2_f2"), 2, window(-2, 6));
  const auto& h = *r.cohomology;
  for (const auto& d : r.degrees) {
    EXPECT_EQ(d.dimension, h.dimension(-d.degree));
    EXPECT_TRUE(d.saturated);
  }
  ASSERT_FALSE(r.unit.empty());
  EXPECT_EQ(r.unit.size(), r.degree(0)->dimension);
}

TEST(LoopRing, FormalSphereMatchesOracle) {
  // ℍ-degrees [-2, 6] are HH total degrees [-6, 2]
  auto r = loop_ring_from_formal(algebra("sphere2_f2"), 2, window(-2, 6));
  auto cmp = hochschild::compare_with_oracle(algebra("sphere2_f2"), -6, 2, 9);
  EXPECT_TRUE(cmp.passed()) << cmp.note;
  for (const auto& row : cmp.rows) {
    ASSERT_TRUE(row.compared);
    EXPECT_EQ(r.degree(-row.degree)->dimension, row.oracle);
  }
  // known answer: H_{*+2}(LS²; F2) has ranks 1, 1, 2, 2, ...
  std::vector<std::size_t> dims;
  for (const auto& d : r.degrees) dims.push_back(d.dimension);
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 1, 2, 2, 2, 2, 2, 2, 2}));
}

TEST(LoopRing, ComplexAgreesWithFormal) {
  struct Case {
    std::string complex, algebra;
    CoefficientRing ring;
    int d;
  };
  for (const auto& c : {Case{"sphere2", "sphere2_f2", F2, 2}, Case{"sphere2", "sphere2_q", Q, 2},
                        Case{"sphere3", "sphere3_f2", F2, 3}, Case{"sphere3", "sphere3_q", Q, 3}}) {
    auto a = loop_ring_from_complex(complex(c.complex), c.ring, window(-2, 2));
    auto b = loop_ring_from_formal(algebra(c.algebra), c.d, window(-2, 2));
    EXPECT_EQ(a.manifold_dimension, c.d);
    for (int q = -2; q <= 2; ++q) {
      ASSERT_TRUE(a.degree(q)->saturated && b.degree(q)->saturated);
      EXPECT_EQ(a.degree(q)->dimension, b.degree(q)->dimension) << c.complex << " " << q;
    }
    EXPECT_TRUE(a.warnings.empty());
  }
}

TEST(LoopRing, Errors) {
  EXPECT_THROW(loop_ring_from_complex(complex("rp2"), Q, window(-1, 1)), NotOrientable);
  auto r = loop_ring_from_complex(complex("circle"), Q, window(-1, 1));
  EXPECT_FALSE(r.warnings.empty());
  auto lw = window(-2, 2);
  lw.require_saturation = true;
  EXPECT_THROW(loop_ring_from_formal(algebra("rp2_f2"), 2, lw), WindowTooSmall);
  EXPECT_THROW(loop_ring_from_formal(algebra("sphere2_f2"), 2, window(3, 1)), InvalidArgument);
  auto short_s = loop_ring_from_formal(algebra("sphere2_f2"), 2, window(-2, 8, 2));
  EXPECT_FALSE(short_s.degree(8)->saturated);
  EXPECT_FALSE(short_s.warnings.empty());
}

TEST(LoopRing, ModelIndependenceAtShortTensorLengths) {
  // every tensor length up to 4, compared where both windows are saturated
  auto k = complex("sphere2");
  auto f = algebra("sphere2_f2");
  std::size_t compared = 0;
  for (std::size_t S = 1; S <= 4; ++S) {
    auto a = loop_ring_from_complex(k, F2, window(-4, 4, S));
    auto b = loop_ring_from_formal(f, 2, window(-4, 4, S));
    for (int q = -4; q <= 4; ++q) {
      if (!a.degree(q)->saturated || !b.degree(q)->saturated) continue;
      EXPECT_EQ(a.degree(q)->dimension, b.degree(q)->dimension) << "S=" << S << " q=" << q;
      ++compared;
    }
  }
  EXPECT_GT(compared, 4u);
}

TEST(LoopRing, TableIsUnitalAndAssociative) {
  auto r = loop_ring_from_formal(algebra("sphere3_q"), 3, window(-3, 4));
  const auto& ring = r.ring;
  auto mult = [&](int q1, const Vector& x, int q2, const Vector& y) -> std::optional<Vector> {
    const auto* c = r.degree(q1 + q2);
    if (!c) return std::nullopt;
    Vector out(c->dimension);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (x[i] == 0 || y[j] == 0) continue;
        const auto* p = r.product(q1, i, q2, j);
        if (!p) return std::nullopt;
        for (std::size_t k = 0; k < out.size(); ++k)
          out[k] = ring.add(out[k], ring.mul(ring.mul(x[i], y[j]), p->value[k]));
      }
    return out;
  };
  int checked = 0;
  for (const auto& a : r.degrees)
    for (std::size_t i = 0; i < a.dimension; ++i) {
      Vector x(a.dimension);
      x[i] = 1;
      EXPECT_EQ(mult(0, r.unit, a.degree, x), x);
      EXPECT_EQ(mult(a.degree, x, 0, r.unit), x);
      for (const auto& b : r.degrees)
        for (std::size_t j = 0; j < b.dimension; ++j)
          for (const auto& c : r.degrees)
            for (std::size_t k = 0; k < c.dimension; ++k) {
              Vector y(b.dimension), z(c.dimension);
              y[j] = 1;
              z[k] = 1;
              auto xy = mult(a.degree, x, b.degree, y), yz = mult(b.degree, y, c.degree, z);
              if (!xy || !yz) continue;
              auto l = mult(a.degree + b.degree, *xy, c.degree, z);
              auto rr = mult(a.degree, x, b.degree + c.degree, *yz);
              if (!l || !rr) continue;
              EXPECT_EQ(*l, *rr);
              ++checked;
            }
    }
  EXPECT_GT(checked, 10);
}

TEST(ConstantLoopMap, FormalSphere) {
  auto r = loop_ring_from_formal(algebra("sphere2_f2"), 2, window(-2, 6));
  auto m = constant_loop_map(r);
  EXPECT_TRUE(m.unital);
  EXPECT_TRUE(m.multiplicative);
  EXPECT_TRUE(m.skipped.empty());
  ASSERT_EQ(m.images.size(), 2u);
  EXPECT_EQ(m.images[1].name, "x");
  EXPECT_EQ(m.images[1].loop_degree, -2);
  EXPECT_GT(m.pairs_checked, 0u);
}

TEST(ConstantLoopMap, ProjectivePlane) {
  auto r = loop_ring_from_formal(algebra("rp2_f2"), 2, window(-2, 0));
  auto m = constant_loop_map(r);
  EXPECT_EQ(m.images.size(), 3u);
  EXPECT_TRUE(m.unital);
  EXPECT_TRUE(m.multiplicative);
  EXPECT_EQ(m.pairs_checked, 6u);  // every pair of classes whose degrees fit
  EXPECT_FALSE(r.warnings.empty());
}

TEST(ConstantLoopMap, CochainModel) {
  auto r = loop_ring_from_complex(complex("sphere2"), F2, window(-2, 2));
  auto m = constant_loop_map(r);
  EXPECT_TRUE(m.unital);
  EXPECT_TRUE(m.multiplicative);
}
