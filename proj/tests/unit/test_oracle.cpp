#include <gtest/gtest.h>

#include <random>

#include "random_algebra.hpp"
#include "strop/dga/algebra_io.hpp"
#include "strop/dga/simplicial.hpp"
#include "strop/error.hpp"
#include "strop/hochschild/coface.hpp"
#include "strop/hochschild/oracle.hpp"

using namespace strop;
using namespace strop::hochschild;
using namespace strop::testing;

namespace {

const auto Q = CoefficientRing::rationals();
const auto F2 = CoefficientRing::prime_field(2);

FiniteGradedAlgebra load(const std::string& name) {
  return dga::load_algebra_file(std::string(STROP_DATA_DIR) + "/algebras/" + name + ".yaml");
}

Vector random_vector(std::mt19937_64& rng, std::size_t n, const CoefficientRing& ring) {
  Vector v(n);
  for (auto& x : v) x = random_scalar(rng, ring);
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

}  // namespace

TEST(Oracle, SelfConsistency) {
  std::mt19937_64 rng(21);
  for (auto a : {load("dual_numbers_f2"), load("sphere2_f2"), load("sphere3_q"),
                 quantum_exterior(Q, 1, 2, Scalar(3)), truncated_polynomial(F2, 3, 2)}) {
    DenseHochschildOracle o(a, 3);
    const auto& ring = a.ring();
    std::vector<std::pair<int, int>> bideg;
    for (int n = -8; n <= 8; ++n)
      for (auto b : o.bidegrees(n)) bideg.push_back(b);
    for (auto [s, t] : bideg) {
      auto f = random_vector(rng, o.cells(s, t).size(), ring);
      if (static_cast<std::size_t>(s) + 2 <= o.max_length() + 1)
        EXPECT_TRUE(is_zero(o.differential(s + 1, t, o.differential(s, t, f))));
    }
    for (int k = 0; k < 40; ++k) {
      auto [s1, t1] = bideg[rng() % bideg.size()];
      auto [s2, t2] = bideg[rng() % bideg.size()];
      auto [s3, t3] = bideg[rng() % bideg.size()];
      if (s1 + s2 + s3 + 1 > static_cast<int>(o.max_length()) + 1) continue;
      auto f = random_vector(rng, o.cells(s1, t1).size(), ring);
      auto g = random_vector(rng, o.cells(s2, t2).size(), ring);
      auto h = random_vector(rng, o.cells(s3, t3).size(), ring);
      EXPECT_EQ(o.cup(s1 + s2, t1 + t2, o.cup(s1, t1, f, s2, t2, g), s3, t3, h),
                o.cup(s1, t1, f, s2 + s3, t2 + t3, o.cup(s2, t2, g, s3, t3, h)));
      // bigraded Leibniz: δ(f g) = δf g + (-1)^{s_f} f δg
      auto lhs = o.differential(s1 + s2, t1 + t2, o.cup(s1, t1, f, s2, t2, g));
      auto r1 = o.cup(s1 + 1, t1, o.differential(s1, t1, f), s2, t2, g);
      auto r2 = o.cup(s1, t1, f, s2 + 1, t2, o.differential(s2, t2, g));
      const Scalar sign = s1 % 2 ? -1 : 1;
      for (std::size_t i = 0; i < lhs.size(); ++i)
        EXPECT_EQ(lhs[i], ring.add(r1[i], ring.mul(sign, r2[i])));
    }
  }
}

TEST(Oracle, DualNumbersInCharacteristicTwo) {
  // d(e²) = 2e vanishes, so every HH^s of F2[e]/(e²) is two-dimensional
  DenseHochschildOracle o(load("dual_numbers_f2"), 5);
  for (int s = 0; s <= 5; ++s) EXPECT_EQ(o.dimension(s, 0), 2u) << s;
  DenseHochschildOracle oq(truncated_polynomial(Q, 2, 0), 4);
  EXPECT_EQ(oq.dimension(0, 0), 2u);
  for (int s = 1; s <= 4; ++s) EXPECT_EQ(oq.dimension(s, 0), 1u) << s;
}

TEST(Oracle, Errors) {
  EXPECT_THROW(DenseHochschildOracle(square_zero_with_d(Q, 1, Scalar(1)), 2), InvalidArgument);
  EXPECT_THROW(DenseHochschildOracle(quantum_exterior(Q, 1, 2, Scalar(1)), 12, 1000), OracleScaleExceeded);
}

TEST(Oracle, MatchesPipeline) {
  struct Case {
    std::string algebra;
    int lo, hi;
    std::size_t length;
  };
  for (const auto& c : {Case{"dual_numbers_f2", 0, 5, 6}, Case{"sphere2_f2", -2, 6, 5},
                        Case{"sphere3_q", -2, 6, 3}, Case{"sphere2_q", -2, 4, 5}}) {
    auto r = compare_with_oracle(load(c.algebra), c.lo, c.hi, c.length);
    EXPECT_TRUE(r.passed()) << c.algebra << " " << r.note;
    for (const auto& row : r.rows) {
      EXPECT_TRUE(row.compared) << c.algebra << " degree " << row.degree;
      EXPECT_EQ(row.pipeline, row.oracle) << c.algebra << " degree " << row.degree;
    }
    EXPECT_GT(r.products_checked, 0u);
  }
}

TEST(Oracle, NoncommutativeAlgebras) {
  for (auto a : {quantum_exterior(Q, 1, 1, Scalar(2)), quantum_exterior(CoefficientRing::prime_field(5), 1, 2, Scalar(3))}) {
    auto r = compare_with_oracle(a, -2, 2, 4);
    EXPECT_EQ(r.product_mismatches, 0u);
    EXPECT_FALSE(r.first_difference);
  }
}

TEST(Oracle, FaultIsLocated) {
  auto r = compare_with_oracle(load("sphere3_q"), -2, 6, 3, true);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.first_difference);
  EXPECT_GE(*r.first_difference, -2);
  EXPECT_LE(*r.first_difference, 6);
  auto honest = compare_with_oracle(load("sphere3_q"), -2, 6, 3, false);
  EXPECT_TRUE(honest.passed());
}

TEST(Coface, AgreesWithBarFormula) {
  std::mt19937_64 rng(22);
  std::vector<std::pair<FiniteGradedAlgebra, bool>> cases;
  for (int t = 0; t < 20; ++t) {
    auto a = random_algebra(rng);
    cases.emplace_back(a, a.unit_index().has_value() && rng() % 2);
  }
  auto s2 = dga::build_cochain_dga(
      dga::load_complex_file(std::string(STROP_DATA_DIR) + "/complexes/sphere2.yaml"), Q);
  cases.emplace_back(dga::adapt(s2).algebra, true);
  cases.emplace_back(s2, false);
  for (const auto& [a, normalized] : cases) {
    WindowSpec spec{3, -2, 2, normalized, false, false};
    if (a.dim() > 6) spec.max_tensor = 2;
    auto w = HochschildWindow::build(a, spec);
    for (int n = w->stored_min(); n < w->stored_max(); ++n) {
      auto cm = coface_matrices(*w, n);
      EXPECT_EQ(cm.assembled, w->differential_matrix(n)) << "degree " << n;
      EXPECT_EQ(cm.cofaces.size(), spec.max_tensor + 1);
    }
  }
}
