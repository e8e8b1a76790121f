#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strop/dga/simplicial.hpp"
#include "strop/hochschild/cohomology.hpp"

namespace strop::loop {

using dga::FiniteGradedAlgebra;
using linalg::CoefficientRing;
using linalg::Vector;

enum class Source { SimplicialComplex, FormalAlgebra };

// ℍ-degree window [q_min, q_max]; HH is computed in total degrees
// [-q_max, -q_min]. Without max_tensor the smallest saturating S up to
// tensor_cap is used, falling back to fallback_tensor with unsaturated
// degrees flagged (or WindowTooSmall when saturation is required).
struct LoopWindow {
  int q_min = 0;
  int q_max = 0;
  std::optional<std::size_t> max_tensor;
  bool require_saturation = false;
  std::size_t tensor_cap = 16;
  std::size_t fallback_tensor = 4;
};

struct LoopDegree {
  int degree = 0;  // ℍ-degree q, computed as HH^{-q}
  std::size_t dimension = 0;
  bool saturated = false;
  std::vector<std::string> labels;
};

struct LoopProduct {
  int left_degree = 0;
  std::size_t left = 0;
  int right_degree = 0;
  std::size_t right = 0;
  Vector value;
};

struct LoopRingResult {
  Source source = Source::FormalAlgebra;
  CoefficientRing ring = CoefficientRing::rationals();
  int manifold_dimension = 0;
  std::size_t max_tensor = 0;
  std::vector<LoopDegree> degrees;  // ascending q
  std::vector<LoopProduct> products;
  std::vector<std::pair<int, int>> incomplete;  // ℍ-degree pairs
  Vector unit;                                   // coordinates in ℍ_0
  std::vector<std::string> warnings;
  std::shared_ptr<const hochschild::HochschildCohomology> cohomology;
  // Basis of the algebra the window was built on, as vectors of the input algebra.
  std::vector<Vector> adapted_basis;

  const LoopDegree* degree(int q) const;
  const LoopProduct* product(int q1, std::size_t i, int q2, std::size_t j) const;
};

// Smallest S ≤ cap saturating every total degree in [n_min, n_max].
std::optional<std::size_t> saturating_tensor_bound(const FiniteGradedAlgebra& a, int n_min,
                                                   int n_max, std::size_t cap);

// Formality is the caller's assertion: the algebra stands in for C^*(M).
// Non-commutativity, a nonzero differential or a top degree other than a
// line in degree d produce warnings.
LoopRingResult loop_ring_from_formal(const FiniteGradedAlgebra& a, int d, const LoopWindow& window);

// Uses the full cochain algebra of the complex. Throws NotOrientable when no
// fundamental class exists over the ring; warns when H^1 ≠ 0.
LoopRingResult loop_ring_from_complex(const dga::SimplicialComplexData& k, const CoefficientRing& ring,
                                      const LoopWindow& window);

// H^*(A) -> ℍ_* sending a class to its s = 0 Hochschild class. Classes whose
// constant cochain is not a Hochschild cocycle (non-central representatives)
// are skipped and listed. Unitality and multiplicativity are checked in the
// window's cohomology ring.
struct ConstantLoopMap {
  struct Image {
    int cohomology_degree = 0;
    std::string name;
    int loop_degree = 0;
    Vector value;
  };
  std::vector<Image> images;
  std::vector<std::string> skipped;
  bool unital = false;
  bool multiplicative = false;
  std::size_t pairs_checked = 0;
};

ConstantLoopMap constant_loop_map(const LoopRingResult& result);

}  // namespace strop::loop
