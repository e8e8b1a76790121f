#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strop/dga/algebra.hpp"

namespace strop::dga {

using Simplex = std::vector<std::uint32_t>;  // strictly increasing vertices

// Face-closed simplicial complex. Simplices of each dimension are sorted
// lexicographically; that order indexes cochains and the cochain algebra.
class SimplicialComplexData {
 public:
  // Throws NonSimplicialInput on repeated vertices inside a facet, empty or
  // duplicate facets and out-of-range vertex indices.
  SimplicialComplexData(std::size_t vertex_count, std::vector<Simplex> facets);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Simplex>& facets() const noexcept { return facets_; }
  int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
  const std::vector<Simplex>& simplices(int dim) const;
  std::size_t simplex_count() const noexcept;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  // Every facet has the top dimension.
  bool is_pure() const noexcept;

  friend bool operator==(const SimplicialComplexData& a, const SimplicialComplexData& b) {
    return a.vertex_count_ == b.vertex_count_ && a.simplices_ == b.simplices_;
  }

 private:
  std::size_t vertex_count_;
  std::vector<Simplex> facets_;
  std::vector<std::vector<Simplex>> simplices_;
};

// `vertices: n` and `facets: [[...], ...]`.
SimplicialComplexData load_complex(std::string_view text);
SimplicialComplexData load_complex_file(const std::filesystem::path& path);

// Cochain of one degree; coefficients are indexed like complex->simplices(degree).
struct Cochain {
  std::shared_ptr<const SimplicialComplexData> complex;
  CoefficientRing ring;
  int degree = 0;
  Vector coefficients;

  static Cochain zero(std::shared_ptr<const SimplicialComplexData> k, CoefficientRing ring,
                      int degree);
  // Constant 1 on vertices.
  static Cochain unit(std::shared_ptr<const SimplicialComplexData> k, CoefficientRing ring);
  Scalar operator()(const Simplex& s) const;
  bool is_zero() const;
};

// (δφ)(v0..vp+1) = Σ (-1)^i φ(v0..v̂i..vp+1)
Cochain coboundary(const Cochain& c);
// (φ∪ψ)(v0..vp+q) = φ(v0..vp) ψ(vp..vp+q); throws MismatchedComplex.
Cochain cup_product(const Cochain& a, const Cochain& b);

// Matrix of δ: C^p -> C^{p+1}. Its transpose is the boundary ∂: C_{p+1} -> C_p.
SparseMatrix coboundary_matrix(const SimplicialComplexData& k, int p, const CoefficientRing& ring);

// Basis element names in the cochain algebra: "s0_1_2" for the dual of [0,1,2].
std::string simplex_name(const Simplex& s);

// Cochain algebra: basis = duals of simplices (by dimension, then
// lexicographic), product = cup, differential = coboundary.
FiniteGradedAlgebra build_cochain_dga(const SimplicialComplexData& k, const CoefficientRing& ring);

FiniteGradedAlgebra cohomology_ring(const SimplicialComplexData& k, const CoefficientRing& ring);
std::vector<std::size_t> betti_numbers(const SimplicialComplexData& k, const CoefficientRing& ring);

// ±1 combination of the top simplices forming a cycle (all ones over F2).
// Throws NotPure or NotOrientable. Works over Z as well as fields.
Vector fundamental_class(const SimplicialComplexData& k, const CoefficientRing& ring);

struct HomologyClass {
  int degree = 0;
  Vector cycle;  // indexed like simplices(degree); empty when degree is out of range
};

// σ ⌢ φ = φ(front p-face of σ) · (back face of σ), extended linearly.
Vector cap_product(const SimplicialComplexData& k, const CoefficientRing& ring, int chain_degree,
                   const Vector& chain, const Cochain& phi);

// a • b = [M] ⌢ (α ∪ β) where [M] ⌢ α = a and [M] ⌢ β = b in homology.
// Degree |a| + |b| - d. Throws NotOrientable, InvalidArgument for non-cycles.
HomologyClass intersection_product(const HomologyClass& a, const HomologyClass& b,
                                   const SimplicialComplexData& k, const CoefficientRing& ring);

bool is_cycle(const SimplicialComplexData& k, const CoefficientRing& ring, const HomologyClass& c);
bool homologous(const SimplicialComplexData& k, const CoefficientRing& ring, const HomologyClass& a,
                const HomologyClass& b);

}  // namespace strop::dga
