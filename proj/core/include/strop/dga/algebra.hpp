#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strop/linalg/ring.hpp"
#include "strop/linalg/sparse_matrix.hpp"

namespace strop::dga {

using linalg::CoefficientRing;
using linalg::Scalar;
using linalg::SparseMatrix;
using linalg::Vector;

struct BasisElement {
  std::string name;
  int degree = 0;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// Sparse linear combination of basis elements: strictly increasing indices,
// nonzero coefficients already reduced into the ring.
using Combination = std::vector<std::pair<std::size_t, Scalar>>;

struct ProductEntry {
  std::size_t left;
  std::size_t right;
  Combination value;
};

enum class Validation { Exhaustive, Sampled };

// Finite-dimensional unital associative graded algebra with a degree +1
// differential over a field. Immutable; every axiom is checked on
// construction (Sampled checks a fixed-seed random subset of triples and
// pairs, which is what large cochain algebras use).
class FiniteGradedAlgebra {
 public:
  FiniteGradedAlgebra(CoefficientRing ring, std::vector<BasisElement> basis, Vector unit,
                      std::vector<ProductEntry> products, std::vector<Combination> differential,
                      Validation validation = Validation::Exhaustive);

  const CoefficientRing& ring() const noexcept { return ring_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  const std::string& name(std::size_t i) const { return basis_[i].name; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  int max_degree() const noexcept { return max_degree_; }
  // Basis indices of the given degree, increasing.
  const std::vector<std::size_t>& in_degree(int k) const;

  const Vector& unit() const noexcept { return unit_; }
  // Index of the unit when it is itself a basis element.
  std::optional<std::size_t> unit_index() const noexcept { return unit_index_; }

  const Combination& product(std::size_t i, std::size_t j) const;
  // Nonzero products with left factor i, by increasing right index.
  const std::vector<std::pair<std::size_t, Combination>>& products_from(std::size_t i) const {
    return left_[i];
  }
  const Combination& differential(std::size_t i) const { return d_[i]; }
  bool has_zero_differential() const noexcept { return zero_d_; }

  Vector multiply(const Vector& x, const Vector& y) const;
  Vector apply_differential(const Vector& x) const;
  // Matrix of d from degree k to degree k+1 in the local bases given by in_degree().
  SparseMatrix differential_matrix(int k) const;

  bool is_graded_commutative() const;

  // Re-expresses the algebra in a new homogeneous basis. Column i of
  // `vectors` is the new i-th basis element in old coordinates.
  FiniteGradedAlgebra change_basis(const std::vector<Vector>& vectors,
                                   std::vector<BasisElement> names) const;

  // Same algebra with a basis containing the unit: the first degree-0 basis
  // element on which the unit has nonzero coefficient is replaced by it and
  // named "1". Returns a copy when the unit is already a basis element.
  FiniteGradedAlgebra with_unit_basis() const;

  std::vector<ProductEntry> product_entries() const;

  friend bool operator==(const FiniteGradedAlgebra& a, const FiniteGradedAlgebra& b);

 private:
  void index();
  void validate(Validation validation) const;

  CoefficientRing ring_;
  std::vector<BasisElement> basis_;
  Vector unit_;
  std::vector<std::vector<std::pair<std::size_t, Combination>>> left_;
  std::vector<Combination> d_;
  std::vector<std::vector<std::size_t>> by_degree_;
  int max_degree_ = 0;
  std::optional<std::size_t> unit_index_;
  bool zero_d_ = true;
};

Vector to_dense(const Combination& c, std::size_t dim);
Combination to_sparse(const Vector& v);

// Role of a basis element in a Hodge-adapted basis: d(source) is a nonzero
// multiple of its target, harmonic elements and targets are cocycles.
enum class HodgeRole { Harmonic, Source, Target };

struct HodgeRoles {
  std::vector<HodgeRole> role;
  std::vector<std::size_t> partner;  // source <-> target, self for harmonic
};

// Detects whether the basis is Hodge-adapted: each d(x) is zero or a single
// basis term, no element is hit twice, and targets are cocycles.
std::optional<HodgeRoles> hodge_roles(const FiniteGradedAlgebra& a);

struct AdaptedAlgebra {
  FiniteGradedAlgebra algebra;
  HodgeRoles roles;
  // Columns are the adapted basis in the original coordinates.
  std::vector<Vector> to_original;
};

// Hodge-adapted basis in which the unit is a harmonic basis element named
// "1". Original basis vectors are preferred wherever they fit, so the result
// is the identity change when d = 0 and the unit is already a basis element.
AdaptedAlgebra adapt(const FiniteGradedAlgebra& a);

// Cohomology H(A) with basis given by the harmonic elements of adapt(a);
// products are reduced modulo coboundaries.
struct CohomologyAlgebra {
  FiniteGradedAlgebra algebra;
  std::vector<Vector> representatives;  // cocycles in the coordinates of `a`
};
CohomologyAlgebra cohomology_algebra(const FiniteGradedAlgebra& a);

// dim H^k(A) for k = 0..max_degree.
std::vector<std::size_t> cohomology_dimensions(const FiniteGradedAlgebra& a);

}  // namespace strop::dga
