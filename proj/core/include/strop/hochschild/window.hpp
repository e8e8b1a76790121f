#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "strop/dga/algebra.hpp"

namespace strop::hochschild {

using dga::FiniteGradedAlgebra;
using linalg::CoefficientRing;
using linalg::Scalar;
using linalg::SparseMatrix;
using linalg::Vector;

struct Bidegree {
  int s = 0;  // tensor length
  int t = 0;  // internal degree |output| - Σ|inputs|
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

// Elementary cochain: the map sending the basis tensor inputs[0] ⊗ ... to
// `output` and every other basis tensor to zero. Indices are basis indices of
// the algebra.
struct Cell {
  std::vector<std::size_t> inputs;
  std::size_t output = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct WindowSpec {
  std::size_t max_tensor = 0;  // S
  int n_min = 0;
  int n_max = 0;
  bool normalized = true;
  // Throw WindowTooSmall instead of flagging unsaturated degrees.
  bool require_saturation = false;
  // Test fixture: flips the sign of the right-action term of the differential.
  bool inject_sign_fault = false;
};

// Hochschild cochains of A in total degrees [n_min - 1, n_max + 1] with
// tensor length at most S, i.e. the quotient of CH^*(A; A) by the subcomplex
// of cochains with s > S (a DGA in its own right).
//
// Conventions, in one place. A cochain of tensor length s is a map
// φ: (sĀ)^{⊗s} -> A; with |x_i| = |u_i| - 1 its total degree is
// n = |o| - Σ|x_i| = s + t. The differential is
//   ∂φ = d∘φ - (-1)^n φ∘D - (-1)^n φ∘m + τ⋆φ - (-1)^n φ⋆τ
// where D applies d(sa) = -s(da) and m(sa, sb) = (-1)^{|a|} s(ab) at each
// position with Koszul sign (-1)^{Σ_{j<i}|x_j|}, τ(sa) = a, and
//   (φ⋆ψ)(x_1..x_{s+r}) = (-1)^{|ψ| Σ_{j≤s}|x_j|} φ(x_1..x_s) ψ(x_{s+1}..).
// The cup product is ⋆; it satisfies ∂(φψ) = ∂φ ψ + (-1)^{|φ|} φ ∂ψ.
class HochschildWindow : public std::enable_shared_from_this<HochschildWindow> {
 public:
  // Normalized windows need the unit to be a basis element; inputs then run
  // over the other basis elements. Throws InvalidArgument on a bad spec and
  // WindowTooSmall when saturation is required but not reached.
  static std::shared_ptr<const HochschildWindow> build(const FiniteGradedAlgebra& a,
                                                       const WindowSpec& spec);

  const FiniteGradedAlgebra& algebra() const noexcept { return algebra_; }
  const WindowSpec& spec() const noexcept { return spec_; }
  std::size_t max_tensor() const noexcept { return spec_.max_tensor; }
  bool normalized() const noexcept { return spec_.normalized; }
  int stored_min() const noexcept { return spec_.n_min - 1; }
  int stored_max() const noexcept { return spec_.n_max + 1; }
  bool stores(int n) const noexcept { return n >= stored_min() && n <= stored_max(); }

  // Basis indices allowed as inputs.
  const std::vector<std::size_t>& alphabet() const noexcept { return alphabet_; }

  std::size_t dim(int n) const;
  Cell cell(int n, std::size_t i) const;
  std::optional<std::size_t> find(int n, const Cell& c) const;
  int total_degree(const Cell& c) const;
  Bidegree bidegree(const Cell& c) const;
  std::string label(const Cell& c) const;

  // Matrix of ∂ from degree n to n + 1 (rows: degree n + 1 cells).
  // Throws DegreeOutOfWindow unless both degrees are stored.
  SparseMatrix differential_matrix(int n) const;

  // True when no cell with s > S can contribute to H^n: derived from the
  // degrees of H(A) through the spectral sequence of the tensor-length
  // filtration.
  bool saturated(int n) const;
  // No E_1 cell of tensor length > S sits in total degree m.
  bool no_high_cells(int m, std::size_t S) const;

  // Packed cell codes, sorted, for degree n. Codes order cells by tensor
  // length, then inputs lexicographically, then output.
  const std::vector<std::uint64_t>& codes(int n) const;
  std::uint64_t encode(const Cell& c) const;
  Cell decode(std::uint64_t code) const;
  std::size_t radix() const noexcept { return alphabet_.size(); }
  std::uint64_t offset(std::size_t s) const { return offsets_[s]; }
  // Position of a basis index in the alphabet, or radix() when absent.
  std::size_t position(std::size_t basis_index) const { return position_[basis_index]; }
  std::optional<std::size_t> index_of_code(int n, std::uint64_t code) const;

 private:
  HochschildWindow(const FiniteGradedAlgebra& a, const WindowSpec& spec);
  void enumerate();

  FiniteGradedAlgebra algebra_;
  WindowSpec spec_;
  std::vector<std::size_t> alphabet_;
  std::vector<std::size_t> position_;
  std::vector<std::uint64_t> offsets_;  // offsets_[s] = first code of tensor length s
  std::vector<std::vector<std::uint64_t>> cells_;
  std::vector<int> h_degrees_;         // degrees of H(A) (with multiplicity irrelevant)
  std::vector<int> input_h_degrees_;   // degrees of the E_1 inputs
};

using WindowPtr = std::shared_ptr<const HochschildWindow>;

// Cochain of one total degree; coefficients are indexed like window->codes(degree).
struct HochschildCochain {
  WindowPtr window;
  int degree = 0;
  Vector coefficients;

  static HochschildCochain zero(WindowPtr w, int degree);
  static HochschildCochain basis(WindowPtr w, int degree, std::size_t i);
  // The s = 0 cochain with value a ∈ A (a of degree n).
  static HochschildCochain constant(WindowPtr w, const Vector& a, int degree);
  bool is_zero() const;
};

// Throws DegreeOutOfWindow when degree + 1 is not stored.
HochschildCochain differential(const HochschildCochain& phi);
// Cup product in the truncated window. Throws MismatchedWindow or
// DegreeOutOfWindow.
HochschildCochain cup(const HochschildCochain& phi, const HochschildCochain& psi);

}  // namespace strop::hochschild
