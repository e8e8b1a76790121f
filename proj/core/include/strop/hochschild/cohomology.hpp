#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strop/hochschild/window.hpp"

namespace strop::hochschild {

// HH^n of a window for n in [n_min, n_max].
//
// When the algebra basis is Hodge-adapted (see dga::adapt) the computation
// runs on the algebraic Morse complex of the matching that pairs a cell with
// the cell obtained by flipping its first non-harmonic factor (output first,
// then inputs left to right) between a source and its target. Otherwise every
// cell is critical and the full window complex is used.
class HochschildCohomology {
 public:
  explicit HochschildCohomology(WindowPtr window);
  ~HochschildCohomology();
  HochschildCohomology(HochschildCohomology&&) noexcept;
  HochschildCohomology& operator=(HochschildCohomology&&) noexcept;

  const WindowPtr& window() const noexcept { return window_; }
  int n_min() const { return window_->spec().n_min; }
  int n_max() const { return window_->spec().n_max; }

  std::size_t dimension(int n) const;
  bool saturated(int n) const { return window_->saturated(n); }
  // Label of each class: the leading cell of its representative.
  const std::vector<std::string>& labels(int n) const;
  // Number of critical cells in degree n.
  std::size_t critical_cells(int n) const;
  bool uses_morse() const;

  // Representative cocycle of class i in degree n, chosen as the first
  // kernel vectors of the (Morse) differential independent of its image.
  HochschildCochain representative(int n, std::size_t i) const;
  // Coordinates of the class of z in the representative basis; throws
  // InvalidArgument when z is not a cocycle.
  Vector classify(const HochschildCochain& z) const;
  bool is_coboundary(const HochschildCochain& z) const;

  // Coordinates of [rep(n1, i) ∪ rep(n2, j)], or nullopt when n1 + n2 is
  // outside [n_min, n_max].
  std::optional<Vector> product(int n1, std::size_t i, int n2, std::size_t j) const;

  struct Impl;

 private:
  WindowPtr window_;
  std::unique_ptr<Impl> impl_;
};

struct RingDegree {
  int degree = 0;
  std::size_t dimension = 0;
  bool saturated = false;
  std::vector<std::string> labels;
};

struct RingProduct {
  int left_degree = 0;
  std::size_t left = 0;
  int right_degree = 0;
  std::size_t right = 0;
  Vector value;  // coordinates in degree left_degree + right_degree
};

// Multiplication table of HH^* on the chosen representatives. Products whose
// factors or result sit in unsaturated degrees, or whose result degree leaves
// the window, are listed in `incomplete` instead of `products`.
struct GradedRingPresentation {
  CoefficientRing ring = CoefficientRing::rationals();
  std::vector<RingDegree> degrees;
  std::vector<RingProduct> products;
  std::vector<std::pair<int, int>> incomplete;
  // Coordinates of the unit class in degree 0 (empty when degree 0 is not reported).
  Vector unit;

  const RingDegree* degree(int n) const;
  const RingProduct* product(int n1, std::size_t i, int n2, std::size_t j) const;
  bool complete(int n1, int n2) const;
};

GradedRingPresentation ring_presentation(const HochschildCohomology& h);

}  // namespace strop::hochschild
