#pragma once

#include <vector>

#include "strop/hochschild/window.hpp"

namespace strop::hochschild {

// The differential rebuilt from the cosimplicial structure. On unsuspended
// cochains f: A^{⊗s} -> A of internal degree t the duals of the cofaces are
//   Δ^0 f(a_1..a_{s+1})     = (-1)^{|a_1| t} a_1 f(a_2..a_{s+1})
//   Δ^i f(a_1..a_{s+1})     = f(.., a_i a_{i+1}, ..)            1 ≤ i ≤ s
//   Δ^{s+1} f(a_1..a_{s+1}) = f(a_1..a_s) a_{s+1}
// and the total differential is Σ (-1)^i Δ^i + (-1)^s (d∘f - (-1)^t f∘d).
// A cell of the window is read as an unsuspended cell through the décalage
// sign (-1)^{Σ_i |a_i|(s-i) + s(s-1)/2 + s t}.
struct CofaceMatrices {
  int degree = 0;
  std::vector<SparseMatrix> cofaces;  // Δ^i from degree n to n + 1, i = 0..S
  SparseMatrix internal;               // d∘f - (-1)^t f∘d
  SparseMatrix assembled;              // conjugated total, comparable to differential_matrix
};

int decalage_sign(const HochschildWindow& w, const Cell& c);

// Throws DegreeOutOfWindow unless degrees n and n + 1 are stored.
CofaceMatrices coface_matrices(const HochschildWindow& w, int n);

}  // namespace strop::hochschild
