#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "strop/dga/algebra.hpp"

namespace strop::dga {

// Structured-text algebra description:
//
//   ring: f2
//   basis: [[1, 0], [x, 2]]
//   unit: 1                      # a basis name or [[coef, name], ...]
//   products: [[x, x, []]]       # [left, right, [[coef, name], ...]]
//   differential: [[b, [[1, c]]]]
//
// Unlisted products and differentials are zero, except that products with a
// unit basis element default to the identity. Throws ParseError or
// InvalidAlgebra.
FiniteGradedAlgebra parse_algebra(std::string_view text);
FiniteGradedAlgebra load_algebra_file(const std::filesystem::path& path);

// Canonical form: every nonzero product and differential listed in index
// order, coefficients in the ring's exact rendering. parse_algebra inverts it
// and serialize(parse(serialize(a))) == serialize(a) byte for byte.
std::string serialize_algebra(const FiniteGradedAlgebra& a);

}  // namespace strop::dga
