#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "strop/linalg/ring.hpp"

namespace strop::linalg {

// Field arithmetic policies for the templated elimination kernels. Both
// expose the same surface so hot loops can be instantiated once per field
// representation instead of paying for rational arithmetic over F_p.
struct ModularArith {
  using value_type = std::uint32_t;
  std::uint32_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const { return mod_mul(a, b, p); }
  value_type inv(value_type a) const { return mod_inverse(a, p); }
  value_type from_scalar(const Scalar& x) const { return to_residue(x, p); }
  Scalar to_scalar(value_type a) const { return Scalar(a); }
};

struct RationalArith {
  using value_type = Scalar;

  value_type zero() const { return Scalar(0); }
  value_type one() const { return Scalar(1); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return Scalar(1) / a; }
  value_type from_scalar(const Scalar& x) const { return x; }
  Scalar to_scalar(const value_type& a) const { return a; }
};

// Calls `f(arith)` with the arithmetic policy matching a field ring.
template <class F>
decltype(auto) with_field_arith(const CoefficientRing& ring, F&& f) {
  if (ring.is_prime_field()) return f(ModularArith{ring.characteristic()});
  return f(RationalArith{});
}

// Sparse row: strictly increasing column indices, nonzero values.
template <class Arith>
using SparseRow = std::vector<std::pair<std::size_t, typename Arith::value_type>>;

// dst <- dst - factor * src
template <class Arith>
void row_axpy(const Arith& ar, SparseRow<Arith>& dst, const typename Arith::value_type& factor,
              const SparseRow<Arith>& src) {
  SparseRow<Arith> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, ar.neg(ar.mul(factor, src[j].second)));
      ++j;
    } else {
      auto v = ar.sub(dst[i].second, ar.mul(factor, src[j].second));
      if (!ar.is_zero(v)) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

}  // namespace strop::linalg
