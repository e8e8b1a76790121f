#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace strop::linalg {

// Every exact value in the library is an arbitrary-precision rational.
// Over a prime field the value is kept as its canonical representative
// in [0, p); over the integers it has denominator 1.
using Scalar = mpq_class;
using Integer = mpz_class;

class CoefficientRing {
 public:
  enum class Kind { Rationals, PrimeField, Integers };

  static CoefficientRing rationals() { return CoefficientRing(Kind::Rationals, 0); }
  static CoefficientRing integers() { return CoefficientRing(Kind::Integers, 0); }
  static CoefficientRing prime_field(std::uint32_t p);

  // Accepts "q", "z", "f<p>" (e.g. "f2", "f5") and "fp:<p>".
  static CoefficientRing parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_field() const noexcept { return kind_ != Kind::Integers; }
  bool is_prime_field() const noexcept { return kind_ == Kind::PrimeField; }

  // Canonical name, the inverse of parse().
  std::string name() const;

  // Maps an arbitrary rational to its canonical representative in this ring.
  // Throws InvalidArgument when the value has no image (a denominator that
  // vanishes mod p, or a non-integer over Z).
  Scalar normalize(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }
  // Field inverse; throws InvalidArgument on zero or over Z.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  // Exact rendering: "a/b" over Q and Z, the residue over F_p.
  std::string format(const Scalar& x) const;
  // Inverse of format(); also accepts any rational literal.
  Scalar parse_scalar(std::string_view text) const;

  friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  CoefficientRing(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// Modular helpers shared by the elimination kernels.
inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);
// Residue of a rational mod p; throws InvalidArgument if the denominator vanishes.
std::uint32_t to_residue(const Scalar& x, std::uint32_t p);

}  // namespace strop::linalg
