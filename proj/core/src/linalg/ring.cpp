#include "strop/linalg/ring.hpp"

#include <charconv>
#include <tuple>
#include <utility>

#include "strop/error.hpp"

namespace strop::linalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  if (new_r == 0) throw InvalidArgument("inverse of zero mod " + std::to_string(p));
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t to_residue(const Scalar& x, std::uint32_t p) {
  mpz_class pz(p);
  mpz_class num = x.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = x.get_den() % pz;
  if (den == 0)
    throw InvalidArgument("denominator vanishes mod " + std::to_string(p));
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return mod_mul(n, mod_inverse(d, p), p);
}

CoefficientRing CoefficientRing::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  return CoefficientRing(Kind::PrimeField, p);
}

CoefficientRing CoefficientRing::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text == "z" || text == "Z") return integers();
  std::string_view digits;
  if (text.starts_with("fp:"))
    digits = text.substr(3);
  else if (text.starts_with("f") || text.starts_with("F"))
    digits = text.substr(1);
  else
    throw ParseError("unknown coefficient ring '" + std::string(text) + "'");
  std::uint32_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
    throw ParseError("bad field characteristic in '" + std::string(text) + "'");
  return prime_field(p);
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case Kind::Rationals: return "q";
    case Kind::Integers: return "z";
    case Kind::PrimeField: return "f" + std::to_string(p_);
  }
  return "?";
}

Scalar CoefficientRing::normalize(const Scalar& x) const {
  switch (kind_) {
    case Kind::Rationals: {
      Scalar y(x);
      y.canonicalize();
      return y;
    }
    case Kind::Integers:
      if (x.get_den() != 1) throw InvalidArgument("non-integer value over Z");
      return x;
    case Kind::PrimeField:
      return Scalar(to_residue(x, p_));
  }
  return x;
}

Scalar CoefficientRing::inv(const Scalar& a) const {
  switch (kind_) {
    case Kind::Rationals:
      if (a == 0) throw InvalidArgument("division by zero");
      return Scalar(1) / a;
    case Kind::Integers:
      if (a == 1 || a == -1) return a;
      throw InvalidArgument("no inverse over Z");
    case Kind::PrimeField:
      return Scalar(mod_inverse(to_residue(a, p_), p_));
  }
  return a;
}

std::string CoefficientRing::format(const Scalar& x) const {
  return normalize(x).get_str();
}

Scalar CoefficientRing::parse_scalar(std::string_view text) const {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  Scalar value;
  if (s.empty() || value.set_str(s, 10) != 0)
    throw ParseError("bad scalar literal '" + std::string(text) + "'");
  if (value.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  value.canonicalize();
  return normalize(value);
}

}  // namespace strop::linalg
