#pragma once

// Cell-level kernels shared by the window, the Morse reduction and the
// coface route. Everything works on packed codes and is instantiated once per
// field representation.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "strop/hochschild/window.hpp"
#include "strop/linalg/arith.hpp"

namespace strop::hochschild::detail {

constexpr std::size_t kMaxTensor = 62;

struct Decoded {
  std::size_t s = 0;
  std::array<std::uint32_t, kMaxTensor + 2> d{};  // alphabet positions
  std::size_t o = 0;
};

inline bool odd(long k) { return (k & 1) != 0; }

template <class Ar>
struct Tables {
  using V = typename Ar::value_type;
  template <class T>
  using List = std::vector<T>;

  Ar ar;
  std::size_t m = 0, r = 0, S = 0;
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint64_t> powers;  // r^k
  std::vector<int> xdeg;              // |a_p| - 1
  std::vector<int> odeg;
  List<List<std::pair<std::size_t, V>>> dA;                             // d(o)
  List<List<std::pair<std::uint32_t, V>>> dT;                           // d(w)_{u_p} for w in alphabet
  List<List<std::pair<std::pair<std::uint32_t, std::uint32_t>, V>>> prodT;  // (a b)_{u_p}
  List<List<std::pair<std::size_t, V>>> left;                           // left[p * m + o] = a_p o
  List<List<std::pair<std::size_t, V>>> right;                          // right[o * r + p] = o a_p
  List<List<std::pair<std::size_t, V>>> prod;                           // prod[o * m + o'] = o o'
  bool fault = false;

  Tables(const HochschildWindow& w, Ar a) : ar(a) {
    const auto& alg = w.algebra();
    m = alg.dim();
    r = w.radix();
    S = w.max_tensor();
    fault = w.spec().inject_sign_fault;
    for (std::size_t s = 0; s <= S + 1; ++s) offsets.push_back(w.offset(s));
    powers.assign(S + 2, 1);
    for (std::size_t k = 1; k < powers.size(); ++k) powers[k] = powers[k - 1] * r;
    for (auto b : w.alphabet()) xdeg.push_back(alg.degree(b) - 1);
    for (std::size_t o = 0; o < m; ++o) odeg.push_back(alg.degree(o));
    dA.resize(m);
    for (std::size_t o = 0; o < m; ++o)
      for (const auto& [c, v] : alg.differential(o)) dA[o].emplace_back(c, ar.from_scalar(v));
    dT.resize(r);
    prodT.resize(r);
    for (std::size_t q = 0; q < r; ++q)
      for (const auto& [c, v] : alg.differential(w.alphabet()[q])) {
        auto p = w.position(c);
        if (p < r) dT[p].emplace_back(static_cast<std::uint32_t>(q), ar.from_scalar(v));
      }
    prod.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& [j, comb] : alg.products_from(i))
        for (const auto& [c, v] : comb) prod[i * m + j].emplace_back(c, ar.from_scalar(v));
    for (std::size_t pa = 0; pa < r; ++pa)
      for (std::size_t pb = 0; pb < r; ++pb)
        for (const auto& [c, v] : prod[w.alphabet()[pa] * m + w.alphabet()[pb]]) {
          auto p = w.position(c);
          if (p < r)
            prodT[p].push_back({{static_cast<std::uint32_t>(pa), static_cast<std::uint32_t>(pb)}, v});
        }
    left.resize(r * m);
    right.resize(m * r);
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t o = 0; o < m; ++o) {
        left[p * m + o] = prod[w.alphabet()[p] * m + o];
        right[o * r + p] = prod[o * m + w.alphabet()[p]];
      }
  }

  V sign(bool negative, const V& v) const { return negative ? ar.neg(v) : v; }

  Decoded decode(std::uint64_t code) const {
    Decoded x;
    std::size_t s = 0;
    while (s + 1 < offsets.size() && offsets[s + 1] <= code && offsets[s + 1] > offsets[s]) ++s;
    std::uint64_t rem = code - offsets[s];
    x.s = s;
    x.o = static_cast<std::size_t>(rem % m);
    rem /= m;
    for (std::size_t i = s; i-- > 0;) {
      x.d[i] = static_cast<std::uint32_t>(rem % r);
      rem /= r;
    }
    return x;
  }

  std::uint64_t encode(const Decoded& x) const {
    std::uint64_t digits = 0;
    for (std::size_t i = 0; i < x.s; ++i) digits = digits * r + x.d[i];
    return offsets[x.s] + digits * m + x.o;
  }

  int total_degree(const Decoded& x) const {
    int n = odeg[x.o];
    for (std::size_t i = 0; i < x.s; ++i) n -= xdeg[x.d[i]];
    return n;
  }

  // Calls emit(code, value) for every term of ∂(cell); terms with s > S are skipped.
  template <class Emit>
  void boundary(std::uint64_t code, Emit&& emit) const {
    Decoded x = decode(code);
    const int n = total_degree(x);
    const std::size_t s = x.s;
    // (1) d∘φ
    for (const auto& [c, v] : dA[x.o]) {
      Decoded y = x;
      y.o = c;
      emit(encode(y), v);
    }
    int prefix = 0;
    for (std::size_t i = 0; i < s; ++i) {
      const auto u = x.d[i];
      // (2) φ∘D
      for (const auto& [w, v] : dT[u]) {
        Decoded y = x;
        y.d[i] = w;
        emit(encode(y), sign(odd(n + prefix), v));
      }
      // (3) φ∘m
      if (s + 1 <= S) {
        for (const auto& [ab, v] : prodT[u]) {
          Decoded y;
          y.s = s + 1;
          y.o = x.o;
          for (std::size_t j = 0; j < i; ++j) y.d[j] = x.d[j];
          y.d[i] = ab.first;
          y.d[i + 1] = ab.second;
          for (std::size_t j = i + 1; j < s; ++j) y.d[j + 1] = x.d[j];
          emit(encode(y), sign(!odd(n + prefix + xdeg[ab.first] + 1), v));
        }
      }
      prefix += xdeg[u];
    }
    if (s + 1 > S) return;
    // (4) τ⋆φ and (5) φ⋆τ
    for (std::size_t p = 0; p < r; ++p) {
      for (const auto& [c, v] : left[p * m + x.o]) {
        Decoded y;
        y.s = s + 1;
        y.o = c;
        y.d[0] = static_cast<std::uint32_t>(p);
        for (std::size_t j = 0; j < s; ++j) y.d[j + 1] = x.d[j];
        emit(encode(y), sign(odd(static_cast<long>(n) * xdeg[p]), v));
      }
      for (const auto& [c, v] : right[x.o * r + p]) {
        Decoded y = x;
        y.s = s + 1;
        y.o = c;
        y.d[s] = static_cast<std::uint32_t>(p);
        emit(encode(y), sign(!odd(n + prefix) != fault, v));
      }
    }
  }

  // Calls emit(code, value) for the cup product of two cells (dropped when
  // the tensor length exceeds S).
  template <class Emit>
  void cup(std::uint64_t a, std::uint64_t b, Emit&& emit) const {
    Decoded x = decode(a), y = decode(b);
    if (x.s + y.s > S) return;
    int xsum = 0;
    for (std::size_t i = 0; i < x.s; ++i) xsum += xdeg[x.d[i]];
    const bool neg = odd(static_cast<long>(total_degree(y)) * xsum);
    Decoded z = x;
    z.s = x.s + y.s;
    for (std::size_t i = 0; i < y.s; ++i) z.d[x.s + i] = y.d[i];
    const std::uint64_t base = encode(Decoded{z.s, z.d, 0});
    for (const auto& [c, v] : prod[x.o * m + y.o]) emit(base + c, sign(neg, v));
  }
};

}  // namespace strop::hochschild::detail
