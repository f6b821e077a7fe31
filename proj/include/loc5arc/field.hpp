#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "loc5arc/errors.hpp"

namespace loc5arc {

// A scalar of GF(q), q = 3^r, stored as its index in [0, q): the little-endian
// base-3 packing of the coefficient vector in the polynomial basis.
using Scalar = uint16_t;

using Trits = std::vector<uint8_t>; // polynomial coefficients over GF(3), little-endian

namespace detail {

inline Trits trits_trim(Trits p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
  return p;
}

inline Trits trits_mul(const Trits &a, const Trits &b) {
  if (a.empty() || b.empty())
    return {};
  Trits r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint8_t>((r[i + j] + a[i] * b[j]) % 3);
  return trits_trim(std::move(r));
}

// remainder of a modulo the monic polynomial m
inline Trits trits_mod(Trits a, const Trits &m) {
  a = trits_trim(std::move(a));
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    uint8_t lead = a.back();
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i < m.size(); ++i) {
      int v = a[shift + i] - lead * m[i];
      a[shift + i] = static_cast<uint8_t>(((v % 3) + 3) % 3);
    }
    a = trits_trim(std::move(a));
  }
  return a;
}

inline bool trits_is_zero(const Trits &a) { return trits_trim(a).empty(); }

// irreducibility over GF(3) by trial division against every monic polynomial of
// degree 1 .. deg/2; exhaustive root search is the degree <= 3 special case
inline bool trits_irreducible(const Trits &m) {
  const size_t deg = m.size() - 1;
  if (deg == 0)
    return false;
  if (deg == 1)
    return true;
  for (size_t d = 1; 2 * d <= deg; ++d) {
    uint32_t count = 1;
    for (size_t i = 0; i < d; ++i)
      count *= 3;
    for (uint32_t k = 0; k < count; ++k) {
      Trits div(d + 1, 0);
      uint32_t t = k;
      for (size_t i = 0; i < d; ++i) {
        div[i] = static_cast<uint8_t>(t % 3);
        t /= 3;
      }
      div[d] = 1;
      if (trits_is_zero(trits_mod(m, div)))
        return false;
    }
  }
  return true;
}

} // namespace detail

// GF(3^r) with precomputed operation tables. Immutable after construction,
// safe for unrestricted concurrent reads.
class Field {
public:
  explicit Field(unsigned r, std::optional<Trits> modulus = std::nullopt)
      : r_(r) {
    if (r < 1)
      throw InvalidParameter("field degree r must be >= 1");
    if (!modulus) {
      switch (r) {
      case 1: modulus = Trits{0, 1}; break;          // x
      case 2: modulus = Trits{1, 0, 1}; break;       // x^2 + 1
      case 3: modulus = Trits{1, 2, 0, 1}; break;    // x^3 + 2x + 1
      default:
        throw UnsupportedDegree("no built-in modulus for r = " +
                                std::to_string(r));
      }
    }
    if (r > kMaxDegree)
      throw UnsupportedDegree("field degree r = " + std::to_string(r) +
                              " exceeds supported maximum " +
                              std::to_string(kMaxDegree));
    modulus_ = *modulus;
    if (modulus_.size() != r + 1 || modulus_.back() != 1)
      throw InvalidParameter("modulus must be monic of degree r");
    for (uint8_t c : modulus_)
      if (c > 2)
        throw InvalidParameter("modulus coefficients must lie in {0,1,2}");
    if (!detail::trits_irreducible(modulus_))
      throw ReducibleModulus("modulus polynomial factors over GF(3)");

    q_ = 1;
    for (unsigned i = 0; i < r; ++i)
      q_ *= 3;
    epsilon_ = q_ / 3;
    if (std::gcd(static_cast<unsigned long>(epsilon_),
                 static_cast<unsigned long>(q_ - 1)) != 1)
      throw InvalidParameter("gcd(epsilon, q-1) != 1");

    build_tables();
  }

  unsigned r() const { return r_; }
  uint32_t q() const { return q_; }
  uint32_t epsilon() const { return epsilon_; }
  const Trits &modulus() const { return modulus_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }

  Scalar add(Scalar a, Scalar b) const { return add_[a * q_ + b]; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar neg(Scalar a) const { return neg_[a]; }
  Scalar mul(Scalar a, Scalar b) const { return mul_[a * q_ + b]; }

  Scalar inv(Scalar a) const {
    if (a == 0)
      throw DivisionByZero("inverse of zero");
    return inv_[a];
  }

  // exponent reduced mod (q-1) for nonzero bases; 0^0 = 1
  Scalar pow(Scalar a, long long e) const {
    if (a == 0)
      return e == 0 ? one() : zero();
    long long m = static_cast<long long>(q_) - 1;
    e %= m;
    if (e < 0)
      e += m;
    Scalar acc = 1, base = a;
    while (e) {
      if (e & 1)
        acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Scalar frobenius(Scalar a) const { return frob_[a]; } // a^3
  Scalar eps_pow(Scalar a) const { return eps_[a]; }    // a^epsilon

  // least generator of the multiplicative group in the canonical element
  // order (the index encoding)
  Scalar primitive_root() const { return primitive_root_; }

  unsigned mult_order(Scalar a) const {
    if (a == 0)
      throw DivisionByZero("multiplicative order of zero");
    unsigned n = 1;
    Scalar x = a;
    while (x != 1) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  Scalar from_coeffs(const Trits &c) const {
    Trits red = detail::trits_mod(c, modulus_);
    uint32_t idx = 0, p = 1;
    for (uint8_t d : red) {
      idx += d * p;
      p *= 3;
    }
    return static_cast<Scalar>(idx);
  }

  Trits coeffs(Scalar a) const {
    Trits c(r_, 0);
    for (unsigned i = 0; i < r_; ++i) {
      c[i] = static_cast<uint8_t>(a % 3);
      a /= 3;
    }
    return c;
  }

  std::string describe() const {
    std::string s = "q=" + std::to_string(q_) + " r=" + std::to_string(r_) +
                    " epsilon=" + std::to_string(epsilon_) + " modulus=[";
    for (size_t i = 0; i < modulus_.size(); ++i) {
      if (i)
        s += ",";
      s += std::to_string(static_cast<int>(modulus_[i]));
    }
    s += "] zeta=" + std::to_string(primitive_root_);
    return s;
  }

  static constexpr unsigned kMaxDegree = 6;

private:
  void build_tables() {
    add_.resize(static_cast<size_t>(q_) * q_);
    mul_.resize(static_cast<size_t>(q_) * q_);
    neg_.resize(q_);
    inv_.resize(q_);
    frob_.resize(q_);
    eps_.resize(q_);

    for (uint32_t a = 0; a < q_; ++a) {
      Trits ca = coeffs_raw(a);
      for (uint32_t b = 0; b < q_; ++b) {
        Trits cb = coeffs_raw(b);
        Trits s(r_, 0);
        for (unsigned i = 0; i < r_; ++i)
          s[i] = static_cast<uint8_t>((ca[i] + cb[i]) % 3);
        add_[a * q_ + b] = pack(s);
        mul_[a * q_ + b] = pack(detail::trits_mod(detail::trits_mul(ca, cb), modulus_));
      }
    }
    for (uint32_t a = 0; a < q_; ++a) {
      Trits ca = coeffs_raw(a);
      for (auto &c : ca)
        c = static_cast<uint8_t>((3 - c) % 3);
      neg_[a] = pack(ca);
    }
    inv_[0] = 0;
    for (uint32_t a = 1; a < q_; ++a)
      for (uint32_t b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = static_cast<Scalar>(b);
          break;
        }
    for (uint32_t a = 0; a < q_; ++a) {
      Scalar a2 = mul_[a * q_ + a];
      frob_[a] = mul_[a2 * q_ + a];
    }
    // a^epsilon = a^(3^(r-1)) is the (r-1)-fold Frobenius
    for (uint32_t a = 0; a < q_; ++a) {
      Scalar x = static_cast<Scalar>(a);
      for (unsigned i = 0; i + 1 < r_; ++i)
        x = frob_[x];
      eps_[a] = x;
    }
    primitive_root_ = 0;
    for (uint32_t a = 1; a < q_; ++a)
      if (mult_order(static_cast<Scalar>(a)) == q_ - 1) {
        primitive_root_ = static_cast<Scalar>(a);
        break;
      }
  }

  Trits coeffs_raw(uint32_t a) const {
    Trits c(r_, 0);
    for (unsigned i = 0; i < r_; ++i) {
      c[i] = static_cast<uint8_t>(a % 3);
      a /= 3;
    }
    return c;
  }

  Scalar pack(const Trits &c) const {
    uint32_t idx = 0, p = 1;
    for (unsigned i = 0; i < r_ && i < c.size(); ++i) {
      idx += c[i] * p;
      p *= 3;
    }
    return static_cast<Scalar>(idx);
  }

  unsigned r_;
  uint32_t q_ = 0;
  uint32_t epsilon_ = 0;
  Trits modulus_;
  std::vector<Scalar> add_, mul_, neg_, inv_, frob_, eps_;
  Scalar primitive_root_ = 0;
};

} // namespace loc5arc
