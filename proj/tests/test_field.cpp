#include <catch2/catch_amalgamated.hpp>

#include "loc5arc/field.hpp"

using namespace loc5arc;

namespace {

// independent polynomial-arithmetic oracle: multiply coefficient vectors
// over GF(3) and reduce by the modulus via long division
Scalar oracle_mul(const Field &F, Scalar a, Scalar b) {
  Trits ca = F.coeffs(a), cb = F.coeffs(b);
  Trits prod(ca.size() + cb.size(), 0);
  for (size_t i = 0; i < ca.size(); ++i)
    for (size_t j = 0; j < cb.size(); ++j)
      prod[i + j] = static_cast<uint8_t>((prod[i + j] + ca[i] * cb[j]) % 3);
  return F.from_coeffs(prod);
}

} // namespace

TEST_CASE("default fields have the expected parameters") {
  Field f3(1);
  CHECK(f3.q() == 3);
  CHECK(f3.epsilon() == 1);
  Field f9(2);
  CHECK(f9.q() == 9);
  CHECK(f9.epsilon() == 3);
  Field f27(3);
  CHECK(f27.q() == 27);
  CHECK(f27.epsilon() == 9);
}

TEST_CASE("reducible modulus is rejected") {
  // x^2 + x = x(x+1)
  CHECK_THROWS_AS(Field(2, Trits{0, 1, 1}), ReducibleModulus);
  // x^2 + 2 = (x+1)(x+2)
  CHECK_THROWS_AS(Field(2, Trits{2, 0, 1}), ReducibleModulus);
  CHECK_THROWS_AS(Field(4), UnsupportedDegree);
}

TEST_CASE("inverse and pow in GF(3)") {
  Field F(1);
  CHECK(F.inv(2) == 2);
  CHECK_THROWS_AS(F.inv(0), DivisionByZero);
  CHECK(F.pow(0, 0) == 1);
  for (Scalar a = 1; a < 3; ++a)
    CHECK(F.pow(a, F.q() - 1) == 1);
}

TEST_CASE("multiplication matches the polynomial oracle") {
  for (unsigned r : {1u, 2u, 3u}) {
    Field F(r);
    for (uint32_t a = 0; a < F.q(); ++a)
      for (uint32_t b = 0; b < F.q(); ++b)
        CHECK(F.mul(static_cast<Scalar>(a), static_cast<Scalar>(b)) ==
              oracle_mul(F, static_cast<Scalar>(a), static_cast<Scalar>(b)));
  }
}

TEST_CASE("GF(9) structure with modulus x^2+1") {
  Field F(2);
  Scalar t = 3; // the element x
  CHECK(F.mul(t, t) == 2); // x^2 = -1
  // Frobenius: x -> x^3 = -x = 2x
  CHECK(F.frobenius(t) == F.mul(2, t));
  CHECK(F.frobenius(1) == 1);
  // eps_pow equals cubing when epsilon = 3, checked over all elements
  for (uint32_t a = 0; a < 9; ++a)
    CHECK(F.eps_pow(static_cast<Scalar>(a)) ==
          F.pow(static_cast<Scalar>(a), 3));
  CHECK(F.eps_pow(0) == 0);
}

TEST_CASE("field axioms hold exhaustively") {
  for (unsigned r : {1u, 2u, 3u}) {
    Field F(r);
    const uint32_t q = F.q();
    for (uint32_t a = 0; a < q; ++a) {
      CHECK(F.add(static_cast<Scalar>(a), F.neg(static_cast<Scalar>(a))) == 0);
      if (a != 0)
        CHECK(F.mul(static_cast<Scalar>(a), F.inv(static_cast<Scalar>(a))) ==
              1);
      for (uint32_t b = 0; b < q; ++b) {
        CHECK(F.add(static_cast<Scalar>(a), static_cast<Scalar>(b)) ==
              F.add(static_cast<Scalar>(b), static_cast<Scalar>(a)));
        CHECK(F.mul(static_cast<Scalar>(a), static_cast<Scalar>(b)) ==
              F.mul(static_cast<Scalar>(b), static_cast<Scalar>(a)));
      }
    }
  }
}

TEST_CASE("primitive roots are deterministic and of full order") {
  Field f3(1);
  CHECK(f3.primitive_root() == 2);
  Field f9(2);
  CHECK(f9.mult_order(f9.primitive_root()) == 8);
  // scan: no smaller index has full multiplicative order
  for (Scalar a = 1; a < f9.primitive_root(); ++a)
    CHECK(f9.mult_order(a) != 8);
  Field f27(3);
  CHECK(f27.mult_order(f27.primitive_root()) == 26);
  for (Scalar a = 1; a < f27.primitive_root(); ++a)
    CHECK(f27.mult_order(a) != 26);
}

TEST_CASE("eps-power identities used by the tau and beta families") {
  for (unsigned r : {1u, 2u, 3u}) {
    Field F(r);
    const uint32_t q = F.q();
    long long eps = F.epsilon();
    for (uint32_t a = 1; a < q; ++a) {
      // rho^eps = rho^(1-2*eps)
      CHECK(F.eps_pow(static_cast<Scalar>(a)) ==
            F.pow(static_cast<Scalar>(a), 1 - 2 * eps));
      // mu^(6*eps) = mu^2
      CHECK(F.pow(static_cast<Scalar>(a), 6 * eps) ==
            F.mul(static_cast<Scalar>(a), static_cast<Scalar>(a)));
    }
    // additivity of the eps power map
    for (uint32_t a = 0; a < q; ++a)
      for (uint32_t b = 0; b < q; ++b)
        CHECK(F.eps_pow(F.add(static_cast<Scalar>(a), static_cast<Scalar>(b))) ==
              F.add(F.eps_pow(static_cast<Scalar>(a)),
                    F.eps_pow(static_cast<Scalar>(b))));
    // Frobenius is an automorphism whose fixed field is GF(3)
    uint32_t fixed = 0;
    for (uint32_t a = 0; a < q; ++a) {
      Scalar fa = F.frobenius(static_cast<Scalar>(a));
      if (fa == a)
        ++fixed;
      Scalar back = fa;
      for (unsigned i = 1; i < F.r(); ++i)
        back = F.frobenius(back);
      CHECK(back == a); // r-fold iteration is the identity
      for (uint32_t b = 0; b < q; ++b) {
        CHECK(F.frobenius(F.add(static_cast<Scalar>(a), static_cast<Scalar>(b))) ==
              F.add(F.frobenius(static_cast<Scalar>(a)),
                    F.frobenius(static_cast<Scalar>(b))));
      }
    }
    CHECK(fixed == (F.r() == 1 ? q : 3));
  }
}
