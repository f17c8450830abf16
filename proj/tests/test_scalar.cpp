#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wachlab/scalar.hpp"

using namespace wachlab;
using wachlab::testing::kind_of;
using wachlab::testing::random_scalar;

TEST_CASE("zeta exponents fold into [0, N/2) with sign") {
  REQUIRE(Scalar::zeta_pow(4, 8) == Scalar::integer(-1, 8));
  REQUIRE(Scalar::zeta_pow(7, 8) == -Scalar::zeta_pow(3, 8));
  REQUIRE(Scalar::zeta_pow(-1, 8) == -Scalar::zeta_pow(3, 8));
  REQUIRE(Scalar::zeta_pow(24, 24) == Scalar::one(24));
  Scalar i = Scalar::sqrt_minus_one(8);
  REQUIRE(i * i == Scalar::integer(-1, 8));
  REQUIRE(Scalar::sqrt_minus_one(24) == Scalar::zeta_pow(6, 24));
}

TEST_CASE("square of sqrt(-1)*p^(1/2) is -p") {
  Scalar x = Scalar::sqrt_minus_one(8) * Scalar::p_pow2(1, 8);
  REQUIRE(x.pow(2) == -Scalar::p_int_pow(1, 8));
  REQUIRE(x.pow(2).to_string() == "-p");
  Scalar y = Scalar::sqrt_minus_one(8) * Scalar::p_pow2(2, 8);  // sqrt(-1)*p
  REQUIRE(y.pow(2).to_string() == "-p^2");
}

TEST_CASE("monomial inverse negates exponents") {
  Scalar x = Scalar::sqrt_minus_one(8) * Scalar::p_pow2(1, 8);
  Scalar xi = x.inv();
  REQUIRE(x * xi == Scalar::one(8));
  REQUIRE(xi == -(Scalar::sqrt_minus_one(8) * Scalar::p_pow2(-1, 8)));
  REQUIRE(xi.to_string() == "-zeta8^2*p^(-1/2)");
}

TEST_CASE("inverse rejects non-units") {
  Scalar two = Scalar::integer(2, 8);
  REQUIRE(kind_of([&] { two.inv(); }) == ErrorKind::NonMonomialInverse);
  Scalar sum = Scalar::one(8) + Scalar::p_int_pow(1, 8);
  REQUIRE(kind_of([&] { sum.inv(); }) == ErrorKind::NonMonomialInverse);
  Scalar a = Scalar::param("a0", 8);
  REQUIRE(kind_of([&] { a.inv(); }) == ErrorKind::NonMonomialInverse);
}

TEST_CASE("p-adic valuation") {
  REQUIRE(Scalar::p_pow2(3, 8).p_valuation() == HalfInt{3});
  Scalar s = Scalar::p_int_pow(1, 8) + Scalar::p_int_pow(2, 8);
  REQUIRE(s.p_valuation() == HalfInt::whole(1));
  REQUIRE(kind_of([] { Scalar::zero(8).p_valuation(); }) ==
          ErrorKind::ZeroValuation);
  Scalar withpar = Scalar::param("a0", 8) * Scalar::p_int_pow(2, 8);
  REQUIRE(kind_of([&] { withpar.p_valuation(); }) == ErrorKind::ParamValuation);
}

TEST_CASE("canonical rendering") {
  REQUIRE(Scalar::zero(8).to_string() == "0");
  REQUIRE(Scalar::one(8).to_string() == "1");
  REQUIRE(Scalar::integer(-3, 8).to_string() == "-3");
  REQUIRE(Scalar::monomial(-1, 2, 3, {}, 8).to_string() == "-zeta8^2*p^(3/2)");
  REQUIRE(Scalar::monomial(2, 0, 2, {}, 8).to_string() == "2*p");
  REQUIRE(Scalar::monomial(1, 0, 4, {}, 8).to_string() == "p^2");
  REQUIRE(Scalar::monomial(1, 0, -2, {}, 8).to_string() == "p^(-1)");
  REQUIRE(Scalar::monomial(1, 1, 0, {{"a0", 1}, {"a1", 2}}, 24).to_string() ==
          "zeta24^1*a0*a1^2");
  Scalar mixed = Scalar::one(8) - Scalar::p_int_pow(1, 8);
  REQUIRE(mixed.to_string() == "1 - p");
}

TEST_CASE("parse inverts rendering") {
  REQUIRE(Scalar::parse("-zeta8^2*p^(3/2)", 8) ==
          Scalar::monomial(-1, 2, 3, {}, 8));
  REQUIRE(Scalar::parse("0", 8) == Scalar::zero(8));
  REQUIRE(Scalar::parse("1 - p", 8) ==
          Scalar::one(8) - Scalar::p_int_pow(1, 8));
  REQUIRE(Scalar::parse("zeta4^1", 8) == Scalar::zeta_pow(2, 8));
  REQUIRE(Scalar::parse("zeta8^2", 24) == Scalar::zeta_pow(6, 24));
  REQUIRE(Scalar::parse("2*a0^2*p^(-1)", 8) ==
          Scalar::monomial(2, 0, -2, {{"a0", 2}}, 8));
  REQUIRE_THROWS_AS(Scalar::parse("zeta16^1", 8), std::invalid_argument);
  REQUIRE_THROWS_AS(Scalar::parse("p^(1/3)", 8), std::invalid_argument);
  REQUIRE_THROWS_AS(Scalar::parse("", 8), std::invalid_argument);
  REQUIRE_THROWS_AS(Scalar::parse("1 +", 8), std::invalid_argument);
}

TEST_CASE("parse round-trips random scalars") {
  std::mt19937_64 rng(20260815);
  for (int order : {8, 24}) {
    for (int trial = 0; trial < 500; ++trial) {
      Scalar s = random_scalar(rng, order);
      REQUIRE(Scalar::parse(s.to_string(), order) == s);
    }
  }
}

TEST_CASE("ring axioms hold on random samples") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    Scalar a = random_scalar(rng, 8), b = random_scalar(rng, 8),
           c = random_scalar(rng, 8);
    REQUIRE(a + b == b + a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + Scalar::zero(8) == a);
    REQUIRE(a * Scalar::one(8) == a);
    REQUIRE(a - a == Scalar::zero(8));
  }
}

TEST_CASE("mixed zeta orders are rejected") {
  Scalar a = Scalar::one(8), b = Scalar::one(24);
  REQUIRE_THROWS_AS(a + b, std::invalid_argument);
  REQUIRE_THROWS_AS(a * b, std::invalid_argument);
  REQUIRE(a != b);
}

TEST_CASE("half-integers") {
  REQUIRE(HalfInt{3}.to_string() == "3/2");
  REQUIRE(HalfInt{-1}.to_string() == "-1/2");
  REQUIRE(HalfInt::whole(2).to_string() == "2");
  REQUIRE(HalfInt::whole(2).integer() == 2);
  REQUIRE(!HalfInt{3}.is_integer());
  REQUIRE(HalfInt{1} + HalfInt{1} == HalfInt::whole(1));
}
