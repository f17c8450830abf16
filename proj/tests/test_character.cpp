#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "wachlab/character.hpp"

using namespace wachlab;
using wachlab::testing::fixture25_level1;
using wachlab::testing::fixture28_level1;
using wachlab::testing::fixture_q;
using wachlab::testing::kind_of;

namespace {

constexpr int N8 = 8;

RankOneModule second_constituent(long long k0, long long k1, bool first_family) {
  FilteredPhiModule d =
      first_family ? fixture25_level1(k0, k1) : fixture28_level1(k0, k1);
  auto [c1, c2] = split_rank_one(base_change(restrict(d, 2), fixture_q(k1)));
  (void)c1;
  return c2;
}

}  // namespace

TEST_CASE("normalized Frobenius vectors read off their character") {
  // (zeta8, zeta8, zeta8 p^2, zeta8 p^1): unramified part is the principal
  // fourth root of zeta8^4 = -1, and each p-power lands in its own slot.
  Scalar c = Scalar::zeta_pow(1, N8);
  Tuple v({c, c, c * Scalar::p_int_pow(2, N8), c * Scalar::p_int_pow(1, N8)});
  CrystallineCharacter chr = from_rank_one(v);
  CHECK(chr.exps == std::vector<long long>{0, 0, 2, 1});
  CHECK(chr.unram == Scalar::zeta_pow(1, N8));
  CHECK(chr.to_string() == "eta(zeta8^1)*chi[2]^2*chi[3]^1");

  CHECK(from_rank_one(Tuple::constant(Scalar::one(N8), 3)).to_string() == "1");
}

TEST_CASE("rank-one modules normalize before reading the character") {
  for (long long k0 = 1; k0 <= 3; ++k0)
    for (long long k1 = 1; k1 <= 3; ++k1) {
      CrystallineCharacter chr = from_rank_one(second_constituent(k0, k1, true));
      CHECK(chr.exps == std::vector<long long>{0, 0, k1, k0});
      CHECK(chr.unram == Scalar::zeta_pow(1, N8));

      CrystallineCharacter other =
          from_rank_one(second_constituent(k0, k1, false));
      CHECK(other.exps == std::vector<long long>{0, k0, k1, 0});
      CHECK(other.unram == Scalar::zeta_pow(1, N8));
    }
  CHECK(from_rank_one(second_constituent(1, 2, true)).to_string() ==
        "eta(zeta8^1)*chi[2]^2*chi[3]^1");
  CHECK(from_rank_one(second_constituent(1, 2, false)).to_string() ==
        "eta(zeta8^1)*chi[1]^1*chi[2]^2");
}

TEST_CASE("character extraction rejects non-normalized vectors") {
  Scalar one = Scalar::one(N8);
  // Half-integer p-power in a single slot.
  CHECK(kind_of([&] {
          from_rank_one(Tuple({Scalar::monomial(1, 0, 3, {}, N8), one}));
        }) == ErrorKind::NonNormalized);
  // Negative p-exponent.
  CHECK(kind_of([&] {
          from_rank_one(Tuple({Scalar::p_int_pow(-1, N8), one}));
        }) == ErrorKind::NonNormalized);
  // Non-unit coefficient.
  CHECK(kind_of([&] {
          from_rank_one(Tuple({Scalar::integer(2, N8), one}));
        }) == ErrorKind::NonNormalized);
  // Unit product without an m-th root: i is no fourth power in order 8.
  CHECK(kind_of([&] {
          from_rank_one(
              Tuple({Scalar::sqrt_minus_one(N8), one, one, one}));
        }) == ErrorKind::NonNormalized);
}

TEST_CASE("exponent split of the general odd-degree family") {
  SECTION("degree three, all slots of the first shape") {
    EllSData es = ell_s_vectors({1, 1, 1}, {1, 2, 3});
    CHECK(es.ell == std::vector<long long>{1, 0, 3, 0, 2, 0});
    CHECK(es.s == std::vector<long long>{0, 2, 0, 1, 0, 3});
    CHECK(es.t == 3);
  }
  SECTION("degree one, one of each shape") {
    long long k = 5;
    for (int ty : {1, 2}) {
      EllSData es = ell_s_vectors({ty}, {k});
      CHECK(es.ell == std::vector<long long>{k, 0});
      CHECK(es.s == std::vector<long long>{0, k});
      CHECK(es.t == 1);
    }
    for (int ty : {3, 4}) {
      EllSData es = ell_s_vectors({ty}, {k});
      CHECK(es.ell == std::vector<long long>{0, k});
      CHECK(es.s == std::vector<long long>{k, 0});
      CHECK(es.t == 1);
    }
  }
  SECTION("even degree is rejected") {
    CHECK(kind_of([&] { ell_s_vectors({1, 1}, {1, 2}); }) ==
          ErrorKind::EvenDegree);
  }
  SECTION("structural identities over all shape vectors") {
    for (int f : {1, 3}) {
      std::vector<int> types(static_cast<size_t>(f), 1);
      std::vector<long long> weights;
      for (int i = 0; i < f; ++i) weights.push_back(1 + (i * 2) % 4);
      int combos = 1;
      for (int i = 0; i < f; ++i) combos *= 4;
      for (int code = 0; code < combos; ++code) {
        int c = code;
        for (int i = 0; i < f; ++i) {
          types[static_cast<size_t>(i)] = 1 + c % 4;
          c /= 4;
        }
        EllSData es = ell_s_vectors(types, weights);
        long long total = 0;
        for (int j = 0; j < 2 * f; ++j) {
          total += es.ell[static_cast<size_t>(j)] + es.s[static_cast<size_t>(j)];
          // The two halves are swaps of each other.
          CHECK(es.s[static_cast<size_t>(j)] ==
                es.ell[static_cast<size_t>((j + f) % (2 * f))]);
        }
        CHECK(total == 2 * std::accumulate(weights.begin(), weights.end(), 0LL));
        long long szero =
            std::count(es.s.begin(), es.s.end(), 0LL);
        CHECK(szero == 2 * f - es.t);
      }
    }
  }
}

TEST_CASE("line characters pair exponents one slot forward") {
  SECTION("degree one") {
    CrystallineCharacter chr = line_character({2, 0}, 1, N8);
    CHECK(chr.exps == std::vector<long long>{0, 2});
    // (-1)^1 = zeta8^4 has principal square root zeta8^2.
    CHECK(chr.unram == Scalar::zeta_pow(2, N8));
  }
  SECTION("degree three, order 24") {
    EllSData es = ell_s_vectors({1, 1, 1}, {1, 1, 1});
    CrystallineCharacter chr = line_character(es.ell, es.t, 24);
    CHECK(chr.exps == std::vector<long long>{0, 1, 0, 1, 0, 1});
    // (-1)^3 = zeta24^12 has principal sixth root zeta24^2.
    CHECK(chr.unram == Scalar::zeta_pow(2, 24));
  }
  SECTION("even split count gives a trivial unramified part") {
    CrystallineCharacter chr = line_character({1, 0, 0, 2, 0, 0}, 4, 24);
    CHECK(chr.unram == Scalar::one(24));
    CHECK(chr.exps == std::vector<long long>{0, 1, 0, 0, 2, 0});
  }
}

TEST_CASE("two line characters of one split are Frobenius conjugates") {
  std::vector<long long> weights{1, 4, 2};
  int f = 3;
  for (int code = 0; code < 64; ++code) {
    std::vector<int> types;
    int c = code;
    for (int i = 0; i < f; ++i) {
      types.push_back(1 + c % 4);
      c /= 4;
    }
    EllSData es = ell_s_vectors(types, weights);
    CrystallineCharacter chr_l = line_character(es.ell, es.t, 24);
    CrystallineCharacter chr_s = line_character(es.s, es.t, 24);
    CHECK(chr_s == frobenius_conjugate(chr_l, -f));
  }
}

TEST_CASE("Frobenius conjugation rotates the exponent slots") {
  CrystallineCharacter chr{{0, 0, 2, 1}, Scalar::zeta_pow(1, N8)};
  CrystallineCharacter shifted = frobenius_conjugate(chr, -2);
  CHECK(shifted.exps == std::vector<long long>{2, 1, 0, 0});
  CHECK(shifted.unram == chr.unram);
  CHECK(frobenius_conjugate(chr, 4) == chr);
  CHECK(frobenius_conjugate(frobenius_conjugate(chr, 1), -1) == chr);
  CHECK(frobenius_conjugate(chr, 1).exps == std::vector<long long>{1, 0, 0, 2});
}
