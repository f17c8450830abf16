#pragma once

#include <map>
#include <random>
#include <stdexcept>

#include "wachlab/errors.hpp"
#include "wachlab/filtered_module.hpp"
#include "wachlab/product_ring.hpp"
#include "wachlab/scalar.hpp"

namespace wachlab::testing {

// Runs f, which must throw wachlab::Error, and returns the error kind.
template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected a wachlab::Error to be thrown");
}

inline Scalar random_scalar(std::mt19937_64& rng, int order,
                            bool with_params = true) {
  std::uniform_int_distribution<int> nterms(0, 3), coeff(-3, 3),
      zeta(0, 2 * order - 1), pexp(-4, 4), par_exp(0, 2);
  Scalar s = Scalar::zero(order);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    std::map<std::string, int> par;
    if (with_params) {
      if (int e = par_exp(rng)) par["a0"] = e;
      if (int e = par_exp(rng)) par["a1"] = e;
    }
    s = s + Scalar::monomial(coeff(rng), zeta(rng), pexp(rng), par, order);
  }
  return s;
}

inline Scalar random_monomial_unit(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> zeta(0, order - 1), pexp(-3, 3);
  long long coeff = (rng() % 2 == 0) ? 1 : -1;
  return Scalar::monomial(coeff, zeta(rng), pexp(rng), {}, order);
}

// Invertible coordinate change at one slot: (anti)diagonal with unit entries.
inline Mat2 random_unit_mat2(std::mt19937_64& rng, int order) {
  Scalar u = random_monomial_unit(rng, order);
  Scalar v = random_monomial_unit(rng, order);
  return (rng() % 2 == 0) ? Mat2::diagonal(u, v) : Mat2::antidiagonal(u, v);
}

// Level-one data of the two rank-two regression families at a = 0, over the
// order-8 scalar ring: two embedding slots, weights (k0, k1), with the
// p-powers sitting crosswise in the Frobenius.
inline FilteredPhiModule fixture25_level1(long long k0, long long k1) {
  const int N = 8;
  Scalar one = Scalar::one(N);
  ProductMatrix frob(
      {Mat2::antidiagonal(Scalar::integer(-1, N), Scalar::p_int_pow(k1, N)),
       Mat2::diagonal(Scalar::p_int_pow(k0, N), one)});
  Tuple x = Tuple::constant(one, 2);
  Tuple y = Tuple::constant(Scalar::zero(N), 2);
  return FilteredPhiModule(std::move(frob),
                           steps_from_weights({k0, k1}, x, y));
}

inline FilteredPhiModule fixture28_level1(long long k0, long long k1) {
  const int N = 8;
  Scalar one = Scalar::one(N), zero = Scalar::zero(N);
  ProductMatrix frob(
      {Mat2::antidiagonal(Scalar::integer(-1, N), Scalar::p_int_pow(k1, N)),
       Mat2::diagonal(one, Scalar::p_int_pow(k0, N))});
  Tuple x({zero, one});
  Tuple y({one, zero});
  return FilteredPhiModule(std::move(frob),
                           steps_from_weights({k0, k1}, x, y));
}

// The diagonalizing coordinate change of the degree-4 restriction of either
// fixture: antidiagonal(sqrt(-1) p^{-k1/2}, sqrt(-1) p^{k1/2}) at slots 0 and
// 3, identity at slots 1 and 2.
inline ProductMatrix fixture_q(long long k1) {
  const int N = 8;
  Scalar i = Scalar::sqrt_minus_one(N);
  Mat2 a = Mat2::antidiagonal(i * Scalar::p_pow2(-k1, N),
                              i * Scalar::p_pow2(k1, N));
  return ProductMatrix({a, Mat2::identity(N), Mat2::identity(N), a});
}

}  // namespace wachlab::testing
