#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wachlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// A power series in pi over exact integers, known below the truncation
// order: coefficients are indexed by pi-degree 0 .. trunc()-1, arithmetic is
// exact below that degree, and no operation reads beyond it.
class TruncSeries {
 public:
  explicit TruncSeries(int trunc) : c_(check(trunc)) {}

  TruncSeries(std::vector<BigInt> coeffs, int trunc) : c_(std::move(coeffs)) {
    check(trunc);
    c_.resize(static_cast<size_t>(trunc));
  }

  static TruncSeries constant(BigInt v, int trunc) {
    TruncSeries s(trunc);
    s.c_[0] = std::move(v);
    return s;
  }

  static TruncSeries pi(int trunc) {
    TruncSeries s(trunc);
    if (trunc > 1) s.c_[1] = 1;
    return s;
  }

  int trunc() const { return static_cast<int>(c_.size()); }
  const BigInt& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  BigInt& coeff(int i) { return c_[static_cast<size_t>(i)]; }

  bool is_zero() const {
    for (const BigInt& v : c_)
      if (v != 0) return false;
    return true;
  }

  // Index of the lowest nonzero coefficient; trunc() when zero throughout.
  int valuation() const {
    for (int i = 0; i < trunc(); ++i)
      if (c_[static_cast<size_t>(i)] != 0) return i;
    return trunc();
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.match(b);
    TruncSeries r(a.trunc());
    for (int i = 0; i < a.trunc(); ++i) r.coeff(i) = a[i] + b[i];
    return r;
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.match(b);
    TruncSeries r(a.trunc());
    for (int i = 0; i < a.trunc(); ++i) r.coeff(i) = a[i] - b[i];
    return r;
  }

  friend TruncSeries operator-(const TruncSeries& a) {
    TruncSeries r(a.trunc());
    for (int i = 0; i < a.trunc(); ++i) r.coeff(i) = -a[i];
    return r;
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.match(b);
    TruncSeries r(a.trunc());
    for (int i = 0; i < a.trunc(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j < a.trunc(); ++j) {
        if (b[j] == 0) continue;
        r.coeff(i + j) += a[i] * b[j];
      }
    }
    return r;
  }

  friend TruncSeries operator*(const BigInt& v, const TruncSeries& a) {
    TruncSeries r(a.trunc());
    for (int i = 0; i < a.trunc(); ++i) r.coeff(i) = v * a[i];
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    a.match(b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) {
    return !(a == b);
  }

  TruncSeries pow(long long e) const {
    TruncSeries r = constant(1, trunc());
    for (long long i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < trunc(); ++i) {
      if (c_[static_cast<size_t>(i)] == 0) continue;
      if (!out.empty()) out += " + ";
      out += c_[static_cast<size_t>(i)].str();
      if (i >= 1) out += "*pi";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    return out + " + O(pi^" + std::to_string(trunc()) + ")";
  }

 private:
  static int check(int trunc) {
    if (trunc < 1)
      throw std::invalid_argument("TruncSeries: truncation order must be >= 1");
    return trunc;
  }
  void match(const TruncSeries& other) const {
    if (trunc() != other.trunc())
      throw std::invalid_argument("TruncSeries: truncation order mismatch");
  }

  std::vector<BigInt> c_;
};

// (1 + pi)^c - 1 as a truncated polynomial, for integer c >= 1.
inline TruncSeries binomial_shift(long long c, int trunc) {
  if (c < 1)
    throw std::invalid_argument("binomial_shift: exponent must be >= 1");
  TruncSeries r(trunc);
  BigInt binom = 1;
  for (long long j = 1; j <= c && j < trunc; ++j) {
    binom = binom * (c - j + 1) / j;
    r.coeff(static_cast<int>(j)) = binom;
  }
  return r;
}

// s(pi) -> s(x) for x with positive valuation, by descending Horner
// evaluation; exact below the shared truncation order.
inline TruncSeries substitute(const TruncSeries& s, const TruncSeries& x) {
  if (s.trunc() != x.trunc())
    throw std::invalid_argument("substitute: truncation order mismatch");
  if (!x.is_zero() && x.valuation() < 1)
    throw std::invalid_argument("substitute: image of pi needs valuation >= 1");
  TruncSeries r(s.trunc());
  for (int i = s.trunc() - 1; i >= 0; --i) {
    r = r * x;
    r.coeff(0) += s[i];
  }
  return r;
}

// The Frobenius on coefficients: pi -> (1 + pi)^p - 1.
inline TruncSeries phi_substitute(const TruncSeries& s, long long p) {
  return substitute(s, binomial_shift(p, s.trunc()));
}

// A cyclotomic-character probe: pi -> (1 + pi)^c - 1 for an integer value c
// of chi(gamma).
inline TruncSeries gamma_substitute(const TruncSeries& s, long long c) {
  return substitute(s, binomial_shift(c, s.trunc()));
}

// q = ((1 + pi)^p - 1) / pi, a degree p-1 polynomial with constant term p.
inline TruncSeries q_series(long long p, int trunc) {
  TruncSeries r(trunc);
  BigInt binom = 1;
  for (long long j = 1; j <= p; ++j) {
    binom = binom * (p - j + 1) / j;
    if (j - 1 < trunc) r.coeff(static_cast<int>(j - 1)) = binom;
  }
  return r;
}

// Decides whether num/den, expanded as a Laurent series in pi, lies in the
// integral series ring through degree horizon-1: division runs over exact
// rationals, negative pi-degrees must vanish and the checked coefficients
// must be integers.  Throws TruncationTooShallow when the truncated data
// cannot settle all required coefficients.
inline bool divides_integrally(const TruncSeries& num, const TruncSeries& den,
                               int horizon) {
  if (horizon < 1)
    throw Error(ErrorKind::TruncationTooShallow,
                "division horizon " + std::to_string(horizon) +
                    " leaves nothing to check");
  if (num.is_zero()) return true;
  int T = num.trunc();
  int v = den.valuation();
  if (v >= T)
    throw Error(ErrorKind::TruncationTooShallow,
                "divisor vanishes below the truncation order");

  // num = (den / pi^v) * Q with Q computable through degree T-1-v; the
  // quotient num/den is Q shifted down by v.  Any residue visible among the
  // computable coefficients settles the answer as false even when deeper
  // coefficients stay out of reach.
  int needed = v + horizon - 1;  // top Q index a "true" verdict requires
  int limit = T - 1 - v;         // top computable Q index
  int top = std::min(needed, limit);

  std::vector<BigRat> q(static_cast<size_t>(top + 1));
  BigRat d0 = BigRat(den[v]);
  for (int i = 0; i <= top; ++i) {
    BigRat acc = BigRat(num[i]);
    for (int j = 1; j <= i; ++j)
      acc -= BigRat(den[v + j]) * q[static_cast<size_t>(i - j)];
    q[static_cast<size_t>(i)] = acc / d0;
  }
  for (int i = 0; i <= top; ++i) {
    if (i < v && q[static_cast<size_t>(i)] != 0)
      return false;  // pi^{i-v} residue
    if (i >= v &&
        boost::multiprecision::denominator(q[static_cast<size_t>(i)]) != 1)
      return false;  // fractional residue
  }
  if (needed > limit)
    throw Error(ErrorKind::TruncationTooShallow,
                "truncation order " + std::to_string(T) +
                    " cannot settle the division through degree " +
                    std::to_string(horizon - 1));
  return true;
}

}  // namespace wachlab
