#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "character.hpp"
#include "errors.hpp"

namespace wachlab {

namespace modarith {

inline long long mulmod(long long a, long long b, long long m) {
  return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

// p^e, guarded against exceeding limit (throws TooLarge past it).
inline long long checked_pow(long long p, int e, long long limit,
                             const std::string& what) {
  long long v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > limit / p)
      throw Error(ErrorKind::TooLarge,
                  what + ": " + std::to_string(p) + "^" + std::to_string(e) +
                      " exceeds " + std::to_string(limit));
    v *= p;
  }
  return v;
}

inline long long normalize(long long e, long long m) {
  e %= m;
  return e < 0 ? e + m : e;
}

}  // namespace modarith

// A tame inertia character omega_{level}^exp.  The exponent lives mod
// p^level - 1 and is stored relative to the generator omega_{level, taubar_0};
// moving the reference embedding to taubar_j multiplies the exponent by
// p^{-j} (the generators satisfy omega_{taubar_{i+1}} = omega_{taubar_i}^p).
struct InertiaCharacter {
  long long p = 0;
  int level = 0;
  long long exp = 0;  // reduced mod p^level - 1, relative to taubar_0

  long long modulus() const {
    return modarith::checked_pow(p, level, (1LL << 62), "inertia modulus") - 1;
  }

  // The same character written relative to the generator at embedding j.
  long long exp_relative_to(int j) const {
    long long m = modulus();
    long long shift = ((level - j) % level + level) % level;
    long long pw = modarith::normalize(
        modarith::checked_pow(p, static_cast<int>(shift), (1LL << 62),
                              "generator shift"),
        m);
    return modarith::mulmod(modarith::normalize(exp, m), pw, m);
  }

  friend bool operator==(const InertiaCharacter& a, const InertiaCharacter& b) {
    return a.p == b.p && a.level == b.level && a.exp == b.exp;
  }
};

// The inertia restriction of the semisimplified reduction: an unordered pair
// of level-2f tame exponents (stored sorted; duplicates kept).
struct SemisimpleReduction {
  long long p = 0;
  int level = 0;
  std::vector<long long> exps;  // size 2, sorted, relative to taubar_0

  long long modulus() const {
    return modarith::checked_pow(p, level, (1LL << 62), "reduction modulus") - 1;
  }

  friend bool operator==(const SemisimpleReduction& a,
                         const SemisimpleReduction& b) {
    return a.p == b.p && a.level == b.level && a.exps == b.exps;
  }
};

// Mod-p reduction of a crystalline character on inertia: chi[i]^{n} reduces
// to the tame character omega^{-n p^{i+1}} relative to taubar_0 (the jump at
// embedding i exits through the Frobenius one slot down the cycle), and the
// unramified part dies on inertia.
inline InertiaCharacter reduce_character(const CrystallineCharacter& chr,
                                         long long p) {
  int m = chr.level();
  long long modulus =
      modarith::checked_pow(p, m, (1LL << 62), "reduction modulus") - 1;
  // chi[i]^n contributes -n * p^{(i-1) mod m}: slot i pairs with the
  // fundamental character one embedding back.
  long long e = 0;
  long long pw = 1;  // p^{(1-1) mod m}, advanced from i = 1
  for (int i = 1; i <= m; ++i) {
    long long term = modarith::mulmod(
        modarith::normalize(chr.exps[static_cast<size_t>(i % m)], modulus), pw,
        modulus);
    e = modarith::normalize(e - term, modulus);
    pw = modarith::mulmod(pw, p, modulus);
  }
  return InertiaCharacter{p, m, e};
}

// Inertia restriction of the induction from the degree-2f subfield: the pair
// {e, e * p^f} mod p^{2f} - 1.
inline SemisimpleReduction induce_reduction(const InertiaCharacter& c, int f) {
  if (c.level != 2 * f)
    throw std::invalid_argument("induce_reduction: level must equal 2f");
  long long m = c.modulus();
  long long e = modarith::normalize(c.exp, m);
  long long pf = modarith::normalize(
      modarith::checked_pow(c.p, f, (1LL << 62), "induction twist"), m);
  long long e2 = modarith::mulmod(e, pf, m);
  std::vector<long long> exps{e, e2};
  std::sort(exps.begin(), exps.end());
  return SemisimpleReduction{c.p, c.level, std::move(exps)};
}

// Reduction of the determinant character: level-f exponent
// -(k_0 + k_1 p + ... + k_{f-1} p^{f-1}) mod p^f - 1.
inline InertiaCharacter det_reduction(const std::vector<long long>& weights,
                                      long long p, int f) {
  if (static_cast<int>(weights.size()) != f)
    throw std::invalid_argument("det_reduction: weights length must equal f");
  long long modulus =
      modarith::checked_pow(p, f, (1LL << 62), "determinant modulus") - 1;
  long long e = 0, pw = 1;
  for (int i = 0; i < f; ++i) {
    long long term = modarith::mulmod(
        modarith::normalize(weights[static_cast<size_t>(i)], modulus), pw,
        modulus);
    e = modarith::normalize(e - term, modulus);
    pw = modarith::mulmod(pw, modarith::normalize(p, modulus), modulus);
  }
  return InertiaCharacter{p, f, e};
}

// Exactness of the determinant identity: the two reduction components must
// multiply to the (1 + p^f)-th power of the level-2f lift of det.
inline bool det_consistency(const SemisimpleReduction& red,
                            const InertiaCharacter& det, int f) {
  long long m = red.modulus();
  long long lhs =
      modarith::normalize(red.exps[0] + red.exps[1], m);
  long long pf = modarith::normalize(
      modarith::checked_pow(red.p, f, (1LL << 62), "det lift"), m);
  long long rhs = modarith::mulmod(modarith::normalize(det.exp, m),
                                   modarith::normalize(1 + pf, m), m);
  return lhs == rhs;
}

// The starred congruence of the general family: with L = sum_j l_j p^j and
// D the level-2f residue of the determinant exponent,
//   L + (1 + p^f) D = -p^f L  (mod p^{2f} - 1),
// which holds identically because l_j + l_{j+f} = k_j.
inline bool star_identity_check(const EllSData& data,
                                const std::vector<long long>& weights,
                                long long p, int f) {
  if (static_cast<int>(data.ell.size()) != 2 * f ||
      static_cast<int>(weights.size()) != f)
    throw std::invalid_argument("star_identity_check: length mismatch");
  long long m =
      modarith::checked_pow(p, 2 * f, (1LL << 62), "star modulus") - 1;
  long long L = 0, pw = 1;
  for (int j = 0; j < 2 * f; ++j) {
    L = modarith::normalize(
        L + modarith::mulmod(
                modarith::normalize(data.ell[static_cast<size_t>(j)], m), pw, m),
        m);
    pw = modarith::mulmod(pw, modarith::normalize(p, m), m);
  }
  long long D = 0;
  pw = 1;
  for (int j = 0; j < f; ++j) {
    D = modarith::normalize(
        D - modarith::mulmod(
                modarith::normalize(weights[static_cast<size_t>(j)], m), pw, m),
        m);
    pw = modarith::mulmod(pw, modarith::normalize(p, m), m);
  }
  long long pf = modarith::normalize(
      modarith::checked_pow(p, f, (1LL << 62), "star twist"), m);
  long long lhs = modarith::normalize(
      L + modarith::mulmod(modarith::normalize(1 + pf, m), D, m), m);
  long long rhs = modarith::normalize(-modarith::mulmod(pf, L, m), m);
  return lhs == rhs;
}

// Closed form: the induced reduction with exponent e is irreducible exactly
// when p^f + 1 does not divide e (the exponent class cannot descend one
// level).  Divisibility is invariant under the generator shifts e -> e p^j.
inline bool is_irreducible_closed_form(long long e, long long p, int f) {
  long long m =
      modarith::checked_pow(p, 2 * f, (1LL << 62), "irreducibility modulus") - 1;
  long long q = modarith::checked_pow(p, f, (1LL << 62), "irreducibility") + 1;
  return modarith::normalize(e, m) % q != 0;
}

// Independent brute-force check: reducibility means some level-f exponent m'
// lifts to e through the norm exponent 1 + p^f; search all residues.
inline bool irreducibility_oracle(long long e, long long p, int f) {
  long long big =
      modarith::checked_pow(p, 2 * f, 10000000LL, "oracle enumeration");
  long long m = big - 1;
  long long pf = modarith::checked_pow(p, f, (1LL << 62), "oracle twist");
  long long target = modarith::normalize(e, m);
  for (long long cand = 0; cand < m; ++cand)
    if (modarith::mulmod(modarith::normalize(1 + pf, m), cand, m) == target)
      return false;  // reducible
  return true;
}

}  // namespace wachlab
