#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "filtered_module.hpp"

namespace wachlab {

// A crystalline character of the Galois group of the unramified field with
// `level` embeddings: the product of the fundamental crystalline characters
// chi[i] (labeled weight 1 at embedding i, 0 elsewhere) raised to exps[i],
// twisted by the unramified character sending arithmetic Frobenius to unram.
struct CrystallineCharacter {
  std::vector<long long> exps;
  Scalar unram;

  int level() const { return static_cast<int>(exps.size()); }

  std::string to_string() const {
    std::string out;
    if (!unram.is_one()) out = "eta(" + unram.to_string() + ")";
    for (size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "chi[" + std::to_string(i) + "]^" + std::to_string(exps[i]);
    }
    return out.empty() ? "1" : out;
  }

  friend bool operator==(const CrystallineCharacter& a,
                         const CrystallineCharacter& b) {
    return a.exps == b.exps && a.unram == b.unram;
  }
  friend bool operator!=(const CrystallineCharacter& a,
                         const CrystallineCharacter& b) {
    return !(a == b);
  }
};

// The exponent split of the general odd-degree family: l_j + s_j = k_{j mod f},
// with t counting the zero entries of l.
struct EllSData {
  std::vector<long long> ell;
  std::vector<long long> s;
  int t = 0;
};

// Reads off the crystalline character of a normalized rank-one Frobenius
// vector: slot i carrying p^{n_i} contributes chi[i]^{n_i}, and the cyclic
// product of the unit parts contributes the unramified twist by its
// principal m-th root (any other branch differs by a finite-order unramified
// twist, which restriction to inertia discards).
inline CrystallineCharacter from_rank_one(const Tuple& v) {
  int m = v.slots();
  int N = v.order();

  std::vector<long long> exps;
  exps.reserve(static_cast<size_t>(m));
  long long coeff = 1, zeta = 0;
  for (int s = 0; s < m; ++s) {
    const Scalar& e = v[s];
    if (!e.is_monomial() || e.has_params())
      throw Error(ErrorKind::NonNormalized,
                  "Frobenius entry is not a monomial: " + e.to_string());
    const Scalar::Term& t = e.term();
    if (t.coeff != 1 && t.coeff != -1)
      throw Error(ErrorKind::NonNormalized,
                  "non-unit coefficient in " + e.to_string());
    coeff *= t.coeff;
    zeta += t.zeta;
    if (t.p2 % 2 != 0)
      throw Error(ErrorKind::NonNormalized,
                  "half-integer p-exponent at slot " + std::to_string(s));
    if (t.p2 < 0)
      throw Error(ErrorKind::NonNormalized,
                  "negative p-exponent at slot " + std::to_string(s));
    exps.push_back(t.p2 / 2);
  }

  long long u = (zeta + (coeff < 0 ? N / 2 : 0)) % N;
  long long root = -1;
  for (long long e = 0; e < N; ++e)
    if ((static_cast<long long>(m) * e - u) % N == 0) {
      root = e;
      break;
    }
  if (root < 0)
    throw Error(ErrorKind::NonNormalized,
                "unit product has no order-" + std::to_string(m) +
                    " root in the ring");
  return CrystallineCharacter{std::move(exps), Scalar::zeta_pow(root, N)};
}

inline CrystallineCharacter from_rank_one(const RankOneModule& mod) {
  return from_rank_one(normalize_rank_one(mod).frob);
}

// The exponent vectors of the general family for odd residue degree f.
// At X = 0 the type matrix at index j is [[0, beta_j],[gamma_j, 0]] with
// {beta, gamma} = {-1, p^k}: types 1/2 put p^k in gamma, types 3/4 in beta.
// l_j picks up k_{j mod f} exactly when the p-power sits at the parity slot
// (beta for odd j, gamma for even j); s is the complement.
inline EllSData ell_s_vectors(const std::vector<int>& types,
                              const std::vector<long long>& weights) {
  size_t f = types.size();
  if (f == 0 || weights.size() != f)
    throw std::invalid_argument("ell_s_vectors: types/weights length mismatch");
  if (f % 2 == 0)
    throw Error(ErrorKind::EvenDegree,
                "exponent split is defined for odd residue degree only");
  EllSData out;
  out.ell.reserve(2 * f);
  out.s.reserve(2 * f);
  for (size_t j = 0; j < 2 * f; ++j) {
    int ty = types[j % f];
    if (ty < 1 || ty > 4)
      throw std::invalid_argument("ell_s_vectors: type outside 1..4");
    long long k = weights[j % f];
    bool beta_is_pk = (ty == 3 || ty == 4);
    bool gamma_is_pk = (ty == 1 || ty == 2);
    bool picks = (j % 2 == 1) ? beta_is_pk : gamma_is_pk;
    long long l = picks ? k : 0;
    out.ell.push_back(l);
    out.s.push_back(k - l);
    if (l == 0) ++out.t;
  }
  return out;
}

// The crystalline character attached to an exponent vector over the 2f
// embeddings (the q-valuations of a Frobenius-stable line of the restricted
// module), twisted by the unramified character sending Frobenius to a
// principal 2f-th root of (-1)^t.  The exponent at embedding i enters at
// character slot i+1: the valuation at one embedding prescribes the
// filtration jump at the next (compare normalize_rank_one), and this is the
// unique pairing under which the two line characters of a family multiply
// into the determinant class mod p^f-1 (see det_consistency), agreeing with
// the fixture conventions at f <= 2.
inline CrystallineCharacter line_character(const std::vector<long long>& vals,
                                           int t, int order) {
  int m = static_cast<int>(vals.size());
  if (m == 0) throw std::invalid_argument("line_character: empty vector");
  std::vector<long long> exps(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    exps[static_cast<size_t>((i + 1) % m)] = vals[static_cast<size_t>(i)];
  long long u = (t % 2 == 0) ? 0 : order / 2;  // unit product (-1)^t
  long long root = -1;
  for (long long e = 0; e < order; ++e)
    if ((static_cast<long long>(m) * e - u) % order == 0) {
      root = e;
      break;
    }
  if (root < 0)
    throw Error(ErrorKind::NonNormalized,
                "(-1)^t has no order-" + std::to_string(m) +
                    " root in the ring");
  return CrystallineCharacter{std::move(exps), Scalar::zeta_pow(root, order)};
}

// Conjugation by the shift-th power of Frobenius re-labels the embeddings:
// the exponent at slot i moves to slot i + shift.
inline CrystallineCharacter frobenius_conjugate(const CrystallineCharacter& chr,
                                                int shift) {
  int m = chr.level();
  std::vector<long long> exps(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    int j = ((i - shift) % m + m) % m;
    exps[static_cast<size_t>(i)] = chr.exps[static_cast<size_t>(j)];
  }
  return CrystallineCharacter{std::move(exps), chr.unram};
}

}  // namespace wachlab
