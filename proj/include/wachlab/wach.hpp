#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace wachlab {

// A square matrix (dimension 1 or 2) over truncated series, row-major.
struct SeriesMat {
  int dim = 1;
  std::vector<TruncSeries> e;

  static SeriesMat identity(int dim, int trunc) {
    SeriesMat m{dim, {}};
    m.e.reserve(static_cast<size_t>(dim) * static_cast<size_t>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        m.e.push_back(TruncSeries::constant(r == c ? 1 : 0, trunc));
    return m;
  }

  const TruncSeries& at(int r, int c) const {
    return e[static_cast<size_t>(r * dim + c)];
  }
  TruncSeries& at(int r, int c) { return e[static_cast<size_t>(r * dim + c)]; }

  int trunc() const { return e.front().trunc(); }

  TruncSeries det() const {
    if (dim == 1) return e[0];
    return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  }

  // adj(M) with M * adj(M) = det(M) * Id.
  SeriesMat adjugate() const {
    if (dim == 1) return SeriesMat{1, {TruncSeries::constant(1, trunc())}};
    return SeriesMat{2, {at(1, 1), -at(0, 1), -at(1, 0), at(0, 0)}};
  }
};

// One probed value of the cyclotomic character together with the matrix of
// that semilinear action on the module basis.
struct GammaProbe {
  long long chi = 1;
  std::vector<SeriesMat> g;  // one matrix per embedding slot
};

// Frobenius (and optional Gamma) matrices of a lattice basis over the
// truncated coefficient ring, one square matrix per embedding slot, plus the
// weight bound k of the q-power condition.
struct WachData {
  std::vector<SeriesMat> pi;
  std::vector<GammaProbe> gamma;  // empty = not supplied
  long long k = 0;

  int slots() const { return static_cast<int>(pi.size()); }
  int trunc() const { return pi.front().trunc(); }

  void validate() const {
    if (pi.empty()) throw std::invalid_argument("WachData: no Frobenius slots");
    int d = pi.front().dim, t = pi.front().trunc();
    auto check = [&](const std::vector<SeriesMat>& mats) {
      for (const SeriesMat& m : mats)
        if (m.dim != d || m.trunc() != t ||
            m.e.size() != static_cast<size_t>(d) * static_cast<size_t>(d))
          throw std::invalid_argument("WachData: mixed matrix shapes");
    };
    check(pi);
    for (const GammaProbe& gp : gamma) {
      if (gp.g.size() != pi.size())
        throw std::invalid_argument("WachData: gamma slot count mismatch");
      check(gp.g);
    }
  }
};

// Default series truncation for weight-k computations at the prime p.
inline int default_truncation(long long p, long long kmax) {
  return static_cast<int>(std::max(32LL, kmax * (p - 1) + 8));
}

// Whether q^k * Pi^{-1} is integral at every slot through the decidable
// horizon T - k(p-1): by the adjugate formula this asks each division
// (q^k * adj entry) / det to leave neither negative pi-degrees nor
// fractional coefficients.
inline bool check_qk_condition(const WachData& w, long long p) {
  w.validate();
  int T = w.trunc();
  long long horizon = T - w.k * (p - 1);
  if (horizon < 1)
    throw Error(ErrorKind::TruncationTooShallow,
                "truncation " + std::to_string(T) + " cannot decide the q^" +
                    std::to_string(w.k) + " condition at p = " +
                    std::to_string(p));
  TruncSeries qk = q_series(p, T).pow(w.k);
  for (const SeriesMat& slot : w.pi) {
    TruncSeries det = slot.det();
    SeriesMat adj = slot.adjugate();
    for (const TruncSeries& entry : adj.e)
      if (!divides_integrally(qk * entry, det, static_cast<int>(horizon)))
        return false;
  }
  return true;
}

// Whether every supplied gamma matrix is the identity modulo pi.
inline bool check_gamma_trivial_mod_pi(const WachData& w) {
  w.validate();
  if (w.gamma.empty())
    throw Error(ErrorKind::MissingGammaData,
                "no gamma matrices supplied with the Frobenius data");
  for (const GammaProbe& gp : w.gamma)
    for (const SeriesMat& m : gp.g)
      for (int r = 0; r < m.dim; ++r)
        for (int c = 0; c < m.dim; ++c)
          if (m.at(r, c)[0] != (r == c ? 1 : 0)) return false;
  return true;
}

// Restriction to the unramified extension of degree n: every slot list
// repeats its matrices with the original period.
inline WachData restrict_wach(const WachData& w, int n) {
  if (n < 1) throw std::invalid_argument("restrict_wach: n must be >= 1");
  w.validate();
  int m = w.slots();
  auto repeat = [&](const std::vector<SeriesMat>& mats) {
    std::vector<SeriesMat> out;
    out.reserve(static_cast<size_t>(n) * mats.size());
    for (int s = 0; s < n * m; ++s) out.push_back(mats[static_cast<size_t>(s % m)]);
    return out;
  };
  WachData out{repeat(w.pi), {}, w.k};
  out.gamma.reserve(w.gamma.size());
  for (const GammaProbe& gp : w.gamma)
    out.gamma.push_back(GammaProbe{gp.chi, repeat(gp.g)});
  return out;
}

}  // namespace wachlab
