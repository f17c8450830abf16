#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "product_ring.hpp"

namespace wachlab {

// One stratum of the filtration: for jump positions lo..hi the filtration is
// spanned, slot by slot, by x_s e1 + y_s e2 restricted to the slots where
// support is 1 (the 0/1 vector f_I).
struct FiltrationStep {
  long long lo = 1;
  long long hi = 1;
  std::vector<int> support;  // 0/1 per slot
  Tuple x, y;

  friend bool operator==(const FiltrationStep& a, const FiltrationStep& b) {
    return a.lo == b.lo && a.hi == b.hi && a.support == b.support &&
           a.x == b.x && a.y == b.y;
  }
};

// A rank-one filtered phi-module: Frobenius scalar per slot plus the exit
// level of the filtration jump per slot (0 = no jump there).
struct RankOneModule {
  Tuple frob;
  std::vector<long long> weights;

  int slots() const { return frob.slots(); }
  int order() const { return frob.order(); }
};

struct AdmissibilityReport {
  bool admissible = false;
  HalfInt newton{0};   // t_N: sum of slot determinant valuations
  long long hodge = 0; // t_H: sum of filtration jump positions
  std::string detail;
};

// A rank-two filtered phi-module over the product ring E^m: a 2x2 Frobenius
// matrix per embedding slot and an ordered ladder of filtration steps.
class FilteredPhiModule {
 public:
  FilteredPhiModule(ProductMatrix frob, std::vector<FiltrationStep> steps)
      : frob_(std::move(frob)), steps_(std::move(steps)) {
    int m = frob_.slots();
    long long prev_hi = 0;
    for (const FiltrationStep& st : steps_) {
      if (st.lo <= prev_hi || st.hi < st.lo)
        throw std::invalid_argument("FilteredPhiModule: steps must ascend");
      prev_hi = st.hi;
      if (static_cast<int>(st.support.size()) != m || st.x.slots() != m ||
          st.y.slots() != m)
        throw std::invalid_argument("FilteredPhiModule: step slot mismatch");
      for (int b : st.support)
        if (b != 0 && b != 1)
          throw std::invalid_argument("FilteredPhiModule: support not 0/1");
    }
  }

  const ProductMatrix& frob() const { return frob_; }
  const std::vector<FiltrationStep>& steps() const { return steps_; }
  int slots() const { return frob_.slots(); }
  int order() const { return frob_.order(); }

  // Largest jump position supported at each slot (its labeled weight).
  std::vector<long long> labeled_weights() const {
    std::vector<long long> w(static_cast<size_t>(slots()), 0);
    for (const FiltrationStep& st : steps_)
      for (int s = 0; s < slots(); ++s)
        if (st.support[static_cast<size_t>(s)])
          w[static_cast<size_t>(s)] = std::max(w[static_cast<size_t>(s)], st.hi);
    return w;
  }

 private:
  ProductMatrix frob_;
  std::vector<FiltrationStep> steps_;
};

// Builds the filtration ladder of a family from per-slot exit levels and one
// generator pair: ranges [1, w_0], [w_0 + 1, w_1], ... over the sorted
// distinct positive weights, each supported where the weight still persists.
inline std::vector<FiltrationStep> steps_from_weights(
    const std::vector<long long>& weights, const Tuple& x, const Tuple& y) {
  if (static_cast<int>(weights.size()) != x.slots() || x.slots() != y.slots())
    throw std::invalid_argument("steps_from_weights: slot count mismatch");
  std::vector<long long> levels;
  for (long long w : weights)
    if (w > 0) levels.push_back(w);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<FiltrationStep> steps;
  long long prev = 0;
  for (long long w : levels) {
    FiltrationStep st{prev + 1, w, {}, x, y};
    st.support.reserve(weights.size());
    for (long long ws : weights) st.support.push_back(ws >= w ? 1 : 0);
    steps.push_back(std::move(st));
    prev = w;
  }
  return steps;
}

// Restriction to the unramified extension of degree n: the Frobenius matrix
// and every filtration vector repeat their slot data with period m.
inline FilteredPhiModule restrict(const FilteredPhiModule& d, int n) {
  std::vector<FiltrationStep> steps;
  steps.reserve(d.steps().size());
  int m = d.slots();
  for (const FiltrationStep& st : d.steps()) {
    FiltrationStep out{st.lo, st.hi, {}, st.x.theta_embed(n), st.y.theta_embed(n)};
    out.support.reserve(static_cast<size_t>(n * m));
    for (int s = 0; s < n * m; ++s)
      out.support.push_back(st.support[static_cast<size_t>(s % m)]);
    steps.push_back(std::move(out));
  }
  return FilteredPhiModule(d.frob().tensor_n(n), std::move(steps));
}

// New coordinates (e1, e2) = (eta1, eta2) Q: the Frobenius transforms
// semilinearly and generator coordinate columns transform by Q^{-1}, scaled
// so the leading nonzero component has a positive leading coefficient.
inline FilteredPhiModule base_change(const FilteredPhiModule& d,
                                     const ProductMatrix& q) {
  ProductMatrix nf = semilinear_conjugate(q, d.frob());
  std::vector<FiltrationStep> steps;
  steps.reserve(d.steps().size());
  for (const FiltrationStep& st : d.steps()) {
    std::vector<Scalar> nx, ny;
    nx.reserve(static_cast<size_t>(d.slots()));
    ny.reserve(static_cast<size_t>(d.slots()));
    for (int s = 0; s < d.slots(); ++s) {
      Mat2 qi = Mat2::identity(d.order());
      try {
        qi = q[s].inverse();
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonMonomialInverse)
          throw Error(ErrorKind::SingularBaseChange,
                      "base-change slot " + std::to_string(s) +
                          " has no monomial-unit determinant");
        throw;
      }
      Scalar gx = qi.a * st.x[s] + qi.b * st.y[s];
      Scalar gy = qi.c * st.x[s] + qi.d * st.y[s];
      const Scalar& lead = gx.is_zero() ? gy : gx;
      if (!lead.is_zero() && lead.terms().front().coeff < 0) {
        gx = -gx;
        gy = -gy;
      }
      nx.push_back(std::move(gx));
      ny.push_back(std::move(gy));
    }
    steps.push_back(FiltrationStep{st.lo, st.hi, st.support,
                                   Tuple(std::move(nx)), Tuple(std::move(ny))});
  }
  return FilteredPhiModule(std::move(nf), std::move(steps));
}

namespace detail {

// Whether the step generator at slot s is the given coordinate axis.
inline bool generator_on_axis(const FiltrationStep& st, int s, int axis) {
  bool x0 = st.x[s].is_zero(), y0 = st.y[s].is_zero();
  return axis == 0 ? (!x0 && y0) : (x0 && !y0);
}

}  // namespace detail

// Weak admissibility for a rank-two module whose Frobenius slots are each
// diagonal or antidiagonal with monomial parameter-free entries: checks
// t_N = t_H globally, and t_N(L) >= t_H(L) on every phi-stable axis line L
// (the only stable lines a monomial (anti)diagonal Frobenius admits).
inline AdmissibilityReport check_weak_admissibility(const FilteredPhiModule& d) {
  int m = d.slots();
  const ProductMatrix& frob = d.frob();

  std::vector<bool> swaps(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) {
    const Mat2& t = frob[s];
    for (const Scalar* e : {&t.a, &t.b, &t.c, &t.d}) {
      if (e->has_params() || e->terms().size() > 1)
        throw Error(ErrorKind::NonMonomialFrobenius,
                    "admissibility needs monomial parameter-free entries");
    }
    if (t.is_diagonal())
      swaps[static_cast<size_t>(s)] = false;
    else if (t.is_antidiagonal())
      swaps[static_cast<size_t>(s)] = true;
    else
      throw Error(ErrorKind::NonMonomialFrobenius,
                  "stable-line test needs (anti)diagonal Frobenius slots");
  }

  AdmissibilityReport rep;
  for (int s = 0; s < m; ++s) rep.newton = rep.newton + frob[s].det().p_valuation();
  for (const FiltrationStep& st : d.steps()) {
    long long count = std::accumulate(st.support.begin(), st.support.end(), 0LL);
    rep.hodge += (st.hi - st.lo + 1) * count;
  }
  if (rep.newton != HalfInt::whole(rep.hodge)) {
    rep.detail = "t_N = " + rep.newton.to_string() +
                 " differs from t_H = " + std::to_string(rep.hodge);
    return rep;
  }

  for (int start = 0; start < 2; ++start) {
    std::vector<int> axis(static_cast<size_t>(m) + 1);
    axis[0] = start;
    for (int s = 0; s < m; ++s)
      axis[static_cast<size_t>(s) + 1] = swaps[static_cast<size_t>(s)]
                                             ? 1 - axis[static_cast<size_t>(s)]
                                             : axis[static_cast<size_t>(s)];
    if (axis[static_cast<size_t>(m)] != axis[0]) continue;  // line does not close

    HalfInt line_newton{0};
    long long line_hodge = 0;
    for (int s = 0; s < m; ++s) {
      int r = axis[static_cast<size_t>(s)];
      int c = axis[static_cast<size_t>(s) + 1];
      const Mat2& t = frob[s];
      const Scalar& entry = r == 0 ? (c == 0 ? t.a : t.b) : (c == 0 ? t.c : t.d);
      line_newton = line_newton + entry.p_valuation();
    }
    for (const FiltrationStep& st : d.steps())
      for (int s = 0; s < m; ++s)
        if (st.support[static_cast<size_t>(s)] &&
            detail::generator_on_axis(st, s, axis[static_cast<size_t>(s)]))
          line_hodge += st.hi - st.lo + 1;
    if (HalfInt::whole(line_hodge) > line_newton) {
      rep.detail = "stable axis line starting on e" + std::to_string(start + 1) +
                   " has t_N = " + line_newton.to_string() +
                   " < t_H = " + std::to_string(line_hodge);
      return rep;
    }
  }
  rep.admissible = true;
  return rep;
}

// Weak admissibility for a rank-one module: no proper nonzero sublines exist,
// so the criterion reduces to t_N = t_H on the nose.
inline AdmissibilityReport check_weak_admissibility(const RankOneModule& mod) {
  AdmissibilityReport rep;
  for (int s = 0; s < mod.slots(); ++s) {
    const Scalar& v = mod.frob[s];
    if (v.has_params() || v.terms().size() > 1)
      throw Error(ErrorKind::NonMonomialFrobenius,
                  "admissibility needs monomial parameter-free entries");
    rep.newton = rep.newton + v.p_valuation();
  }
  rep.hodge = std::accumulate(mod.weights.begin(), mod.weights.end(), 0LL);
  rep.admissible = rep.newton == HalfInt::whole(rep.hodge);
  if (!rep.admissible)
    rep.detail = "t_N = " + rep.newton.to_string() +
                 " differs from t_H = " + std::to_string(rep.hodge);
  return rep;
}

// Splits a module with diagonal Frobenius into its two axis constituents.
// A step's jump lands in a constituent at exactly the supported slots where
// its generator is that coordinate axis; slots where the generator mixes the
// axes contribute to neither summand.
inline std::pair<RankOneModule, RankOneModule> split_rank_one(
    const FilteredPhiModule& d) {
  const ProductMatrix& frob = d.frob();
  if (!frob.is_diagonal())
    throw Error(ErrorKind::NotDiagonal,
                "constituent split needs a diagonal Frobenius");
  int m = d.slots();
  std::vector<Scalar> f1, f2;
  std::vector<long long> w1(static_cast<size_t>(m), 0),
      w2(static_cast<size_t>(m), 0);
  for (int s = 0; s < m; ++s) {
    f1.push_back(frob[s].a);
    f2.push_back(frob[s].d);
  }
  for (const FiltrationStep& st : d.steps())
    for (int s = 0; s < m; ++s) {
      if (!st.support[static_cast<size_t>(s)]) continue;
      if (detail::generator_on_axis(st, s, 0))
        w1[static_cast<size_t>(s)] = std::max(w1[static_cast<size_t>(s)], st.hi);
      if (detail::generator_on_axis(st, s, 1))
        w2[static_cast<size_t>(s)] = std::max(w2[static_cast<size_t>(s)], st.hi);
    }
  return {RankOneModule{Tuple(std::move(f1)), std::move(w1)},
          RankOneModule{Tuple(std::move(f2)), std::move(w2)}};
}

// Rescales a rank-one module, slot by slot, into the shape C * p^{n_s} with
// one root of unity C: the p-power moved to slot s is the labeled weight of
// slot s+1 (a p^{w} jump at slot s+1 exits through the Frobenius into slot s
// of the cycle), and C is the principal m-th root of the cyclic product of
// the unit parts, which rank-one base changes cannot alter.
inline RankOneModule normalize_rank_one(const RankOneModule& mod) {
  int m = mod.slots();
  int N = mod.order();

  long long coeff = 1, zeta = 0, p2_total = 0;
  for (int s = 0; s < m; ++s) {
    const Scalar& v = mod.frob[s];
    if (!v.is_monomial() || v.has_params())
      throw Error(ErrorKind::NonNormalized,
                  "Frobenius entry is not a monomial: " + v.to_string());
    const Scalar::Term& t = v.term();
    if (t.coeff != 1 && t.coeff != -1)
      throw Error(ErrorKind::NonNormalized,
                  "non-unit coefficient in " + v.to_string());
    coeff *= t.coeff;
    zeta += t.zeta;
    p2_total += t.p2;
  }
  long long weight_total =
      std::accumulate(mod.weights.begin(), mod.weights.end(), 0LL);
  if (p2_total != 2 * weight_total)
    throw Error(ErrorKind::NonNormalized,
                "Frobenius p-exponent total " + HalfInt{p2_total}.to_string() +
                    " differs from weight total " + std::to_string(weight_total));

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

  std::vector<Scalar> out;
  out.reserve(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) {
    long long n = mod.weights[static_cast<size_t>((s + 1) % m)];
    out.push_back(Scalar::monomial(1, root, 2 * n, {}, N));
  }
  return RankOneModule{Tuple(std::move(out)), mod.weights};
}

}  // namespace wachlab
