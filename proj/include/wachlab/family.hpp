#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "character.hpp"
#include "errors.hpp"
#include "filtered_module.hpp"
#include "product_ring.hpp"
#include "reduction.hpp"
#include "scalar.hpp"
#include "series.hpp"
#include "wach.hpp"

namespace wachlab {

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// One member of the two-parameter representation families: a prime, the
// residue degree, the positive weight vector, and either a shape vector in
// {1,2,3,4}^f or one of the two hard-coded degree-two regression families
// (labels 25 and 28, treated as opaque identifiers).
struct FamilySpec {
  long long p = 3;
  int f = 1;
  std::vector<long long> weights;
  std::vector<int> types;   // empty when family != 0
  int family = 0;           // 0 = general shape vector; 25 / 28 = fixtures
  bool a_symbolic = false;  // carry the deformation parameters a_i formally

  void validate() const {
    if (!is_prime(p))
      throw std::invalid_argument("FamilySpec: p = " + std::to_string(p) +
                                  " is not prime");
    if (f < 1) throw std::invalid_argument("FamilySpec: f must be >= 1");
    if (static_cast<int>(weights.size()) != f)
      throw std::invalid_argument("FamilySpec: need exactly f weights");
    for (long long k : weights)
      if (k < 1)
        throw std::invalid_argument("FamilySpec: weights must be positive");
    if (family != 0 && family != 25 && family != 28)
      throw std::invalid_argument("FamilySpec: unknown family label " +
                                  std::to_string(family));
    if (family != 0) {
      if (f != 2)
        throw std::invalid_argument(
            "FamilySpec: regression families have residue degree 2");
      if (!types.empty())
        throw std::invalid_argument(
            "FamilySpec: regression families take no shape vector");
    } else {
      if (static_cast<int>(types.size()) != f)
        throw std::invalid_argument("FamilySpec: need exactly f shape entries");
      for (int t : types)
        if (t < 1 || t > 4)
          throw std::invalid_argument(
              "FamilySpec: shape entries must lie in 1..4");
    }
  }

  // Root-of-unity order of the scalar ring: eighth roots for the fixture
  // frames plus 2f-th roots of -1 for the unramified twists.
  int order() const { return static_cast<int>(std::lcm(8LL, 4LL * f)); }

  long long max_weight() const {
    return *std::max_element(weights.begin(), weights.end());
  }

  std::string key() const {
    std::string out = "p=" + std::to_string(p) + " f=" + std::to_string(f);
    if (family != 0) out += " family=" + std::to_string(family);
    out += " k=";
    for (size_t i = 0; i < weights.size(); ++i)
      out += (i ? "," : "") + std::to_string(weights[i]);
    if (!types.empty()) {
      out += " types=";
      for (size_t i = 0; i < types.size(); ++i)
        out += (i ? "," : "") + std::to_string(types[i]);
    }
    return out;
  }
};

namespace detail {

// p-power scale of the deformation entries: floor((k - 1)/(p - 1)) at the
// top weight k.
inline long long alpha_scale(const FamilySpec& spec) {
  return (spec.max_weight() - 1) / (spec.p - 1);
}

// alpha_i = a_i p^m as a scalar; zero unless the spec is symbolic.
inline Scalar alpha_entry(const FamilySpec& spec, int i) {
  int N = spec.order();
  if (!spec.a_symbolic) return Scalar::zero(N);
  return Scalar::monomial(1, 0, 2 * alpha_scale(spec),
                          {{"a" + std::to_string(i), 1}}, N);
}

}  // namespace detail

// The Frobenius matrix of the family: slot i carries its shape matrix
//   (I):  [[0, -1],        (II):  [[a_i p^m, -1],
//          [p^{k_i}, a_i p^m]]     [p^{k_i},  0]]
//   (III):[[a_i p^m, p^{k_i}],(IV):[[0, p^{k_i}],
//          [-1, 0]]               [-1, a_i p^m]]
// or, for the two regression families, the printed degree-two matrices.
inline ProductMatrix build_P(const FamilySpec& spec) {
  spec.validate();
  int N = spec.order();
  Scalar one = Scalar::one(N), minus = Scalar::integer(-1, N),
         zero = Scalar::zero(N);

  if (spec.family != 0) {
    Scalar a0 = detail::alpha_entry(spec, 0), a1 = detail::alpha_entry(spec, 1);
    Scalar pk0 = Scalar::p_int_pow(spec.weights[0], N);
    Scalar pk1 = Scalar::p_int_pow(spec.weights[1], N);
    Mat2 slot0{a1, minus, pk1, zero};
    Mat2 slot1 = spec.family == 25 ? Mat2{pk0, zero, a0, one}
                                   : Mat2{one, zero, a0, pk0};
    return ProductMatrix({std::move(slot0), std::move(slot1)});
  }

  std::vector<Mat2> slots;
  slots.reserve(static_cast<size_t>(spec.f));
  for (int i = 0; i < spec.f; ++i) {
    Scalar a = detail::alpha_entry(spec, i);
    Scalar pk = Scalar::p_int_pow(spec.weights[static_cast<size_t>(i)], N);
    switch (spec.types[static_cast<size_t>(i)]) {
      case 1: slots.push_back(Mat2{zero, minus, pk, a}); break;
      case 2: slots.push_back(Mat2{a, minus, pk, zero}); break;
      case 3: slots.push_back(Mat2{a, pk, minus, zero}); break;
      default: slots.push_back(Mat2{zero, pk, minus, a}); break;
    }
  }
  return ProductMatrix(std::move(slots));
}

// The filtration ladder of the family, from the per-shape generator pairs
// (1,0), (a_t p^m, 1), (0,1), (1, a_t p^m) — or the printed fixture pairs.
inline std::vector<FiltrationStep> build_filtration(const FamilySpec& spec) {
  spec.validate();
  int N = spec.order();
  std::vector<Scalar> xs, ys;

  if (spec.family != 0) {
    Scalar a0 = detail::alpha_entry(spec, 0), a1 = detail::alpha_entry(spec, 1);
    if (spec.family == 25) {
      xs = {Scalar::one(N), Scalar::one(N)};
      ys = {-a0, a1};
    } else {
      xs = {Scalar::zero(N), Scalar::one(N)};
      ys = {Scalar::one(N), a1};
    }
  } else {
    for (int i = 0; i < spec.f; ++i) {
      Scalar a = detail::alpha_entry(spec, i);
      switch (spec.types[static_cast<size_t>(i)]) {
        case 1:
          xs.push_back(Scalar::one(N));
          ys.push_back(Scalar::zero(N));
          break;
        case 2:
          xs.push_back(a);
          ys.push_back(Scalar::one(N));
          break;
        case 3:
          xs.push_back(Scalar::zero(N));
          ys.push_back(Scalar::one(N));
          break;
        default:
          xs.push_back(Scalar::one(N));
          ys.push_back(a);
          break;
      }
    }
  }
  return steps_from_weights(spec.weights, Tuple(std::move(xs)),
                            Tuple(std::move(ys)));
}

inline FilteredPhiModule build_module(const FamilySpec& spec) {
  return FilteredPhiModule(build_P(spec), build_filtration(spec));
}

inline FamilySpec fixture_25(long long p, long long k0, long long k1,
                             bool a_symbolic = false) {
  return FamilySpec{p, 2, {k0, k1}, {}, 25, a_symbolic};
}

inline FamilySpec fixture_28(long long p, long long k0, long long k1,
                             bool a_symbolic = false) {
  return FamilySpec{p, 2, {k0, k1}, {}, 28, a_symbolic};
}

// The printed diagonalizing frame of the regression families: the identity
// at the two middle slots and antidiag(i p^{-k1/2}, i p^{k1/2}) at the outer
// ones.
inline ProductMatrix fixture_frame(const FamilySpec& spec) {
  int N = spec.order();
  long long k1 = spec.weights[1];
  Scalar i = Scalar::sqrt_minus_one(N);
  Mat2 a = Mat2::antidiagonal(i * Scalar::p_pow2(-k1, N),
                              i * Scalar::p_pow2(k1, N));
  return ProductMatrix({a, Mat2::identity(N), Mat2::identity(N), a});
}

// The alternating frame of the general construction: the identity at even
// slots and the coordinate swap at odd slots, which turns a tuple of
// antidiagonal Frobenius matrices into a diagonal one.
inline ProductMatrix alternating_q(int slots, int order) {
  Scalar one = Scalar::one(order);
  Mat2 swap = Mat2::antidiagonal(one, one);
  std::vector<Mat2> out;
  out.reserve(static_cast<size_t>(slots));
  for (int s = 0; s < slots; ++s)
    out.push_back(s % 2 == 0 ? Mat2::identity(order) : swap);
  return ProductMatrix(std::move(out));
}

// Everything the two regression families pin on paper: the diagonalized
// Frobenius branches, the induced character, the reduction orbit relative
// to its printed generator slot, and the irreducibility class.
struct FixtureExpectation {
  Tuple diag_first;   // first eigenvector branch of the diagonalized frame
  Tuple diag_second;  // second branch
  Tuple gen_x, gen_y; // filtration generator columns in that frame
  CrystallineCharacter character;  // of the second (printed) constituent
  int generator_slot = 0;
  std::vector<long long> orbit;    // sorted, relative to generator_slot
  long long irreducibility_divisor = 0;  // p^2 + 1
  long long irreducibility_class = 0;    // divisor | class <=> reducible
};

inline FixtureExpectation fixture_expected(const FamilySpec& spec) {
  spec.validate();
  if (spec.family == 0)
    throw std::invalid_argument(
        "fixture_expected: only the regression families carry printed data");
  int N = spec.order();
  long long p = spec.p, k0 = spec.weights[0], k1 = spec.weights[1];
  Scalar one = Scalar::one(N), zero = Scalar::zero(N);
  Scalar pk0 = Scalar::p_int_pow(k0, N);
  Scalar ip_pos = Scalar::monomial(1, 2, k1, {}, N);   // sqrt(-1) p^{k1/2}
  Scalar ip_neg = Scalar::monomial(-1, 2, k1, {}, N);  // -sqrt(-1) p^{k1/2}
  Scalar ip_inv = Scalar::monomial(1, 2, -k1, {}, N);  // sqrt(-1) p^{-k1/2}

  FixtureExpectation e{Tuple::constant(one, 4), Tuple::constant(one, 4),
                       Tuple::constant(one, 4), Tuple::constant(one, 4),
                       CrystallineCharacter{{0, 0, 0, 0}, Scalar::zeta_pow(1, N)},
                       0, {}, 0, 0};
  e.irreducibility_divisor = p * p + 1;
  if (spec.family == 25) {
    e.diag_first = Tuple({ip_pos, pk0, ip_pos, one});
    e.diag_second = Tuple({ip_neg, one, ip_neg, pk0});
    e.gen_x = Tuple({zero, one, one, zero});
    e.gen_y = Tuple({ip_pos, zero, zero, ip_pos});
    e.character.exps = {0, 0, k1, k0};
    e.generator_slot = 1;
    e.irreducibility_class = k1 + p * k0;
  } else {
    e.diag_first = Tuple({ip_pos, one, ip_pos, pk0});
    e.diag_second = Tuple({ip_neg, pk0, ip_neg, one});
    e.gen_x = Tuple({ip_inv, one, zero, zero});
    e.gen_y = Tuple({zero, zero, one, ip_pos});
    e.character.exps = {0, k0, k1, 0};
    e.generator_slot = 0;
    e.irreducibility_class = k0 + p * k1;
  }
  long long modulus = modarith::checked_pow(p, 4, (1LL << 62), "orbit") - 1;
  long long base = modarith::normalize(-e.irreducibility_class, modulus);
  e.orbit = {base, modarith::mulmod(base, modarith::mulmod(p, p, modulus),
                                    modulus)};
  std::sort(e.orbit.begin(), e.orbit.end());
  return e;
}

// Truncated-series lift of a deformation-free Frobenius matrix: integer
// constants stay put and each p-power becomes the matching q-power.
inline std::vector<SeriesMat> lift_to_series(const ProductMatrix& frob,
                                             long long p, int trunc) {
  TruncSeries q = q_series(p, trunc);
  auto lift = [&](const Scalar& v) {
    if (v.is_zero()) return TruncSeries(trunc);
    if (!v.is_monomial() || v.has_params())
      throw Error(ErrorKind::UnsupportedShape,
                  "series lift needs monomial entries without parameters: " +
                      v.to_string());
    const Scalar::Term& t = v.term();
    if (t.zeta != 0 || t.p2 < 0 || t.p2 % 2 != 0)
      throw Error(ErrorKind::UnsupportedShape,
                  "series lift needs integral p-powers: " + v.to_string());
    return BigInt(t.coeff) * q.pow(t.p2 / 2);
  };
  std::vector<SeriesMat> out;
  out.reserve(static_cast<size_t>(frob.slots()));
  for (int s = 0; s < frob.slots(); ++s) {
    const Mat2& m = frob[s];
    out.push_back(SeriesMat{2, {lift(m.a), lift(m.b), lift(m.c), lift(m.d)}});
  }
  return out;
}

struct WachChecks {
  long long k = 0;
  int truncation = 0;
  bool qk = false;
  bool qk_after_restriction = false;
  std::string gamma = "not supplied";
};

struct AnalysisReport {
  FamilySpec spec;
  CrystallineCharacter character_ell{{0}, Scalar::one(8)};
  CrystallineCharacter character_s{{0}, Scalar::one(8)};
  InertiaCharacter exponent_ell;
  SemisimpleReduction reduction;
  InertiaCharacter det;
  int generator_slot = 0;
  std::vector<long long> orbit;  // reduction exponents relative to that slot
  bool det_ok = false;
  bool star_ok = false;
  bool admissible = false;
  bool irreducible = false;
  bool oracle_agrees = false;
  WachChecks wach;

  // A report is only as good as its independent cross-checks.
  bool valid() const {
    return oracle_agrees && det_ok && star_ok && admissible && wach.qk &&
           wach.qk_after_restriction;
  }
};

// End-to-end pipeline: construct the filtered module, restrict to the
// quadratic extension, diagonalize, split into rank-one constituents,
// read off the pair of crystalline characters, reduce, induce, and run
// every independent consistency check the data admits.
inline AnalysisReport analyze(const FamilySpec& spec, int trunc_override = 0) {
  spec.validate();
  if (spec.a_symbolic)
    throw Error(ErrorKind::UnsupportedShape,
                "analysis runs at the zero deformation; symbolic "
                "parameters are construction-only");
  if (spec.family == 0 && spec.f % 2 == 0)
    throw Error(ErrorKind::UnsupportedShape,
                "even residue degree is only supported for the two "
                "regression families");

  int N = spec.order();
  long long p = spec.p;
  int f = spec.f;

  AnalysisReport rep;
  rep.spec = spec;

  // Geometric pipeline.
  FilteredPhiModule level1 = build_module(spec);
  FilteredPhiModule doubled = restrict(level1, 2);
  ProductMatrix frame = spec.family != 0 ? fixture_frame(spec)
                                         : alternating_q(2 * f, N);
  FilteredPhiModule diagonalized = base_change(doubled, frame);
  auto [first, second] = split_rank_one(diagonalized);

  rep.admissible = check_weak_admissibility(level1).admissible &&
                   check_weak_admissibility(doubled).admissible &&
                   check_weak_admissibility(diagonalized).admissible &&
                   check_weak_admissibility(first).admissible &&
                   check_weak_admissibility(second).admissible;

  // Character pair: the regression families read it off their printed
  // constituents; the general odd-degree shapes use the exponent split,
  // whose slot pairing is pinned by the determinant identity.
  EllSData es;
  if (spec.family != 0) {
    rep.character_ell = from_rank_one(second);
    rep.character_s = from_rank_one(first);
    int m = 2 * f;
    es.ell.resize(static_cast<size_t>(m));
    es.s.resize(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
      es.ell[static_cast<size_t>(j)] =
          rep.character_ell.exps[static_cast<size_t>((j + 1) % m)];
      es.s[static_cast<size_t>(j)] =
          rep.character_s.exps[static_cast<size_t>((j + 1) % m)];
    }
    es.t = static_cast<int>(std::count(es.ell.begin(), es.ell.end(), 0LL));
  } else {
    es = ell_s_vectors(spec.types, spec.weights);
    rep.character_ell = line_character(es.ell, es.t, N);
    rep.character_s = line_character(es.s, es.t, N);
    // The geometric route must agree on the unramified part.
    if (rep.character_ell.unram != from_rank_one(second).unram)
      throw std::logic_error("analyze: unramified parts diverged");
  }

  rep.exponent_ell = reduce_character(rep.character_ell, p);
  rep.reduction = induce_reduction(rep.exponent_ell, f);
  if (induce_reduction(reduce_character(rep.character_s, p), f) !=
      rep.reduction)
    throw std::logic_error("analyze: the two constituents induced "
                           "different reductions");

  rep.det = det_reduction(spec.weights, p, f);
  rep.det_ok = det_consistency(rep.reduction, rep.det, f);
  rep.star_ok = star_identity_check(es, spec.weights, p, f);

  rep.irreducible = is_irreducible_closed_form(rep.exponent_ell.exp, p, f);
  rep.oracle_agrees =
      irreducibility_oracle(rep.exponent_ell.exp, p, f) == rep.irreducible;

  rep.generator_slot = spec.family == 25 ? 1 : 0;
  for (long long e : rep.reduction.exps)
    rep.orbit.push_back(
        InertiaCharacter{p, 2 * f, e}.exp_relative_to(rep.generator_slot));
  std::sort(rep.orbit.begin(), rep.orbit.end());

  // Lattice-level checks on the q-lifted Frobenius.
  long long kmax = spec.max_weight();
  int trunc = trunc_override > 0
                  ? trunc_override
                  : default_truncation(p, kmax);
  WachData wd{lift_to_series(level1.frob(), p, trunc), {}, kmax};
  rep.wach.k = kmax;
  rep.wach.truncation = trunc;
  rep.wach.qk = check_qk_condition(wd, p);
  rep.wach.qk_after_restriction = check_qk_condition(restrict_wach(wd, 2), p);
  return rep;
}

// Regression run of one family instance against its printed expectations;
// returns true when every pinned value matches, collecting mismatch notes.
inline bool run_fixture_regression(const FamilySpec& spec, int trunc_override,
                                   std::string* detail) {
  FixtureExpectation exp = fixture_expected(spec);
  FilteredPhiModule diagonalized =
      base_change(restrict(build_module(spec), 2), fixture_frame(spec));

  bool ok = true;
  auto note = [&](const std::string& msg) {
    ok = false;
    if (detail) *detail += (detail->empty() ? "" : "; ") + msg;
  };

  for (int s = 0; s < 4; ++s) {
    if (diagonalized.frob()[s].a != exp.diag_first[s] ||
        diagonalized.frob()[s].d != exp.diag_second[s]) {
      note("diagonalized Frobenius differs at slot " + std::to_string(s));
      break;
    }
  }
  for (const FiltrationStep& st : diagonalized.steps())
    if (st.x != exp.gen_x || st.y != exp.gen_y) {
      note("filtration generators differ from the printed frame");
      break;
    }

  AnalysisReport rep = analyze(spec, trunc_override);
  if (rep.character_ell != exp.character)
    note("character " + rep.character_ell.to_string() + " differs from " +
         exp.character.to_string());
  if (rep.generator_slot != exp.generator_slot || rep.orbit != exp.orbit)
    note("reduction orbit differs from the printed display");
  bool expect_irreducible =
      exp.irreducibility_class % exp.irreducibility_divisor != 0;
  if (rep.irreducible != expect_irreducible)
    note("irreducibility differs from the weight-class criterion");
  if (!rep.valid()) note("consistency checks failed");
  return ok;
}

}  // namespace wachlab
