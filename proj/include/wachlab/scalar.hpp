#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wachlab {

// A half-integer, stored as its double.  Used for p-adic exponents and
// valuations, which live in (1/2)Z once square roots of p enter the picture.
struct HalfInt {
  long long tw = 0;  // the doubled value: HalfInt{3} means 3/2

  static HalfInt whole(long long n) { return HalfInt{2 * n}; }
  bool is_integer() const { return tw % 2 == 0; }
  long long integer() const {
    if (!is_integer()) throw std::logic_error("HalfInt: not an integer");
    return tw / 2;
  }
  friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.tw + b.tw}; }
  friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.tw - b.tw}; }
  friend HalfInt operator-(HalfInt a) { return HalfInt{-a.tw}; }
  friend bool operator==(HalfInt a, HalfInt b) { return a.tw == b.tw; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.tw != b.tw; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.tw < b.tw; }
  friend bool operator<=(HalfInt a, HalfInt b) { return a.tw <= b.tw; }
  friend bool operator>(HalfInt a, HalfInt b) { return a.tw > b.tw; }
  friend bool operator>=(HalfInt a, HalfInt b) { return a.tw >= b.tw; }

  std::string to_string() const {
    if (is_integer()) return std::to_string(tw / 2);
    return std::to_string(tw) + "/2";
  }
};

// Exact scalar ring
//
//   Z[zeta_N] (+) Z[p^{1/2}, p^{-1/2}] (+) Z[a_0, a_1, ...]
//
// with zeta_N a primitive N-th root of unity for even N, modelled as
// Z[x]/(x^{N/2} + 1) by folding zeta^{N/2} = -1 into coefficient signs.
// "p" is a formal symbol (the residue characteristic); its exponents are
// half-integers stored doubled.  Parameters are free polynomial variables
// with non-negative exponents.  Terms are kept sorted and merged, so
// equality is structural.
class Scalar {
 public:
  struct Term {
    long long coeff = 0;
    long long zeta = 0;  // canonical exponent in [0, N/2)
    long long p2 = 0;    // doubled exponent of p
    std::map<std::string, int> params;
  };

  explicit Scalar(int zeta_order) : order_(zeta_order) {
    if (zeta_order < 2 || zeta_order % 2 != 0)
      throw std::invalid_argument("Scalar: zeta order must be even and >= 2");
  }

  // --- constructors -------------------------------------------------------

  static Scalar zero(int order) { return Scalar(order); }

  static Scalar integer(long long v, int order) {
    Scalar s(order);
    s.push_raw(v, 0, 0, {});
    s.normalize();
    return s;
  }

  static Scalar one(int order) { return integer(1, order); }

  static Scalar zeta_pow(long long e, int order) {
    Scalar s(order);
    s.push_raw(1, e, 0, {});
    s.normalize();
    return s;
  }

  static Scalar sqrt_minus_one(int order) {
    if (order % 4 != 0)
      throw std::invalid_argument("Scalar: order lacks a square root of -1");
    return zeta_pow(order / 4, order);
  }

  // p^(tw/2)
  static Scalar p_pow2(long long tw, int order) {
    Scalar s(order);
    s.push_raw(1, 0, tw, {});
    s.normalize();
    return s;
  }

  static Scalar p_pow(HalfInt e, int order) { return p_pow2(e.tw, order); }
  static Scalar p_int_pow(long long e, int order) { return p_pow2(2 * e, order); }

  static Scalar param(const std::string& name, int order) {
    Scalar s(order);
    s.push_raw(1, 0, 0, {{name, 1}});
    s.normalize();
    return s;
  }

  static Scalar monomial(long long coeff, long long zeta, long long p2,
                         std::map<std::string, int> params, int order) {
    Scalar s(order);
    s.push_raw(coeff, zeta, p2, std::move(params));
    s.normalize();
    return s;
  }

  // --- queries -------------------------------------------------------------

  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].zeta == 0 &&
           terms_[0].p2 == 0 && terms_[0].params.empty();
  }
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_params() const {
    for (const Term& t : terms_)
      if (!t.params.empty()) return true;
    return false;
  }

  const Term& term() const {
    if (!is_monomial()) throw std::logic_error("Scalar: not a monomial");
    return terms_[0];
  }

  // p-adic valuation.  Exact for any nonzero parameter-free scalar: distinct
  // canonical terms are linearly independent over Z, so the minimum exponent
  // never cancels.
  HalfInt p_valuation() const {
    if (is_zero()) throw Error(ErrorKind::ZeroValuation, "valuation of zero");
    if (has_params())
      throw Error(ErrorKind::ParamValuation,
                  "valuation undetermined while parameters remain");
    long long m = terms_[0].p2;
    for (const Term& t : terms_) m = std::min(m, t.p2);
    return HalfInt{m};
  }

  // --- arithmetic ----------------------------------------------------------

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_order(b);
    Scalar r(a.order_);
    r.terms_ = a.terms_;
    for (const Term& t : b.terms_) r.terms_.push_back(t);
    r.normalize();
    return r;
  }

  friend Scalar operator-(const Scalar& a) {
    Scalar r = a;
    for (Term& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_order(b);
    Scalar r(a.order_);
    for (const Term& x : a.terms_)
      for (const Term& y : b.terms_) {
        std::map<std::string, int> par = x.params;
        for (const auto& [k, v] : y.params) par[k] += v;
        r.push_raw(x.coeff * y.coeff, x.zeta + y.zeta, x.p2 + y.p2,
                   std::move(par));
      }
    r.normalize();
    return r;
  }

  friend Scalar operator*(long long c, const Scalar& a) {
    Scalar r = a;
    for (Term& t : r.terms_) t.coeff *= c;
    r.normalize();
    return r;
  }

  Scalar pow(unsigned e) const {
    Scalar r = one(order_);
    for (unsigned i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  // Inverse of a monomial unit: coefficient +-1, no parameter factors.
  Scalar inv() const {
    if (!is_monomial())
      throw Error(ErrorKind::NonMonomialInverse, "inverse of " + to_string());
    const Term& t = terms_[0];
    if (!t.params.empty())
      throw Error(ErrorKind::NonMonomialInverse,
                  "parameter factor in " + to_string());
    if (t.coeff != 1 && t.coeff != -1)
      throw Error(ErrorKind::NonMonomialInverse,
                  "non-unit coefficient in " + to_string());
    Scalar r(order_);
    r.push_raw(t.coeff, -t.zeta, -t.p2, {});
    r.normalize();
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
      const Term &x = a.terms_[i], &y = b.terms_[i];
      if (x.coeff != y.coeff || x.zeta != y.zeta || x.p2 != y.p2 ||
          x.params != y.params)
        return false;
    }
    return true;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // --- rendering -----------------------------------------------------------

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
      if (first) {
        if (t.coeff < 0) os << '-';
      } else {
        os << (t.coeff < 0 ? " - " : " + ");
      }
      first = false;
      long long mag = t.coeff < 0 ? -t.coeff : t.coeff;
      std::vector<std::string> factors;
      if (t.zeta != 0)
        factors.push_back("zeta" + std::to_string(order_) + "^" +
                          std::to_string(t.zeta));
      if (t.p2 != 0) factors.push_back(render_p(t.p2));
      for (const auto& [name, e] : t.params)
        factors.push_back(e == 1 ? name : name + "^" + std::to_string(e));
      if (factors.empty()) {
        os << mag;
      } else {
        if (mag != 1) os << mag << '*';
        for (size_t i = 0; i < factors.size(); ++i) {
          if (i) os << '*';
          os << factors[i];
        }
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

  // Parses the canonical rendering back into a scalar of the given order.
  // Accepts any zeta<k> with k dividing the target order and rebases it.
  static Scalar parse(std::string_view src, int order) {
    Parser p{src, 0};
    Scalar r(order);
    p.skip_ws();
    if (p.at_end()) throw std::invalid_argument("Scalar::parse: empty input");
    long long sign = 1;
    if (p.eat('-'))
      sign = -1;
    else
      p.eat('+');
    for (;;) {
      parse_product(p, sign, order, r);
      p.skip_ws();
      if (p.eat('+'))
        sign = 1;
      else if (p.eat('-'))
        sign = -1;
      else
        break;
    }
    p.skip_ws();
    if (!p.at_end())
      throw std::invalid_argument("Scalar::parse: trailing input at offset " +
                                  std::to_string(p.i));
    r.normalize();
    return r;
  }

 private:
  int order_;
  std::vector<Term> terms_;

  void check_order(const Scalar& other) const {
    if (order_ != other.order_)
      throw std::invalid_argument("Scalar: mixed zeta orders " +
                                  std::to_string(order_) + " vs " +
                                  std::to_string(other.order_));
  }

  // Push a term, folding zeta into [0, N/2) via zeta^{N/2} = -1.
  void push_raw(long long coeff, long long zeta, long long p2,
                std::map<std::string, int> params) {
    long long half = order_ / 2;
    long long z = zeta % order_;
    if (z < 0) z += order_;
    if (z >= half) {
      z -= half;
      coeff = -coeff;
    }
    for (auto it = params.begin(); it != params.end();) {
      if (it->second == 0)
        it = params.erase(it);
      else if (it->second < 0)
        throw std::invalid_argument("Scalar: negative parameter exponent");
      else
        ++it;
    }
    terms_.push_back(Term{coeff, z, p2, std::move(params)});
  }

  static bool key_less(const Term& a, const Term& b) {
    if (a.params != b.params) return a.params < b.params;
    if (a.p2 != b.p2) return a.p2 < b.p2;
    return a.zeta < b.zeta;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), key_less);
    std::vector<Term> merged;
    for (Term& t : terms_) {
      if (!merged.empty() && !key_less(merged.back(), t) &&
          !key_less(t, merged.back())) {
        merged.back().coeff += t.coeff;
        if (merged.back().coeff == 0) merged.pop_back();
      } else if (t.coeff != 0) {
        merged.push_back(std::move(t));
      }
    }
    terms_ = std::move(merged);
  }

  static std::string render_p(long long p2) {
    if (p2 == 2) return "p";
    if (p2 % 2 == 0) {
      long long e = p2 / 2;
      if (e > 0) return "p^" + std::to_string(e);
      return "p^(" + std::to_string(e) + ")";
    }
    return "p^(" + std::to_string(p2) + "/2)";
  }

  struct Parser {
    std::string_view s;
    size_t i;
    bool at_end() const { return i >= s.size(); }
    void skip_ws() {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
      if (i < s.size() && s[i] == c) {
        ++i;
        return true;
      }
      return false;
    }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
    long long read_int() {
      skip_ws();
      long long sign = 1;
      if (eat('-')) sign = -1;
      if (!isdigit(static_cast<unsigned char>(peek())))
        throw std::invalid_argument("Scalar::parse: expected integer at " +
                                    std::to_string(i));
      long long v = 0;
      while (isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s[i++] - '0');
      return sign * v;
    }
    std::string read_ident() {
      std::string out;
      while (i < s.size() &&
             (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        out.push_back(s[i++]);
      return out;
    }
  };

  // Doubled exponent after "p^": either a bare integer or "(n)" / "(n/2)".
  static long long parse_p_exp(Parser& p) {
    p.skip_ws();
    if (p.eat('(')) {
      long long n = p.read_int();
      long long tw;
      if (p.eat('/')) {
        if (p.read_int() != 2)
          throw std::invalid_argument("Scalar::parse: only /2 denominators");
        tw = n;
      } else {
        tw = 2 * n;
      }
      if (!p.eat(')'))
        throw std::invalid_argument("Scalar::parse: missing ')'");
      return tw;
    }
    return 2 * p.read_int();
  }

  static void parse_product(Parser& p, long long sign, int order, Scalar& out) {
    long long coeff = sign, zeta = 0, p2 = 0;
    std::map<std::string, int> params;
    for (;;) {
      p.skip_ws();
      char c = p.peek();
      if (isdigit(static_cast<unsigned char>(c))) {
        coeff *= p.read_int();
      } else if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id = p.read_ident();
        if (id == "p") {
          p2 += p.eat('^') ? parse_p_exp(p) : 2;
        } else if (id.size() > 4 && id.rfind("zeta", 0) == 0 &&
                   std::all_of(id.begin() + 4, id.end(), [](char ch) {
                     return isdigit(static_cast<unsigned char>(ch));
                   })) {
          int base = std::stoi(id.substr(4));
          if (base <= 0 || order % base != 0)
            throw std::invalid_argument("Scalar::parse: zeta order " +
                                        std::to_string(base) +
                                        " does not divide " +
                                        std::to_string(order));
          long long e = p.eat('^') ? p.read_int() : 1;
          zeta += e * (order / base);
        } else {
          long long e = p.eat('^') ? p.read_int() : 1;
          if (e < 1)
            throw std::invalid_argument(
                "Scalar::parse: parameter exponent must be positive");
          params[id] += static_cast<int>(e);
        }
      } else {
        throw std::invalid_argument("Scalar::parse: unexpected character at " +
                                    std::to_string(p.i));
      }
      p.skip_ws();
      if (!p.eat('*')) break;
    }
    out.push_raw(coeff, zeta, p2, std::move(params));
  }
};

}  // namespace wachlab
