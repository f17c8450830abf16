#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace wachlab {

// An element of the product ring E x E x ... x E (one factor per embedding
// slot).  Slot s of a module over the degree-m unramified field corresponds
// to the embedding tau_s; the Frobenius permutes slots by a left shift.
class Tuple {
 public:
  explicit Tuple(std::vector<Scalar> v) : v_(std::move(v)) {
    if (v_.empty()) throw std::invalid_argument("Tuple: no slots");
    for (const Scalar& s : v_)
      if (s.order() != v_[0].order())
        throw std::invalid_argument("Tuple: mixed zeta orders");
  }

  static Tuple constant(const Scalar& s, int m) {
    return Tuple(std::vector<Scalar>(static_cast<size_t>(m), s));
  }

  int slots() const { return static_cast<int>(v_.size()); }
  int order() const { return v_[0].order(); }
  const Scalar& operator[](int s) const { return v_[static_cast<size_t>(s)]; }
  Scalar& operator[](int s) { return v_[static_cast<size_t>(s)]; }

  friend Tuple operator*(const Tuple& a, const Tuple& b) {
    a.check_shape(b);
    std::vector<Scalar> out;
    out.reserve(a.v_.size());
    for (size_t s = 0; s < a.v_.size(); ++s) out.push_back(a.v_[s] * b.v_[s]);
    return Tuple(std::move(out));
  }

  friend Tuple operator+(const Tuple& a, const Tuple& b) {
    a.check_shape(b);
    std::vector<Scalar> out;
    out.reserve(a.v_.size());
    for (size_t s = 0; s < a.v_.size(); ++s) out.push_back(a.v_[s] + b.v_[s]);
    return Tuple(std::move(out));
  }

  friend Tuple operator-(const Tuple& a) {
    std::vector<Scalar> out;
    out.reserve(a.v_.size());
    for (const Scalar& s : a.v_) out.push_back(-s);
    return Tuple(std::move(out));
  }

  friend bool operator==(const Tuple& a, const Tuple& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Tuple& a, const Tuple& b) { return !(a == b); }

  // The Frobenius action on product coordinates: phi(t)_s = t_{(s+1) mod m}.
  Tuple frobenius_shift() const {
    int m = slots();
    std::vector<Scalar> out;
    out.reserve(v_.size());
    for (int s = 0; s < m; ++s) out.push_back(v_[static_cast<size_t>((s + 1) % m)]);
    return Tuple(std::move(out));
  }

  // Coordinate-repetition embedding realizing restriction to the unramified
  // extension of degree n: each embedding of the degree-nm field restricts to
  // the embedding s mod m of the degree-m field.
  Tuple theta_embed(int n) const {
    if (n < 1) throw std::invalid_argument("Tuple: theta_embed needs n >= 1");
    int m = slots();
    std::vector<Scalar> out;
    out.reserve(v_.size() * static_cast<size_t>(n));
    for (int s = 0; s < n * m; ++s) out.push_back(v_[static_cast<size_t>(s % m)]);
    return Tuple(std::move(out));
  }

  Scalar cyclic_product() const {
    Scalar acc = Scalar::one(order());
    for (const Scalar& s : v_) acc = acc * s;
    return acc;
  }

 private:
  std::vector<Scalar> v_;

  void check_shape(const Tuple& other) const {
    if (v_.size() != other.v_.size())
      throw std::invalid_argument("Tuple: slot count mismatch");
  }
};

// A 2x2 matrix over the scalar ring.
struct Mat2 {
  Scalar a, b, c, d;  // [[a, b], [c, d]]

  static Mat2 identity(int order) {
    return Mat2{Scalar::one(order), Scalar::zero(order), Scalar::zero(order),
                Scalar::one(order)};
  }

  static Mat2 diagonal(Scalar x, Scalar y) {
    int n = x.order();
    return Mat2{std::move(x), Scalar::zero(n), Scalar::zero(n), std::move(y)};
  }

  static Mat2 antidiagonal(Scalar x, Scalar y) {
    int n = x.order();
    return Mat2{Scalar::zero(n), std::move(x), std::move(y), Scalar::zero(n)};
  }

  int order() const { return a.order(); }

  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }

  friend bool operator==(const Mat2& m, const Mat2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
  friend bool operator!=(const Mat2& m, const Mat2& n) { return !(m == n); }

  Scalar det() const { return a * d - b * c; }

  // Exact inverse; requires the determinant to be a monomial unit.
  Mat2 inverse() const {
    Scalar di = det().inv();
    return Mat2{d * di, -(b * di), -(c * di), a * di};
  }

  bool is_diagonal() const { return b.is_zero() && c.is_zero(); }
  bool is_antidiagonal() const { return a.is_zero() && d.is_zero(); }
};

// A Frobenius-indexed family of 2x2 matrices, one per embedding slot.
class ProductMatrix {
 public:
  explicit ProductMatrix(std::vector<Mat2> slots) : m_(std::move(slots)) {
    if (m_.empty()) throw std::invalid_argument("ProductMatrix: no slots");
    for (const Mat2& s : m_)
      if (s.a.order() != m_[0].a.order())
        throw std::invalid_argument("ProductMatrix: mixed zeta orders");
  }

  static ProductMatrix identity(int m, int order) {
    return ProductMatrix(
        std::vector<Mat2>(static_cast<size_t>(m), Mat2::identity(order)));
  }

  int slots() const { return static_cast<int>(m_.size()); }
  int order() const { return m_[0].a.order(); }
  const Mat2& operator[](int s) const { return m_[static_cast<size_t>(s)]; }
  Mat2& operator[](int s) { return m_[static_cast<size_t>(s)]; }

  friend ProductMatrix operator*(const ProductMatrix& a, const ProductMatrix& b) {
    if (a.slots() != b.slots())
      throw std::invalid_argument("ProductMatrix: slot count mismatch");
    std::vector<Mat2> out;
    out.reserve(a.m_.size());
    for (size_t s = 0; s < a.m_.size(); ++s) out.push_back(a.m_[s] * b.m_[s]);
    return ProductMatrix(std::move(out));
  }

  friend bool operator==(const ProductMatrix& a, const ProductMatrix& b) {
    return a.m_ == b.m_;
  }
  friend bool operator!=(const ProductMatrix& a, const ProductMatrix& b) {
    return !(a == b);
  }

  ProductMatrix frobenius_shift() const {
    int m = slots();
    std::vector<Mat2> out;
    out.reserve(m_.size());
    for (int s = 0; s < m; ++s) out.push_back(m_[static_cast<size_t>((s + 1) % m)]);
    return ProductMatrix(std::move(out));
  }

  // Entrywise theta embedding (the matrix A^{(x)n} of the restriction map).
  ProductMatrix tensor_n(int n) const {
    if (n < 1) throw std::invalid_argument("ProductMatrix: tensor_n needs n >= 1");
    int m = slots();
    std::vector<Mat2> out;
    out.reserve(m_.size() * static_cast<size_t>(n));
    for (int s = 0; s < n * m; ++s) out.push_back(m_[static_cast<size_t>(s % m)]);
    return ProductMatrix(std::move(out));
  }

  Tuple slot_dets() const {
    std::vector<Scalar> out;
    out.reserve(m_.size());
    for (const Mat2& s : m_) out.push_back(s.det());
    return Tuple(std::move(out));
  }

  bool is_diagonal() const {
    for (const Mat2& s : m_)
      if (!s.is_diagonal()) return false;
    return true;
  }

  // Column action per slot: M^s (x_s, y_s)^T.
  std::pair<Tuple, Tuple> apply(const Tuple& x, const Tuple& y) const {
    if (x.slots() != slots() || y.slots() != slots())
      throw std::invalid_argument("ProductMatrix: vector slot mismatch");
    std::vector<Scalar> nx, ny;
    nx.reserve(m_.size());
    ny.reserve(m_.size());
    for (int s = 0; s < slots(); ++s) {
      const Mat2& t = m_[static_cast<size_t>(s)];
      nx.push_back(t.a * x[s] + t.b * y[s]);
      ny.push_back(t.c * x[s] + t.d * y[s]);
    }
    return {Tuple(std::move(nx)), Tuple(std::move(ny))};
  }

 private:
  std::vector<Mat2> m_;
};

// Base change of a phi-semilinear operator to the coordinates Q:
// Q * A * phi(Q)^{-1}, i.e. slot s becomes Q^s * A^s * (Q^{(s+1) mod m})^{-1}.
inline ProductMatrix semilinear_conjugate(const ProductMatrix& q,
                                          const ProductMatrix& a) {
  if (q.slots() != a.slots())
    throw std::invalid_argument("semilinear_conjugate: slot count mismatch");
  int m = a.slots();
  std::vector<Mat2> out;
  out.reserve(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) {
    try {
      out.push_back(q[s] * a[s] * q[(s + 1) % m].inverse());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NonMonomialInverse)
        throw Error(ErrorKind::SingularBaseChange,
                    "base-change slot " + std::to_string((s + 1) % m) +
                        " has no monomial-unit determinant");
      throw;
    }
  }
  return ProductMatrix(std::move(out));
}

}  // namespace wachlab
