#pragma once

// Truncated Taylor arithmetic in one and two variables, degree <= 5.
//
// Coefficients are Taylor coefficients: the entry for u^a v^b holds
// (∂^{a+b} f / ∂u^a ∂v^b) / (a! b!) at the base point. Every operation is an
// exact truncation of the corresponding operation on power series, so
// derivatives obtained from a jet are exact up to roundoff.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <ostream>

#include "cmclab/core_geometry.hpp"
#include "cmclab/error.hpp"

namespace cmclab {

inline constexpr int kJetDegree = 5;

constexpr double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Point2 {
  double u = 0.0;
  double v = 0.0;
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

namespace detail {
inline void check_degree(int d) {
  if (d < 0 || d > kJetDegree) throw InputError("jet degree must lie in [0, 5]");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Univariate jets

/// Truncated Taylor polynomial of a function of one variable at `base`.
class Jet1 {
 public:
  Jet1() = default;

  static Jet1 constant(double value, double base = 0.0, int degree = kJetDegree) {
    Jet1 j(base, degree);
    j.c_[0] = value;
    return j;
  }
  /// Jet of the identity x ↦ x at `base`.
  static Jet1 variable(double base, int degree = kJetDegree) {
    Jet1 j(base, degree);
    j.c_[0] = base;
    if (degree >= 1) j.c_[1] = 1.0;
    return j;
  }
  static Jet1 from_coefficients(const std::array<double, kJetDegree + 1>& c, double base,
                                int degree) {
    Jet1 j(base, degree);
    for (int k = 0; k <= degree; ++k) j.c_[k] = c[k];
    return j;
  }

  int degree() const { return degree_; }
  double base() const { return base_; }
  double value() const { return c_[0]; }
  double operator[](int k) const { return k <= degree_ ? c_[k] : 0.0; }
  double& coeff(int k) { return c_[k]; }
  /// k-th derivative at the base point.
  double derivative(int k) const { return (*this)[k] * factorial(k); }

  Jet1 differentiate() const {
    if (degree_ == 0) throw Error("jet order exhausted");
    Jet1 d(base_, degree_ - 1);
    for (int k = 0; k < degree_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
    return d;
  }

  Jet1 truncated(int degree) const {
    Jet1 j = *this;
    j.degree_ = std::min(degree_, degree);
    for (int k = j.degree_ + 1; k <= kJetDegree; ++k) j.c_[k] = 0.0;
    return j;
  }

  /// Same coefficients, value coefficient replaced by zero.
  Jet1 displacement() const {
    Jet1 j = *this;
    j.c_[0] = 0.0;
    return j;
  }

  Jet1& operator+=(const Jet1& o) {
    merge(o);
    for (int k = 0; k <= degree_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    merge(o);
    for (int k = 0; k <= degree_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet1& operator*=(const Jet1& o) {
    merge(o);
    std::array<double, kJetDegree + 1> r{};
    for (int i = 0; i <= degree_; ++i)
      for (int j = 0; i + j <= degree_; ++j) r[i + j] += c_[i] * o.c_[j];
    c_ = r;
    return *this;
  }
  Jet1& operator+=(double s) { c_[0] += s; return *this; }
  Jet1& operator-=(double s) { c_[0] -= s; return *this; }
  Jet1& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet1& operator/=(double s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend std::ostream& operator<<(std::ostream& os, const Jet1& j) {
    os << "Jet1@" << j.base_ << '[';
    for (int k = 0; k <= j.degree_; ++k) os << (k ? ", " : "") << j.c_[k];
    return os << ']';
  }

 private:
  Jet1(double base, int degree) : degree_(degree), base_(base) { detail::check_degree(degree); }

  void merge(const Jet1& o) {
    if (o.base_ != base_) throw Error("jets at different base points");
    if (o.degree_ < degree_) *this = truncated(o.degree_);
  }

  std::array<double, kJetDegree + 1> c_{};
  int degree_ = kJetDegree;
  double base_ = 0.0;
};

// ---------------------------------------------------------------------------
// Bivariate jets

/// Truncated bivariate Taylor polynomial at `base`; (D+1)(D+2)/2 coefficients.
class Jet2 {
 public:
  static constexpr int kSize = (kJetDegree + 1) * (kJetDegree + 2) / 2;

  static constexpr int index(int a, int b) {
    const int n = a + b;
    return n * (n + 1) / 2 + b;
  }

  Jet2() = default;

  static Jet2 constant(double value, Point2 base = {}, int degree = kJetDegree) {
    Jet2 j(base, degree);
    j.c_[0] = value;
    return j;
  }
  /// Jet of the coordinate function u at `base` (value base.u, ∂_u = 1).
  static Jet2 coordinate_u(Point2 base, int degree = kJetDegree) {
    Jet2 j(base, degree);
    j.c_[0] = base.u;
    if (degree >= 1) j.c_[index(1, 0)] = 1.0;
    return j;
  }
  static Jet2 coordinate_v(Point2 base, int degree = kJetDegree) {
    Jet2 j(base, degree);
    j.c_[0] = base.v;
    if (degree >= 1) j.c_[index(0, 1)] = 1.0;
    return j;
  }
  /// Jet of an affine function value + gu (u-u0) + gv (v-v0).
  static Jet2 affine(double value, double gu, double gv, Point2 base, int degree = kJetDegree) {
    Jet2 j(base, degree);
    j.c_[0] = value;
    if (degree >= 1) {
      j.c_[index(1, 0)] = gu;
      j.c_[index(0, 1)] = gv;
    }
    return j;
  }

  int degree() const { return degree_; }
  int size() const { return (degree_ + 1) * (degree_ + 2) / 2; }
  Point2 base() const { return base_; }
  double value() const { return c_[0]; }

  double coeff(int a, int b) const {
    return (a >= 0 && b >= 0 && a + b <= degree_) ? c_[index(a, b)] : 0.0;
  }
  void set_coeff(int a, int b, double x) {
    if (a + b > degree_) throw Error("coefficient beyond jet degree");
    c_[index(a, b)] = x;
  }
  /// ∂^{a+b} f / ∂u^a ∂v^b at the base point.
  double partial(int a, int b) const { return coeff(a, b) * factorial(a) * factorial(b); }

  Jet2 du() const {
    if (degree_ == 0) throw Error("jet order exhausted");
    Jet2 d(base_, degree_ - 1);
    for (int n = 0; n < degree_; ++n)
      for (int b = 0; b <= n; ++b) d.c_[index(n - b, b)] = (n - b + 1) * c_[index(n - b + 1, b)];
    return d;
  }
  Jet2 dv() const {
    if (degree_ == 0) throw Error("jet order exhausted");
    Jet2 d(base_, degree_ - 1);
    for (int n = 0; n < degree_; ++n)
      for (int b = 0; b <= n; ++b) d.c_[index(n - b, b)] = (b + 1) * c_[index(n - b, b + 1)];
    return d;
  }

  Jet2 truncated(int degree) const {
    Jet2 j = *this;
    j.degree_ = std::min(degree_, degree);
    for (int i = j.size(); i < kSize; ++i) j.c_[i] = 0.0;
    return j;
  }
  Jet2 displacement() const {
    Jet2 j = *this;
    j.c_[0] = 0.0;
    return j;
  }
  /// Same coefficients, reinterpreted at another base point.
  Jet2 rebased(Point2 base) const {
    Jet2 j = *this;
    j.base_ = base;
    return j;
  }

  /// Largest coefficient magnitude among monomials of total degree in [lo, hi].
  double max_abs(int lo, int hi) const {
    double m = 0.0;
    for (int n = std::max(lo, 0); n <= std::min(hi, degree_); ++n)
      for (int b = 0; b <= n; ++b) m = std::max(m, std::abs(c_[index(n - b, b)]));
    return m;
  }

  Jet2& operator+=(const Jet2& o) {
    merge(o);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    merge(o);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    merge(o);
    std::array<double, kSize> r{};
    for (int n1 = 0; n1 <= degree_; ++n1)
      for (int b1 = 0; b1 <= n1; ++b1) {
        const double x = c_[index(n1 - b1, b1)];
        if (x == 0.0) continue;
        for (int n2 = 0; n1 + n2 <= degree_; ++n2)
          for (int b2 = 0; b2 <= n2; ++b2)
            r[index(n1 - b1 + n2 - b2, b1 + b2)] += x * o.c_[index(n2 - b2, b2)];
      }
    c_ = r;
    return *this;
  }
  Jet2& operator+=(double s) { c_[0] += s; return *this; }
  Jet2& operator-=(double s) { c_[0] -= s; return *this; }
  Jet2& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet2& operator/=(double s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend std::ostream& operator<<(std::ostream& os, const Jet2& j) {
    os << "Jet2@(" << j.base_.u << ',' << j.base_.v << ")[";
    for (int n = 0; n <= j.degree_; ++n)
      for (int b = 0; b <= n; ++b) os << (n + b ? ", " : "") << j.c_[index(n - b, b)];
    return os << ']';
  }

 private:
  Jet2(Point2 base, int degree) : degree_(degree), base_(base) { detail::check_degree(degree); }

  void merge(const Jet2& o) {
    if (!(o.base_ == base_)) throw Error("jets at different base points");
    if (o.degree_ < degree_) *this = truncated(o.degree_);
  }

  std::array<double, kSize> c_{};
  int degree_ = kJetDegree;
  Point2 base_{};
};

template <class J>
concept TaylorJet = std::same_as<J, Jet1> || std::same_as<J, Jet2>;

template <TaylorJet J> J operator+(J a, const J& b) { return a += b; }
template <TaylorJet J> J operator-(J a, const J& b) { return a -= b; }
template <TaylorJet J> J operator*(J a, const J& b) { return a *= b; }
template <TaylorJet J> J operator+(J a, double s) { return a += s; }
template <TaylorJet J> J operator+(double s, J a) { return a += s; }
template <TaylorJet J> J operator-(J a, double s) { return a -= s; }
template <TaylorJet J> J operator-(double s, J a) { a *= -1.0; return a += s; }
template <TaylorJet J> J operator*(J a, double s) { return a *= s; }
template <TaylorJet J> J operator*(double s, J a) { return a *= s; }
template <TaylorJet J> J operator/(J a, double s) { return a /= s; }
template <TaylorJet J> J operator-(J a) { return a *= -1.0; }

// ---------------------------------------------------------------------------
// Elementary functions by composition with univariate Taylor series.

/// Taylor coefficients s[k] = f^(k)(a)/k! of a scalar function at a point.
using Series = std::array<double, kJetDegree + 1>;

/// f(x) = Σ s_k (x - x0)^k where x0 = x.value().
template <TaylorJet J>
J compose(const Series& s, const J& x) {
  const J dx = x.displacement();
  J result = dx * 0.0;
  result += s[0];
  J power = dx;
  for (int k = 1; k <= x.degree(); ++k) {
    result += power * s[k];
    if (k < x.degree()) power *= dx;
  }
  return result;
}

namespace series {

inline Series exp(double a) {
  Series s{};
  const double e = std::exp(a);
  for (int k = 0; k <= kJetDegree; ++k) s[k] = e / factorial(k);
  return s;
}
inline Series sin(double a) {
  Series s{};
  const double sa = std::sin(a), ca = std::cos(a);
  const double cyc[4] = {sa, ca, -sa, -ca};
  for (int k = 0; k <= kJetDegree; ++k) s[k] = cyc[k % 4] / factorial(k);
  return s;
}
inline Series cos(double a) {
  Series s{};
  const double sa = std::sin(a), ca = std::cos(a);
  const double cyc[4] = {ca, -sa, -ca, sa};
  for (int k = 0; k <= kJetDegree; ++k) s[k] = cyc[k % 4] / factorial(k);
  return s;
}
inline Series sinh(double a) {
  Series s{};
  const double sh = std::sinh(a), ch = std::cosh(a);
  for (int k = 0; k <= kJetDegree; ++k) s[k] = (k % 2 == 0 ? sh : ch) / factorial(k);
  return s;
}
inline Series cosh(double a) {
  Series s{};
  const double sh = std::sinh(a), ch = std::cosh(a);
  for (int k = 0; k <= kJetDegree; ++k) s[k] = (k % 2 == 0 ? ch : sh) / factorial(k);
  return s;
}
/// x^p for real p; needs a > 0 unless p is a non-negative integer.
inline Series power(double a, double p) {
  const bool integral = p == std::floor(p);
  if (!(a > 0.0) && !(integral && p >= 0.0)) throw Error("jet domain error: power of non-positive value");
  Series s{};
  double binom = 1.0;
  for (int k = 0; k <= kJetDegree; ++k) {
    s[k] = (binom == 0.0) ? 0.0 : binom * std::pow(a, p - k);
    binom *= (p - k) / (k + 1);
  }
  return s;
}
inline Series reciprocal(double a) {
  if (a == 0.0) throw Error("jet division singular");
  Series s{};
  double t = 1.0 / a;
  for (int k = 0; k <= kJetDegree; ++k) {
    s[k] = t;
    t *= -1.0 / a;
  }
  return s;
}
inline Series log(double a) {
  if (!(a > 0.0)) throw Error("jet domain error: log of non-positive value");
  Series s{};
  s[0] = std::log(a);
  for (int k = 1; k <= kJetDegree; ++k) s[k] = ((k % 2) ? 1.0 : -1.0) / (k * std::pow(a, k));
  return s;
}
/// Series of a primitive F with F(a) = value and F' = 1/(1 + sign x^2).
inline Series integrate_rational(double a, double value, double sign) {
  Series s{};
  s[0] = value;
  const Jet1 x = Jet1::variable(a, kJetDegree - 1);
  const Jet1 q = 1.0 + sign * (x * x);
  const Jet1 d = compose(reciprocal(q.value()), q);
  for (int k = 1; k <= kJetDegree; ++k) s[k] = d[k - 1] / k;
  return s;
}
inline Series atan(double a) { return integrate_rational(a, std::atan(a), 1.0); }
inline Series atanh(double a) {
  if (!(std::abs(a) < 1.0)) throw Error("jet domain error: artanh needs |x| < 1");
  return integrate_rational(a, std::atanh(a), -1.0);
}

}  // namespace series

template <TaylorJet J> J exp(const J& x) { return compose(series::exp(x.value()), x); }
template <TaylorJet J> J sin(const J& x) { return compose(series::sin(x.value()), x); }
template <TaylorJet J> J cos(const J& x) { return compose(series::cos(x.value()), x); }
template <TaylorJet J> J sinh(const J& x) { return compose(series::sinh(x.value()), x); }
template <TaylorJet J> J cosh(const J& x) { return compose(series::cosh(x.value()), x); }
template <TaylorJet J> J log(const J& x) { return compose(series::log(x.value()), x); }
template <TaylorJet J> J atan(const J& x) { return compose(series::atan(x.value()), x); }
template <TaylorJet J> J atanh(const J& x) { return compose(series::atanh(x.value()), x); }
template <TaylorJet J> J sqrt(const J& x) {
  if (!(x.value() > 0.0)) throw Error("jet domain error: sqrt needs a positive value");
  return compose(series::power(x.value(), 0.5), x);
}
template <TaylorJet J> J pow(const J& x, double p) { return compose(series::power(x.value(), p), x); }
template <TaylorJet J> J pow(const J& x, int n) {
  if (n < 0) return reciprocal(pow(x, -n));
  J r = x * 0.0;
  r += 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}
template <TaylorJet J> J reciprocal(const J& x) { return compose(series::reciprocal(x.value()), x); }

// Scalar overloads live alongside the jet ones, so generic formulas written
// inside this namespace work for double and for jets.
using std::atan;
using std::atanh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;

template <TaylorJet J> J operator/(const J& a, const J& b) { return a * reciprocal(b); }
template <TaylorJet J> J operator/(double s, const J& b) { return reciprocal(b) * s; }
template <TaylorJet J> J& operator/=(J& a, const J& b) { return a = a * reciprocal(b); }

// ---------------------------------------------------------------------------
// Composition and restriction

/// f(base + (du, dv)) where du, dv are jets with zero value coefficient. The
/// result lives at du's base point.
inline Jet2 compose(const Jet2& f, const Jet2& du, const Jet2& dv) {
  const int d = std::min({f.degree(), du.degree(), dv.degree()});
  const Jet2 a = du.displacement().truncated(d);
  const Jet2 b = dv.displacement().truncated(d);
  std::array<Jet2, kJetDegree + 1> pa, pb;
  pa[0] = a * 0.0 + 1.0;
  pb[0] = pa[0];
  for (int k = 1; k <= d; ++k) {
    pa[k] = pa[k - 1] * a;
    pb[k] = pb[k - 1] * b;
  }
  Jet2 r = a * 0.0;
  for (int n = 0; n <= d; ++n)
    for (int j = 0; j <= n; ++j) {
      const double c = f.coeff(n - j, j);
      if (c != 0.0) r += (pa[n - j] * pb[j]) * c;
    }
  return r;
}

/// f(base + (du(s), dv(s))) along a curve given by univariate displacement
/// jets.
inline Jet1 restrict(const Jet2& f, const Jet1& du, const Jet1& dv) {
  const int d = std::min({f.degree(), du.degree(), dv.degree()});
  const Jet1 a = du.displacement().truncated(d);
  const Jet1 b = dv.displacement().truncated(d);
  std::array<Jet1, kJetDegree + 1> pa, pb;
  pa[0] = a * 0.0 + 1.0;
  pb[0] = pa[0];
  for (int k = 1; k <= d; ++k) {
    pa[k] = pa[k - 1] * a;
    pb[k] = pb[k - 1] * b;
  }
  Jet1 r = a * 0.0;
  for (int n = 0; n <= d; ++n)
    for (int j = 0; j <= n; ++j) {
      const double c = f.coeff(n - j, j);
      if (c != 0.0) r += (pa[n - j] * pb[j]) * c;
    }
  return r;
}

/// Lift a univariate jet F (taken at x.value()) through a bivariate jet x.
inline Jet2 lift(const Jet1& f, const Jet2& x) {
  if (f.base() != x.value()) throw Error("lift: univariate jet taken at the wrong point");
  Series s{};
  for (int k = 0; k <= f.degree(); ++k) s[k] = f[k];
  return compose(s, x.truncated(std::min(x.degree(), f.degree())));
}

/// Substitution of a linear change of variables: returns g(s, w) = f(M (s, w))
/// as a jet at `new_base`.
inline Jet2 linear_substitute(const Jet2& f, const std::array<double, 4>& m, Point2 new_base = {}) {
  const Jet2 s = Jet2::coordinate_u(new_base, f.degree()).displacement();
  const Jet2 w = Jet2::coordinate_v(new_base, f.degree()).displacement();
  Jet2 g = compose(f, s * m[0] + w * m[1], s * m[2] + w * m[3]);
  g += f.value() - g.value();
  return g;
}

// ---------------------------------------------------------------------------
// Vector fields

using JetVec3 = std::array<Jet2, 3>;

/// e1 ∂_u + e2 ∂_v with jet coefficients at a common base point.
struct VectorFieldJet {
  Jet2 e1;
  Jet2 e2;

  static VectorFieldJet constant(double a, double b, Point2 base, int degree = kJetDegree) {
    return {Jet2::constant(a, base, degree), Jet2::constant(b, base, degree)};
  }
  Point2 base() const { return e1.base(); }
  std::array<double, 2> value() const { return {e1.value(), e2.value()}; }
};

inline Jet2 apply_vector_field(const VectorFieldJet& field, const Jet2& f) {
  if (f.degree() == 0) throw Error("jet order exhausted");
  if (!(field.e1.base() == f.base()) || !(field.e2.base() == f.base()))
    throw Error("vector field and jet at different base points");
  return field.e1 * f.du() + field.e2 * f.dv();
}

inline JetVec3 apply_vector_field(const VectorFieldJet& field, const JetVec3& x) {
  return {apply_vector_field(field, x[0]), apply_vector_field(field, x[1]),
          apply_vector_field(field, x[2])};
}

/// Value at the base point of field^k applied componentwise to x.
inline LVec3 iterated_field_derivative(const JetVec3& x, const VectorFieldJet& field, int k) {
  if (k < 0 || k > kJetDegree) throw InputError("iterated derivative order must be in [0, 5]");
  JetVec3 y = x;
  for (int i = 0; i < k; ++i) y = apply_vector_field(field, y);
  return {y[0].value(), y[1].value(), y[2].value()};
}

inline LVec3 values(const JetVec3& x) { return {x[0].value(), x[1].value(), x[2].value()}; }

inline JetVec3 du(const JetVec3& x) { return {x[0].du(), x[1].du(), x[2].du()}; }
inline JetVec3 dv(const JetVec3& x) { return {x[0].dv(), x[1].dv(), x[2].dv()}; }

inline Jet2 lorentz_inner(const JetVec3& a, const JetVec3& b) {
  return -(a[0] * b[0]) + a[1] * b[1] + a[2] * b[2];
}
inline Jet2 euclid_inner(const JetVec3& a, const JetVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline JetVec3 euclid_cross(const JetVec3& x, const JetVec3& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}
inline JetVec3 lorentz_cross(const JetVec3& x, const JetVec3& y) {
  JetVec3 c = euclid_cross(x, y);
  c[0] = -c[0];
  return c;
}
inline Jet2 det3(const JetVec3& a, const JetVec3& b, const JetVec3& c) {
  return euclid_inner(euclid_cross(a, b), c);
}
inline JetVec3 scale(const JetVec3& a, const Jet2& s) { return {a[0] * s, a[1] * s, a[2] * s}; }

}  // namespace cmclab
