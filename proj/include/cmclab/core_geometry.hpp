#pragma once

// Lorentz-Minkowski 3-space L^3 with signature (-,+,+), the two-sheeted
// hyperboloid H^2 and its stereographic projection onto the Riemann sphere.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <ostream>

#include "cmclab/error.hpp"

namespace cmclab {

using Complex = std::complex<double>;

/// A vector of L^3. Carries both the Lorentzian and the Euclidean pairing.
struct LVec3 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr LVec3() = default;
  constexpr LVec3(double a, double b, double c) : x0(a), x1(b), x2(c) {}
  constexpr explicit LVec3(const std::array<double, 3>& a) : x0(a[0]), x1(a[1]), x2(a[2]) {}

  constexpr double operator[](int i) const { return i == 0 ? x0 : (i == 1 ? x1 : x2); }
  constexpr double& operator[](int i) { return i == 0 ? x0 : (i == 1 ? x1 : x2); }

  constexpr std::array<double, 3> to_array() const { return {x0, x1, x2}; }

  constexpr LVec3& operator+=(const LVec3& o) {
    x0 += o.x0; x1 += o.x1; x2 += o.x2;
    return *this;
  }
  constexpr LVec3& operator-=(const LVec3& o) {
    x0 -= o.x0; x1 -= o.x1; x2 -= o.x2;
    return *this;
  }
  constexpr LVec3& operator*=(double s) {
    x0 *= s; x1 *= s; x2 *= s;
    return *this;
  }
  constexpr LVec3& operator/=(double s) {
    x0 /= s; x1 /= s; x2 /= s;
    return *this;
  }

  friend constexpr LVec3 operator+(LVec3 a, const LVec3& b) { return a += b; }
  friend constexpr LVec3 operator-(LVec3 a, const LVec3& b) { return a -= b; }
  friend constexpr LVec3 operator-(const LVec3& a) { return {-a.x0, -a.x1, -a.x2}; }
  friend constexpr LVec3 operator*(LVec3 a, double s) { return a *= s; }
  friend constexpr LVec3 operator*(double s, LVec3 a) { return a *= s; }
  friend constexpr LVec3 operator/(LVec3 a, double s) { return a /= s; }
  friend constexpr bool operator==(const LVec3&, const LVec3&) = default;

  friend std::ostream& operator<<(std::ostream& os, const LVec3& v) {
    return os << '(' << v.x0 << ", " << v.x1 << ", " << v.x2 << ')';
  }
};

constexpr double lorentz_inner(const LVec3& x, const LVec3& y) {
  return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2;
}

constexpr double euclid_inner(const LVec3& x, const LVec3& y) {
  return x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2;
}

inline double euclid_norm(const LVec3& x) { return std::sqrt(euclid_inner(x, x)); }

constexpr LVec3 euclid_cross(const LVec3& x, const LVec3& y) {
  return {x.x1 * y.x2 - x.x2 * y.x1, x.x2 * y.x0 - x.x0 * y.x2, x.x0 * y.x1 - x.x1 * y.x0};
}

constexpr double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
  return euclid_inner(euclid_cross(a, b), c);
}

/// The Lorentzian cross product, characterised by <x ×_L y, z> = det(x, y, z).
constexpr LVec3 lorentz_cross(const LVec3& x, const LVec3& y) {
  const LVec3 c = euclid_cross(x, y);
  return {-c.x0, c.x1, c.x2};
}

enum class Sheet { upper, lower };

/// A point of H^2 = {<p,p> = -1}. The upper sheet is H^2_+ (x0 > 0).
class H2Point {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit H2Point(const LVec3& p) : p_(p) {
    const double defect = std::abs(lorentz_inner(p, p) + 1.0);
    if (!(defect <= kTolerance * std::max(1.0, euclid_inner(p, p)))) {
      throw Error("point is not on the hyperboloid H^2");
    }
  }

  /// Rescales a timelike vector onto H^2, keeping its time orientation.
  static H2Point normalize(const LVec3& v) {
    const double q = -lorentz_inner(v, v);
    if (!(q > 0.0)) throw Error("vector is not timelike");
    return H2Point(v / std::sqrt(q));
  }

  const LVec3& point() const { return p_; }
  Sheet sheet() const { return p_.x0 > 0.0 ? Sheet::upper : Sheet::lower; }

 private:
  LVec3 p_;
};

/// A point of the Riemann sphere C ∪ {∞}.
class ExtComplex {
 public:
  constexpr ExtComplex() = default;
  constexpr ExtComplex(Complex z) : z_(z) {}
  static constexpr ExtComplex infinity() {
    ExtComplex w;
    w.infinite_ = true;
    return w;
  }

  constexpr bool is_infinite() const { return infinite_; }
  Complex value() const {
    if (infinite_) throw Error("value() of the point at infinity");
    return z_;
  }
  double abs() const { return infinite_ ? HUGE_VAL : std::abs(z_); }

 private:
  Complex z_{};
  bool infinite_ = false;
};

/// pi(p) = (x1 + i x2) / (1 - x0). The lower sheet lands in the open unit
/// disk, the upper sheet outside the closed disk.
inline ExtComplex stereographic(const H2Point& p) {
  const LVec3& x = p.point();
  return Complex(x.x1, x.x2) / (1.0 - x.x0);
}

/// Inverse of the stereographic projection,
/// (|w|^2 + 1, -2 Re w, -2 Im w) / (|w|^2 - 1); w = ∞ maps to (1, 0, 0).
inline H2Point inverse_stereographic(const ExtComplex& w, double circle_tol = 1e-14) {
  if (w.is_infinite()) return H2Point(LVec3{1.0, 0.0, 0.0});
  const Complex z = w.value();
  const double m = std::norm(z);
  if (std::abs(m - 1.0) <= circle_tol) throw Error("ideal boundary point: |w| = 1");
  const LVec3 p{(m + 1.0) / (m - 1.0), -2.0 * z.real() / (m - 1.0), -2.0 * z.imag() / (m - 1.0)};
  return H2Point(p);
}

}  // namespace cmclab
