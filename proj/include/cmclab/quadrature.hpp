#pragma once

// Adaptive Gauss-Kronrod (7/15) integration and primitives F(r) = ∫_base^r f
// that expose Taylor jets through F' = f.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cmclab/error.hpp"
#include "cmclab/jet.hpp"

namespace cmclab {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kPrimitiveQuadTol = 1e-11;

/// Raised when the subdivision budget runs out; carries the best estimate.
class ToleranceError : public Error {
 public:
  ToleranceError(double value, double estimate)
      : Error("tolerance not met"), value_(value), estimate_(estimate) {}
  double value() const { return value_; }
  double estimate() const { return estimate_; }

 private:
  double value_;
  double estimate_;
};

/// A scalar function of one variable that can also be evaluated on jets.
class Integrand {
 public:
  using PointFn = std::function<double(double)>;
  using JetFn = std::function<Jet1(const Jet1&)>;

  Integrand() = default;
  Integrand(PointFn point, JetFn jet) : point_(std::move(point)), jet_(std::move(jet)) {}

  /// Builds both evaluators from one generic callable usable with double and Jet1.
  template <class F>
  static Integrand from(F f) {
    return Integrand([f](double x) { return static_cast<double>(f(x)); },
                     [f](const Jet1& x) { return Jet1(f(x)); });
  }

  double operator()(double x) const { return point_(x); }
  Jet1 jet(double x, int degree) const { return jet_(Jet1::variable(x, degree)); }

 private:
  PointFn point_;
  JetFn jet_;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

namespace detail {

// Abscissae and weights of the 15-point Kronrod rule and embedded 7-point
// Gauss rule (as tabulated in QUADPACK).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

struct Panel {
  double a, b, value, error;
};

template <class F>
Panel gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto sample = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw Error("integrand singular on interval");
    return y;
  };
  const double fc = sample(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = sample(c - dx) + sample(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

/// Adaptive G7/K15 quadrature. The worst panel is bisected until the summed
/// |K15 - G7| estimate is below tol; panels are summed in position order.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double tol = kDefaultQuadTol,
                           int max_panels = 4000) {
  if (!(tol > 0.0)) throw InputError("quadrature tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("quadrature limits must be finite");
  if (a == b) return {0.0, 0.0, 0};
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);

  std::vector<detail::Panel> panels{detail::gk15(f, a, b)};
  auto total_error = [&] {
    double e = 0.0;
    for (const auto& p : panels) e += p.error;
    return e;
  };
  double err = total_error();
  while (err > tol) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](auto& x, auto& y) { return x.error < y.error; });
    const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
    if (static_cast<int>(panels.size()) >= max_panels || !(mid > lo && mid < hi)) {
      std::sort(panels.begin(), panels.end(), [](auto& x, auto& y) { return x.a < y.a; });
      double v = 0.0;
      for (const auto& p : panels) v += p.value;
      throw ToleranceError(sign * v, err);
    }
    *worst = detail::gk15(f, lo, mid);
    panels.push_back(detail::gk15(f, mid, hi));
    err = total_error();
  }
  std::sort(panels.begin(), panels.end(), [](auto& x, auto& y) { return x.a < y.a; });
  QuadratureResult r;
  for (const auto& p : panels) r.value += p.value;
  r.value *= sign;
  r.error_estimate = err;
  r.intervals = static_cast<int>(panels.size());
  return r;
}

inline QuadratureResult integrate(const Integrand& f, double a, double b,
                                  double tol = kDefaultQuadTol) {
  return integrate([&f](double x) { return f(x); }, a, b, tol);
}

/// F(r) = ∫_base^r f(τ) dτ.
class Primitive {
 public:
  Primitive() = default;
  explicit Primitive(Integrand f, double base = 0.0, double tol = kPrimitiveQuadTol)
      : f_(std::move(f)), base_(base), tol_(tol) {}

  const Integrand& integrand() const { return f_; }
  double base() const { return base_; }

  double value(double r) const { return r == base_ ? 0.0 : integrate(f_, base_, r, tol_).value; }

  /// Taylor jet of F at r0: value by quadrature, higher coefficients from f's jet.
  Jet1 jet(double r0, int degree = kJetDegree) const {
    std::array<double, kJetDegree + 1> c{};
    c[0] = value(r0);
    if (degree >= 1) {
      const Jet1 fj = f_.jet(r0, degree - 1);
      for (int k = 1; k <= degree; ++k) c[k] = fj[k - 1] / k;
    }
    return Jet1::from_coefficients(c, r0, degree);
  }

  double operator()(double r) const { return value(r); }
  /// F composed with a bivariate jet.
  Jet2 operator()(const Jet2& r) const { return lift(jet(r.value(), r.degree()), r); }
  Jet1 operator()(const Jet1& r) const {
    const Jet1 j = jet(r.value(), r.degree());
    Series s{};
    for (int k = 0; k <= j.degree(); ++k) s[k] = j[k];
    return compose(s, r);
  }

 private:
  Integrand f_;
  double base_ = 0.0;
  double tol_ = kPrimitiveQuadTol;
};

inline Jet1 primitive_jet(const Primitive& p, double r0, int degree = kJetDegree) {
  return p.jet(r0, degree);
}

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Connected component around `start` of {r : guard(r) > tol_dom}, searched
/// within [-reach, reach]. Endpoints are located by bisection; a local minimum
/// between probes is refined so double roots are not stepped over.
template <class G>
Interval admissible_interval(const G& guard, double start = 0.0, double reach = 1e3,
                             double tol_dom = 1e-8) {
  if (!(guard(start) > tol_dom)) throw InputError("start point lies outside the admissible domain");
  auto bisect = [&](double a, double b) {
    for (int i = 0; i < 200 && std::abs(b - a) > 1e-15 * (1.0 + std::abs(a)); ++i) {
      const double m = 0.5 * (a + b);
      (guard(m) > tol_dom ? a : b) = m;
    }
    return a;
  };
  auto edge = [&](double dir) {
    double prev = start, inside = start;
    double g_prev = guard(start), g_inside = g_prev;
    double step = 1e-3;
    while (std::abs(inside - start) < reach) {
      const double probe = std::clamp(inside + dir * step, start - reach, start + reach);
      const double g_probe = guard(probe);
      if (!(g_probe > tol_dom)) return bisect(inside, probe);
      if (g_inside < g_prev && g_inside < g_probe) {
        double a = prev, b = probe;
        for (int i = 0; i < 200 && std::abs(b - a) > 1e-15 * (1.0 + std::abs(a)); ++i) {
          const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
          if (guard(m1) < guard(m2)) b = m2;
          else a = m1;
        }
        const double m = 0.5 * (a + b);
        if (!(guard(m) > tol_dom)) return bisect(prev, m);
      }
      prev = inside;
      g_prev = g_inside;
      inside = probe;
      g_inside = g_probe;
      step = std::min(step * 1.5, 0.05 * (1.0 + std::abs(inside)));
    }
    return dir * std::numeric_limits<double>::infinity();
  };
  return {edge(-1.0), edge(1.0)};
}

}  // namespace cmclab
