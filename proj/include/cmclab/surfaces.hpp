#pragma once

// Parametric surfaces: spacelike Delaunay surfaces with timelike, spacelike
// and lightlike axis, their conjugates, and the local singularity models.
// Every surface serves degree-5 jets of its coordinate functions.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "cmclab/core_geometry.hpp"
#include "cmclab/error.hpp"
#include "cmclab/jet.hpp"
#include "cmclab/quadrature.hpp"

namespace cmclab {

enum class Family {
  delaunay_timelike,
  delaunay_spacelike,
  delaunay_lightlike_i,
  delaunay_lightlike_ii,
  conjugate,
  model_fold,
  model_cuspidal_edge,
  model_25,
  model_cone,
  custom
};

inline std::string to_string(Family f) {
  switch (f) {
    case Family::delaunay_timelike: return "delaunay_timelike";
    case Family::delaunay_spacelike: return "delaunay_spacelike";
    case Family::delaunay_lightlike_i: return "delaunay_lightlike_i";
    case Family::delaunay_lightlike_ii: return "delaunay_lightlike_ii";
    case Family::conjugate: return "conjugate";
    case Family::model_fold: return "model_fold";
    case Family::model_cuspidal_edge: return "model_cuspidal_edge";
    case Family::model_25: return "model_25";
    case Family::model_cone: return "model_cone";
    case Family::custom: return "custom";
  }
  return "unknown";
}

inline bool is_delaunay(Family f) {
  return f == Family::delaunay_timelike || f == Family::delaunay_spacelike ||
         f == Family::delaunay_lightlike_i || f == Family::delaunay_lightlike_ii;
}

/// Rectangle of admissible parameters; bounds may be infinite.
struct Domain {
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();
  double v_min = -std::numeric_limits<double>::infinity();
  double v_max = std::numeric_limits<double>::infinity();

  bool contains(Point2 p) const {
    return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
  }
};

/// Regular sampling grid over [u0,u1] x [v0,v1] with nu x nv nodes.
struct GridSpec {
  int nu = 101;
  int nv = 101;
  double u0 = -1.0, u1 = 1.0;
  double v0 = -1.0, v1 = 1.0;

  double u(int i) const { return nu == 1 ? u0 : u0 + (u1 - u0) * i / (nu - 1); }
  double v(int j) const { return nv == 1 ? v0 : v0 + (v1 - v0) * j / (nv - 1); }
};

struct SurfaceInfo {
  Family family = Family::custom;
  std::optional<Family> conjugate_of;  // set for conjugates
  std::string name;                    // e.g. "delaunay-t", "conjugate(delaunay-t)"
  std::string branch;                  // I, II, III-i, I-i, II-ii, ...
  std::string template_name;           // X_T, X_S, X_L for conjugates
  double H = std::numeric_limits<double>::quiet_NaN();
  double k = std::numeric_limits<double>::quiet_NaN();
  double h = std::numeric_limits<double>::quiet_NaN();     // conjugate template constant
  double rho0 = std::numeric_limits<double>::quiet_NaN();  // ρ(0) of conjugates
  bool cmc = false;
  bool rotational = false;
};

/// Immutable parametric surface. Coordinates are (u, v) = (r, t) for the
/// Delaunay families.
class Surface {
 public:
  using JetFn = std::function<JetVec3(Point2, int)>;
  using PointFn = std::function<LVec3(Point2)>;

  Surface(SurfaceInfo info, Domain domain, GridSpec grid, JetFn jet, PointFn point,
          JetFn normal = {})
      : info_(std::move(info)),
        domain_(domain),
        grid_(grid),
        jet_(std::move(jet)),
        point_(std::move(point)),
        normal_(std::move(normal)) {}

  const SurfaceInfo& info() const { return info_; }
  const Domain& domain() const { return domain_; }
  const GridSpec& default_grid() const { return grid_; }

  JetVec3 jet(Point2 p, int degree = kJetDegree) const {
    check(p);
    return jet_(p, degree);
  }
  LVec3 point(Point2 p) const {
    check(p);
    return point_(p);
  }

  bool has_analytic_normal() const { return static_cast<bool>(normal_); }
  /// Jet of the analytic Euclidean unit normal.
  JetVec3 analytic_normal(Point2 p, int degree = kJetDegree) const {
    if (!normal_) throw Error("surface has no analytic normal");
    check(p);
    return normal_(p, degree);
  }

  /// Sign s such that ν = s·(X_u ×_L X_v)/|X_u ×_L X_v| has mean curvature H.
  double orientation() const { return orientation_; }
  void set_orientation(double s) { orientation_ = s < 0 ? -1.0 : 1.0; }

 private:
  void check(Point2 p) const {
    if (!std::isfinite(p.u) || !std::isfinite(p.v) || !domain_.contains(p))
      throw Error("point outside the admissible domain");
  }

  SurfaceInfo info_;
  Domain domain_;
  GridSpec grid_;
  JetFn jet_;
  PointFn point_;
  JetFn normal_;
  double orientation_ = 1.0;
};

namespace detail {

/// Wraps a generic formula (u, v) -> array<T,3>, T in {double, Jet2}.
template <class Formula>
std::pair<Surface::JetFn, Surface::PointFn> evaluators(Formula f) {
  Surface::JetFn jet = [f](Point2 p, int d) {
    const Jet2 u = Jet2::coordinate_u(p, d);
    const Jet2 v = Jet2::coordinate_v(p, d);
    const auto x = f(u, v);
    return JetVec3{x[0], x[1], x[2]};
  };
  Surface::PointFn point = [f](Point2 p) {
    const auto x = f(p.u, p.v);
    return LVec3{x[0], x[1], x[2]};
  };
  return {std::move(jet), std::move(point)};
}

template <class Formula>
Surface::JetFn jet_only(Formula f) {
  return [f](Point2 p, int d) {
    const Jet2 u = Jet2::coordinate_u(p, d);
    const Jet2 v = Jet2::coordinate_v(p, d);
    const auto x = f(u, v);
    return JetVec3{x[0], x[1], x[2]};
  };
}

inline void check_parameters(double H, double k, bool need_k) {
  if (!std::isfinite(H) || H == 0.0) throw InputError("H must be finite and nonzero");
  if (need_k) {
    if (!std::isfinite(k)) throw InputError("k must be finite");
    if (k == 1.0) throw InputError("k=1 degenerate (delta has a double root at r=0)");
  }
}

inline double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

inline Interval r_interval(const std::function<double(double)>& guard) {
  return admissible_interval(guard, 0.0, 50.0, 1e-8);
}

inline GridSpec symmetric_grid(const Interval& r, double cap, double t0, double t1) {
  const double R = std::min(cap, 0.98 * std::min(-r.lo, r.hi));
  return {101, 101, -R, R, t0, t1};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lorentzian fundamental forms

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double L = 0, M = 0, N = 0;
  double H_mean = 0;
  LVec3 nu;
};

/// Unit Lorentzian normal jet s·(X_u ×_L X_v)/sqrt(-<.,.>) with s the
/// surface orientation. Requires a spacelike tangent plane.
inline JetVec3 lorentz_normal_jet(const Surface& S, Point2 p, int degree = kJetDegree) {
  const JetVec3 X = S.jet(p, std::min(kJetDegree, degree + 1));
  const JetVec3 c = lorentz_cross(du(X), dv(X));
  const Jet2 q = -lorentz_inner(c, c);
  const LVec3 xu = values(du(X)), xv = values(dv(X));
  if (!(q.value() > 1e-12 * euclid_inner(xu, xu) * euclid_inner(xv, xv)))
    throw Error("not a spacelike regular point");
  return scale(c, S.orientation() / sqrt(q));
}

inline FundamentalForms fundamental_forms(const Surface& S, Point2 p) {
  const JetVec3 X = S.jet(p, 2);
  const JetVec3 Xu = du(X), Xv = dv(X);
  const LVec3 xu = values(Xu), xv = values(Xv);
  FundamentalForms f;
  f.E = lorentz_inner(xu, xu);
  f.F = lorentz_inner(xu, xv);
  f.G = lorentz_inner(xv, xv);
  const double det = f.E * f.G - f.F * f.F;
  if (!(det > 1e-12 * euclid_inner(xu, xu) * euclid_inner(xv, xv)) || !(f.E > 0.0))
    throw Error("not a spacelike regular point");
  const LVec3 c = lorentz_cross(xu, xv);
  f.nu = c * (S.orientation() / std::sqrt(-lorentz_inner(c, c)));
  const LVec3 xuu = values(du(Xu)), xuv = values(dv(Xu)), xvv = values(dv(Xv));
  f.L = lorentz_inner(xuu, f.nu);
  f.M = lorentz_inner(xuv, f.nu);
  f.N = lorentz_inner(xvv, f.nu);
  f.H_mean = (f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * det);
  return f;
}

namespace detail {
/// Orients ν so that the mean curvature at a regular reference point has the
/// sign of H.
inline void orient_to_H(Surface& S, Point2 ref) {
  S.set_orientation(1.0);
  const double hm = fundamental_forms(S, ref).H_mean;
  S.set_orientation(sgn(hm) * sgn(S.info().H));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Delaunay surfaces

/// Timelike axis: X = (1/2H)(∫_0^r (τ²+k-1)/√δ, r cos 2Ht, r sin 2Ht),
/// δ = (r²+k+1)² - 4k.
inline Surface delaunay_timelike(double k, double H) {
  detail::check_parameters(H, k, true);
  auto delta = [k](const auto& x) { return (x * x + k + 1.0) * (x * x + k + 1.0) - 4.0 * k; };
  const Primitive I(Integrand::from([k, delta](const auto& x) { return (x * x + k - 1.0) / sqrt(delta(x)); }));
  const Interval r = detail::r_interval([delta](double x) { return delta(x); });
  auto formula = [I, H](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const double c = 1.0 / (2.0 * H);
    return std::array<T, 3>{c * I(u), c * (u * cos(2.0 * H * v)), c * (u * sin(2.0 * H * v))};
  };
  auto [jet, point] = detail::evaluators(formula);
  SurfaceInfo info;
  info.family = Family::delaunay_timelike;
  info.name = "delaunay-t";
  info.branch = "I";
  info.H = H;
  info.k = k;
  info.cmc = info.rotational = true;
  Surface S(info, {r.lo, r.hi}, detail::symmetric_grid(r, 1.5, 0.0, std::numbers::pi / std::abs(H)),
            jet, point);
  detail::orient_to_H(S, {0.3 * std::min(1.0, r.hi), 0.2});
  return S;
}

/// Spacelike axis: X = (1/2H)(r cosh 2Ht, r sinh 2Ht, ∫_0^r (τ²-k+1)/√δ),
/// δ = (r²-k-1)² - 4k.
inline Surface delaunay_spacelike(double k, double H) {
  detail::check_parameters(H, k, true);
  auto delta = [k](const auto& x) { return (x * x - k - 1.0) * (x * x - k - 1.0) - 4.0 * k; };
  const Primitive I(Integrand::from([k, delta](const auto& x) { return (x * x - k + 1.0) / sqrt(delta(x)); }));
  const Interval r = detail::r_interval([delta](double x) { return delta(x); });
  auto formula = [I, H](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const double c = 1.0 / (2.0 * H);
    return std::array<T, 3>{c * (u * cosh(2.0 * H * v)), c * (u * sinh(2.0 * H * v)), c * I(u)};
  };
  auto [jet, point] = detail::evaluators(formula);
  SurfaceInfo info;
  info.family = Family::delaunay_spacelike;
  info.name = "delaunay-s";
  info.branch = "II";
  info.H = H;
  info.k = k;
  info.cmc = info.rotational = true;
  Surface S(info, {r.lo, r.hi}, detail::symmetric_grid(r, 1.5, -1.0 / std::abs(H), 1.0 / std::abs(H)),
            jet, point);
  detail::orient_to_H(S, {0.3 * std::min(1.0, r.hi), 0.2});
  return S;
}

/// ζ of the lightlike-axis family; variant 1 uses arctan, variant 2 artanh.
template <class T>
T lightlike_zeta(int variant, double H, const T& r) {
  const double c = 1.0 / (8.0 * H * H);
  if (variant == 1) return c * (atan(r) - r / (1.0 + r * r));
  return c * (r / (1.0 - r * r) - atanh(r));
}

/// Lightlike axis: X = (ζ - r(1+t²/4), -rt, ζ + r(1-t²/4)).
inline Surface delaunay_lightlike(int variant, double H) {
  detail::check_parameters(H, 0.0, false);
  if (variant != 1 && variant != 2) throw InputError("lightlike variant must be i or ii");
  auto formula = [variant, H](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const T z = lightlike_zeta(variant, H, u);
    return std::array<T, 3>{z - u * (1.0 + v * v / 4.0), -(u * v), z + u * (1.0 - v * v / 4.0)};
  };
  auto [jet, point] = detail::evaluators(formula);
  SurfaceInfo info;
  info.family = variant == 1 ? Family::delaunay_lightlike_i : Family::delaunay_lightlike_ii;
  info.name = variant == 1 ? "delaunay-l1" : "delaunay-l2";
  info.branch = variant == 1 ? "III-i" : "III-ii";
  info.H = H;
  info.cmc = info.rotational = true;
  Domain dom;
  if (variant == 2) {
    const double e = 1e-8;
    dom = {-1.0 + e, 1.0 - e};
  }
  const double R = variant == 1 ? 1.5 : 0.9;
  Surface S(info, dom, {101, 101, -R, R, -2.0, 2.0}, jet, point);
  detail::orient_to_H(S, {0.3, 0.2});
  return S;
}

// ---------------------------------------------------------------------------
// Conjugates

namespace detail {

/// Generic conjugate template assembled from ρ(r), λ(r), φ(r,t) and h.
template <class Rho, class Lambda, class Phi>
auto conjugate_formula(char tmpl, double h, Rho rho, Lambda lam, Phi phi) {
  return [=](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    const T R = rho(u), L = lam(u), P = phi(u, v);
    if (tmpl == 'T') return std::array<T, 3>{L + h * P, R * cos(P), R * sin(P)};
    if (tmpl == 'S') return std::array<T, 3>{R * sinh(P), R * cosh(P), L + h * P};
    const T P2 = P * P, P3 = P2 * P;
    return std::array<T, 3>{L - R - R * P2 + h * (P3 / 3.0 + P), -2.0 * (R * P) + h * P2,
                            L + R - R * P2 + h * (P3 / 3.0 - P)};
  };
}

inline std::string template_label(char t) { return std::string("X_") + t; }

}  // namespace detail

/// Conjugate X# of a Delaunay surface, in the template form X_T, X_S or X_L.
///
/// In the (I-i) and (II-i) branches the t-coefficient of φ is taken as
/// 2H·sgn·√(|1+k|/2) (the displayed coefficient times -2H), which makes the
/// (r,t) chart of X# isometric to that of X for every H and orients it so the
/// mean curvature is +H with the displayed unit normal.
inline Surface conjugate_of(Family base, double k, double H) {
  using detail::sgn;
  SurfaceInfo info;
  info.family = Family::conjugate;
  info.conjugate_of = base;
  info.H = H;
  info.cmc = true;
  info.rotational = false;

  char tmpl = 'T';
  Surface::JetFn jet;
  Surface::PointFn point;
  Surface::JetFn normal;
  Domain dom;
  GridSpec grid;
  double phi_t = 1.0;  // dφ/dt

  auto install = [&](auto formula) {
    auto ev = detail::evaluators(formula);
    jet = ev.first;
    point = ev.second;
  };

  const bool timelike = base == Family::delaunay_timelike;
  const bool spacelike = base == Family::delaunay_spacelike;
  if (timelike || spacelike) {
    detail::check_parameters(H, k, true);
    info.k = k;
    info.name = timelike ? "conjugate(delaunay-t)" : "conjugate(delaunay-s)";
    if (k == -1.0) {
      info.branch = timelike ? "I-ii" : "II-ii";
      tmpl = 'L';
      const double h = H;
      info.h = h;
      info.rho0 = 0.0;
      auto w = [](const auto& x) { return sqrt(x * x * x * x + 4.0); };
      const Primitive lam(Integrand::from(
          [H, w](const auto& x) { return x * x * (w(x) + x * x) / (4.0 * H * H * w(x)); }));
      const Primitive phr(
          Integrand::from([H, w](const auto& x) { return (w(x) + x * x) / (2.0 * H * w(x)); }));
      install(detail::conjugate_formula(
          'L', h, [](const auto& x) { return 0.5 * x; }, lam,
          [phr](const auto& x, const auto& t) { return phr(x) + t; }));
      grid = {101, 101, -1.5, 1.5, -1.0, 1.0};
    } else {
      const double s = sgn(k + 1.0);
      const double A = std::sqrt(2.0 * std::abs(1.0 + k));
      const double dsign = timelike ? 1.0 : -1.0;  // Δ = ±2(k+1)r² + (1-k)²
      auto delta = [k, timelike](const auto& x) {
        const auto a = timelike ? x * x + k + 1.0 : x * x - k - 1.0;
        return a * a - 4.0 * k;
      };
      auto Delta = [k, dsign](const auto& x) { return dsign * 2.0 * (k + 1.0) * (x * x) + (1.0 - k) * (1.0 - k); };
      const double h = (1.0 - k) / (2.0 * H * std::abs(1.0 + k));
      info.h = h;
      info.rho0 = std::abs(1.0 - k) / (2.0 * H * std::abs(k + 1.0));
      const double lam_sign = timelike ? 1.0 : -s;
      const double phr_sign = timelike ? s : 1.0;
      const Primitive lam(Integrand::from([=](const auto& x) {
        return lam_sign * A * (x * x * x * x) / (H * sqrt(delta(x)) * Delta(x));
      }));
      const Primitive phr(Integrand::from([=](const auto& x) {
        return phr_sign * A * (1.0 - k) * (x * x) / (sqrt(delta(x)) * Delta(x));
      }));
      phi_t = 2.0 * H * (timelike ? 1.0 : s) * std::sqrt(std::abs(1.0 + k) / 2.0);
      const double rho_c = 1.0 / (2.0 * H * std::abs(k + 1.0));
      if (timelike) {
        info.branch = "I-i";
        tmpl = k > -1.0 ? 'T' : 'S';
      } else {
        info.branch = "II-i";
        tmpl = k > -1.0 ? 'S' : 'T';
      }
      install(detail::conjugate_formula(
          tmpl, h, [=](const auto& x) { return rho_c * sqrt(Delta(x)); }, lam,
          [=](const auto& x, const auto& t) { return phr(x) + phi_t * t; }));
      const Interval r = detail::r_interval([=](double x) { return std::min(delta(x), Delta(x)); });
      dom = {r.lo, r.hi};
      const double tspan = tmpl == 'T' ? 2.0 * std::numbers::pi / std::abs(phi_t) : 1.0 / std::abs(phi_t);
      grid = detail::symmetric_grid(r, 1.5, tmpl == 'T' ? 0.0 : -tspan, tspan);

      if (timelike && k > -1.0) {
        // Unit normal displayed for X_T in the (I-i) case.
        normal = detail::jet_only([=](const auto& x, const auto& t) {
          using T = std::decay_t<decltype(x)>;
          const T d = delta(x), D = Delta(x), P = phr(x) + phi_t * t;
          const T sd = sqrt(d), sD = sqrt(D);
          const T r3 = x * x * x;
          const T scale = 1.0 / (std::sqrt(2.0) * sD * sqrt(d - (k + 1.0) * (x * x)));
          const double a = std::sqrt(2.0) * std::sqrt(k + 1.0);
          return std::array<T, 3>{scale * (sd * sD),
                                  scale * (-a * (r3 * cos(P)) - (k - 1.0) * (sd * sin(P))),
                                  scale * (-a * (r3 * sin(P)) + (k - 1.0) * (sd * cos(P)))};
        });
      }
    }
  } else if (base == Family::delaunay_lightlike_i || base == Family::delaunay_lightlike_ii) {
    detail::check_parameters(H, 0.0, false);
    const bool one = base == Family::delaunay_lightlike_i;
    info.name = one ? "conjugate(delaunay-l1)" : "conjugate(delaunay-l2)";
    info.branch = one ? "III-i" : "III-ii";
    tmpl = one ? 'T' : 'S';
    const double h = one ? -1.0 / (2.0 * H) : 1.0 / (2.0 * H);
    info.h = h;
    info.rho0 = 1.0 / (2.0 * std::abs(H));
    const double r2 = std::sqrt(2.0);
    phi_t = 2.0 * H / r2;
    if (one) {
      install(detail::conjugate_formula(
          'T', h, [=](const auto& x) { return sqrt(2.0 * (x * x) + 1.0) / (2.0 * H); },
          [=](const auto& x) { return (-r2 * x + 2.0 * r2 * atan(x) - atan(r2 * x)) / (2.0 * H); },
          [=](const auto& x, const auto& t) { return phi_t * t + r2 * atan(x) - atan(r2 * x); }));
      grid = {101, 101, -1.5, 1.5, 0.0, 2.0 * std::numbers::pi / std::abs(phi_t)};
    } else {
      install(detail::conjugate_formula(
          'S', h, [=](const auto& x) { return sqrt(1.0 - 2.0 * (x * x)) / (2.0 * H); },
          [=](const auto& x) { return (r2 * x - 2.0 * r2 * atanh(x) + atanh(r2 * x)) / (2.0 * H); },
          [=](const auto& x, const auto& t) { return phi_t * t + r2 * atanh(x) - atanh(r2 * x); }));
      const double e = 1e-8;
      dom = {-1.0 / r2 + e, 1.0 / r2 - e};
      grid = {101, 101, -0.65, 0.65, -1.0 / std::abs(phi_t), 1.0 / std::abs(phi_t)};
    }
  } else {
    throw InputError("conjugate_of needs a Delaunay family");
  }
  info.template_name = detail::template_label(tmpl);
  Surface S(info, dom, grid, jet, point, normal);
  const double rref = 0.3 * std::min(1.0, std::isfinite(dom.u_max) ? dom.u_max : 1.0);
  detail::orient_to_H(S, {rref, 0.2});
  return S;
}

// ---------------------------------------------------------------------------
// Local models and custom surfaces

inline Surface standard_model(const std::string& name) {
  SurfaceInfo info;
  info.name = "model-" + name;
  const GridSpec grid{101, 101, -1.0, 1.0, -1.0, 1.0};
  if (name == "fold") {
    info.family = Family::model_fold;
    auto [jet, point] = detail::evaluators([](const auto& u, const auto& v) {
      using T = std::decay_t<decltype(u)>;
      return std::array<T, 3>{u, v * v, 0.0 * u};
    });
    auto normal = detail::jet_only([](const auto& u, const auto&) {
      using T = std::decay_t<decltype(u)>;
      return std::array<T, 3>{0.0 * u, 0.0 * u, 0.0 * u + 1.0};
    });
    return Surface(info, {}, grid, jet, point, normal);
  }
  if (name == "cuspidal_edge" || name == "cuspidal-edge") {
    info.family = Family::model_cuspidal_edge;
    info.name = "model-cuspidal-edge";
    auto [jet, point] = detail::evaluators([](const auto& u, const auto& v) {
      using T = std::decay_t<decltype(u)>;
      return std::array<T, 3>{u, v * v, v * v * v};
    });
    return Surface(info, {}, grid, jet, point);
  }
  if (name == "cusp25" || name == "25") {
    info.family = Family::model_25;
    info.name = "model-25";
    auto [jet, point] = detail::evaluators([](const auto& u, const auto& v) {
      using T = std::decay_t<decltype(u)>;
      return std::array<T, 3>{u, v * v, v * v * v * v * v};
    });
    auto normal = detail::jet_only([](const auto& u, const auto& v) {
      using T = std::decay_t<decltype(u)>;
      const T v3 = v * v * v;
      const T inv = 1.0 / sqrt(25.0 * (v3 * v3) + 4.0);
      return std::array<T, 3>{0.0 * u, -5.0 * (v3 * inv), 2.0 * inv};
    });
    return Surface(info, {}, grid, jet, point, normal);
  }
  if (name == "cone") {
    info.family = Family::model_cone;
    auto [jet, point] = detail::evaluators([](const auto& u, const auto& v) {
      using T = std::decay_t<decltype(u)>;
      return std::array<T, 3>{v * cos(u), v * sin(u), v + 0.0 * u};
    });
    return Surface(info, {}, {101, 101, 0.0, 2.0 * std::numbers::pi, -1.0, 1.0}, jet, point);
  }
  throw InputError("unknown standard model: " + name);
}

/// Surface from a generic formula (u, v) -> array<T,3>.
template <class Formula>
Surface custom_surface(std::string name, Formula f, Domain dom = {},
                       GridSpec grid = {101, 101, -1.0, 1.0, -1.0, 1.0}, double H = std::nan("")) {
  SurfaceInfo info;
  info.family = Family::custom;
  info.name = std::move(name);
  info.H = H;
  info.cmc = std::isfinite(H);
  auto [jet, point] = detail::evaluators(f);
  return Surface(info, dom, grid, jet, point);
}

/// The spacelike plane x0 = 0 (maximal, H = 0).
inline Surface plane_surface() {
  return custom_surface("plane", [](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    return std::array<T, 3>{0.0 * u, u, v + 0.0 * u};
  }, {}, {101, 101, -1.0, 1.0, -1.0, 1.0}, 0.0);
}

/// Lower sheet of the hyperboloid -x0² + x1² + x2² = -R², a totally umbilic
/// spacelike CMC surface with |H| = 1/R.
inline Surface hyperboloid_surface(double R = 1.0) {
  if (!(R > 0.0)) throw InputError("hyperboloid radius must be positive");
  Surface S = custom_surface("hyperboloid", [R](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    return std::array<T, 3>{-R * sqrt(1.0 + u * u + v * v), R * u, R * v};
  }, {}, {101, 101, -1.0, 1.0, -1.0, 1.0}, 1.0 / R);
  detail::orient_to_H(S, {0.1, 0.2});
  return S;
}

/// (u², uv, v²): rank 0 at the origin.
inline Surface rank0_surface() {
  return custom_surface("rank0", [](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    return std::array<T, 3>{u * u, u * v, v * v};
  });
}

/// Constructs a surface from its command-line family name.
inline Surface make_family(const std::string& family, double k, double H,
                           const std::string& of = "") {
  if (family == "delaunay-t") return delaunay_timelike(k, H);
  if (family == "delaunay-s") return delaunay_spacelike(k, H);
  if (family == "delaunay-l1" || family == "delaunay-l-i") return delaunay_lightlike(1, H);
  if (family == "delaunay-l2" || family == "delaunay-l-ii") return delaunay_lightlike(2, H);
  if (family == "conjugate") {
    if (of == "delaunay-t") return conjugate_of(Family::delaunay_timelike, k, H);
    if (of == "delaunay-s") return conjugate_of(Family::delaunay_spacelike, k, H);
    if (of == "delaunay-l1" || of == "delaunay-l-i") return conjugate_of(Family::delaunay_lightlike_i, k, H);
    if (of == "delaunay-l2" || of == "delaunay-l-ii") return conjugate_of(Family::delaunay_lightlike_ii, k, H);
    throw InputError("conjugate needs --of delaunay-t|delaunay-s|delaunay-l1|delaunay-l2");
  }
  if (family == "model-fold") return standard_model("fold");
  if (family == "model-cuspidal-edge") return standard_model("cuspidal_edge");
  if (family == "model-25") return standard_model("cusp25");
  if (family == "model-cone") return standard_model("cone");
  if (family == "plane") return plane_surface();
  if (family == "hyperboloid") return hyperboloid_surface(1.0 / std::abs(H));
  throw InputError("unknown family: " + family);
}

}  // namespace cmclab
