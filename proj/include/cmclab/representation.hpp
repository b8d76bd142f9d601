#pragma once

// Gauss map extraction, harmonic-map residuals, the Kenmotsu-type
// representation integrated over a conformal grid, Gauss-Codazzi and
// Laplacian residuals, and the CMC fold-obstruction certificate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmclab/core_geometry.hpp"
#include "cmclab/error.hpp"
#include "cmclab/jet.hpp"
#include "cmclab/quadrature.hpp"
#include "cmclab/singularity.hpp"
#include "cmclab/surfaces.hpp"

namespace cmclab {

// ---------------------------------------------------------------------------
// Complex-valued jets

/// re + i·im over a common base point z = u + iv.
struct CJet {
  Jet2 re, im;

  static CJet constant(Complex c, Point2 base, int degree = kJetDegree) {
    return {Jet2::constant(c.real(), base, degree), Jet2::constant(c.imag(), base, degree)};
  }
  Complex value() const { return {re.value(), im.value()}; }
  Complex coeff(int a, int b) const { return {re.coeff(a, b), im.coeff(a, b)}; }
  int degree() const { return std::min(re.degree(), im.degree()); }
  Point2 base() const { return re.base(); }

  /// ∂_z = (∂_u - i∂_v)/2.
  CJet dz() const { return {0.5 * (re.du() + im.dv()), 0.5 * (im.du() - re.dv())}; }
  /// ∂_z̄ = (∂_u + i∂_v)/2.
  CJet dzbar() const { return {0.5 * (re.du() - im.dv()), 0.5 * (im.du() + re.dv())}; }
  CJet conj() const { return {re, -im}; }
  Jet2 norm() const { return re * re + im * im; }
};

inline CJet operator+(const CJet& a, const CJet& b) { return {a.re + b.re, a.im + b.im}; }
inline CJet operator-(const CJet& a, const CJet& b) { return {a.re - b.re, a.im - b.im}; }
inline CJet operator-(const CJet& a) { return {-a.re, -a.im}; }
inline CJet operator*(const CJet& a, const CJet& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CJet operator*(Complex c, const CJet& a) {
  return {c.real() * a.re - c.imag() * a.im, c.real() * a.im + c.imag() * a.re};
}
inline CJet operator*(const Jet2& s, const CJet& a) { return {s * a.re, s * a.im}; }
inline CJet operator+(Complex c, const CJet& a) { return {a.re + c.real(), a.im + c.imag()}; }

using CJetVec3 = std::array<CJet, 3>;

// ---------------------------------------------------------------------------
// Gauss map

/// Unit normal in the convention of the representation formula: the negative
/// of the normal for which the mean curvature equals H.
inline JetVec3 representation_normal_jet(const Surface& S, Point2 p, int degree = kJetDegree - 1) {
  JetVec3 n = lorentz_normal_jet(S, p, degree);
  for (auto& c : n) c *= -1.0;
  return n;
}

/// g = π∘ν as a complex jet at a spacelike regular point.
inline CJet gauss_jet(const Surface& S, Point2 p, int degree = kJetDegree - 1) {
  const JetVec3 n = representation_normal_jet(S, p, degree);
  const Jet2 den = 1.0 - n[0];
  if (std::abs(den.value()) < 1e-14) throw Error("Gauss map at infinity");
  const Jet2 inv = 1.0 / den;
  return {n[1] * inv, n[2] * inv};
}

inline ExtComplex gauss_map_of(const Surface& S, Point2 p) {
  const JetVec3 n = representation_normal_jet(S, p, 0);
  return stereographic(H2Point::normalize(values(n)));
}

// ---------------------------------------------------------------------------
// Harmonic-map residuals

inline constexpr double kUnitCircleTol = 1e-8;

struct OmegaHat {
  Complex value;
  std::string method;  // "direct" or "limit"
};

namespace detail {
inline Complex omega_hat_direct(const CJet& g) {
  const Complex g0 = g.value();
  const double w = 1.0 - std::norm(g0);
  return std::conj(g.dzbar().value()) / (w * w);
}
inline CJet shifted(const CJet& g, double du, double dv) {
  const Point2 b = g.base();
  const Jet2 u = Jet2::coordinate_u({b.u + du, b.v + dv}, g.degree());
  const Jet2 v = Jet2::coordinate_v({b.u + du, b.v + dv}, g.degree());
  return {compose(g.re, u, v), compose(g.im, u, v)};
}
}  // namespace detail

/// ω̂ = ḡ_z/(1-|g|²)². On |g| = 1 the value is extended by Richardson
/// extrapolation of the jet-shifted values on both sides along u.
inline OmegaHat omega_hat(const CJet& g) {
  if (!std::isfinite(std::abs(g.value()))) throw Error("omega_hat needs a finite g");
  if (std::abs(1.0 - std::norm(g.value())) > kUnitCircleTol) return {detail::omega_hat_direct(g), "direct"};
  Complex side[2];
  int k = 0;
  for (double dir : {-1.0, 1.0}) {
    const double h = 1e-3 * dir;
    const Complex a = detail::omega_hat_direct(detail::shifted(g, h, 0.0));
    const Complex b = detail::omega_hat_direct(detail::shifted(g, 2.0 * h, 0.0));
    side[k++] = 2.0 * a - b;
  }
  const Complex mid = 0.5 * (side[0] + side[1]);
  if (!std::isfinite(std::abs(mid)) || std::abs(side[0] - side[1]) > 1e-4 * (1.0 + std::abs(mid)))
    throw Error("not regular extended harmonic");
  return {mid, "limit"};
}

/// |g_zz̄ + 2ḡ g_z g_z̄/(1-|g|²)|.
inline double harmonic_residual(const CJet& g) {
  const Complex g0 = g.value();
  const double w = 1.0 - std::norm(g0);
  if (std::abs(w) <= kUnitCircleTol) throw Error("|g| = 1 at node: use extended_harmonic_residual");
  const Complex gz = g.dz().value(), gzb = g.dzbar().value();
  const Complex gzzb = g.dz().dzbar().value();
  return std::abs(gzzb + 2.0 * std::conj(g0) * gz * gzb / w);
}

/// |g_zz̄| + |2ḡ g_z g_z̄/(1-|g|²)|, the size of the two terms of the
/// harmonic map equation.
inline double harmonic_scale(const CJet& g) {
  const Complex g0 = g.value();
  const double w = 1.0 - std::norm(g0);
  const Complex gz = g.dz().value(), gzb = g.dzbar().value();
  return std::abs(g.dz().dzbar().value()) + std::abs(2.0 * std::conj(g0) * gz * gzb / w);
}

/// |g_zz̄ + 2(1-|g|²)ḡ g_z conj(ω̂)|.
inline double extended_harmonic_residual(const CJet& g) {
  const Complex g0 = g.value();
  const OmegaHat om = omega_hat(g);
  const Complex gz = g.dz().value();
  const Complex gzzb = g.dz().dzbar().value();
  return std::abs(gzzb + 2.0 * (1.0 - std::norm(g0)) * std::conj(g0) * gz * std::conj(om.value));
}

// ---------------------------------------------------------------------------
// Conformal chart of a rotational surface

/// (s, t) with s(r) = ∫_{r0}^r √(E/G) dρ is conformal for a rotational
/// surface with F = 0 in (r, t).
class ConformalProfile {
 public:
  ConformalProfile(Surface S, double r0, Interval r_range, double t0 = 0.0)
      : S_(std::move(S)), r0_(r0), range_(r_range), t0_(t0) {
    const Surface& surf = S_;
    const double tt = t0;
    Integrand f(
        [&surf, tt](double r) {
          const JetVec3 X = surf.jet({r, tt}, 1);
          const LVec3 xu = values(du(X)), xv = values(dv(X));
          return std::sqrt(lorentz_inner(xu, xu) / lorentz_inner(xv, xv));
        },
        [&surf, tt](const Jet1& r) {
          const int d = r.degree();
          const JetVec3 X = surf.jet({r.value(), tt}, std::min(kJetDegree, d + 1));
          const JetVec3 Xu = du(X), Xv = dv(X);
          const Jet2 q = lorentz_inner(Xu, Xu) / lorentz_inner(Xv, Xv);
          const Jet1 dr = r.displacement();
          return restrict(sqrt(q), dr, dr * 0.0);
        });
    s_ = std::make_shared<Primitive>(f, r0);
  }
  ConformalProfile(const ConformalProfile&) = delete;
  ConformalProfile& operator=(const ConformalProfile&) = delete;

  const Surface& surface() const { return S_; }
  double anchor() const { return r0_; }
  const Interval& r_range() const { return range_; }
  const std::string& notice() const { return notice_; }
  void set_notice(std::string n) { notice_ = std::move(n); }

  double s_of_r(double r) const { return s_->value(r); }
  Jet1 s_jet(double r, int degree) const { return s_->jet(r, degree); }

  double r_of_s(double s) const {
    double r = r0_ + s / std::sqrt(E_over_G(r0_));
    r = std::clamp(r, range_.lo, range_.hi);
    for (int it = 0; it < 60; ++it) {
      const double f = s_of_r(r) - s;
      const double step = f / std::sqrt(E_over_G(r));
      r = std::clamp(r - step, range_.lo, range_.hi);
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
    return r;
  }

  /// Jet of r as a function of s (series reversion of s(r)).
  Jet1 r_jet(double s, int degree = kJetDegree) const {
    const double r = r_of_s(s);
    const Jet1 sj = s_jet(r, degree);
    const double a = sj[1];
    Series nl{};
    for (int k = 2; k <= degree; ++k) nl[k] = sj[k];
    const Jet1 ds = Jet1::variable(s, degree).displacement();
    Jet1 x = ds / a;
    for (int it = 0; it < degree; ++it) x = (ds - compose(nl, x)) / a;
    return x + r;
  }

  /// Conformal factor e^{2σ} = G at radius r.
  double conformal_factor(double r) const {
    const JetVec3 X = S_.jet({r, t0_}, 1);
    const LVec3 xv = values(dv(X));
    return lorentz_inner(xv, xv);
  }
  double sigma(double s) const { return 0.5 * std::log(conformal_factor(r_of_s(s))); }

  /// The surface in the (s, t) chart.
  Surface chart() const {
    const ConformalProfile* self = this;
    SurfaceInfo info = S_.info();
    info.name = info.name + "-conformal";
    Surface::JetFn jet = [self](Point2 p, int d) {
      const Jet1 rj = self->r_jet(p.u, d);
      const Jet2 r2 = lift(rj, Jet2::coordinate_u(p, d));
      const Jet2 t2 = Jet2::coordinate_v(p, d);
      const JetVec3 X = self->S_.jet({rj.value(), p.v}, d);
      JetVec3 out;
      for (int i = 0; i < 3; ++i) out[i] = compose(X[i], r2, t2);
      return out;
    };
    Surface::PointFn point = [self](Point2 p) { return self->S_.point({self->r_of_s(p.u), p.v}); };
    Domain dom{s_of_r(range_.lo), s_of_r(range_.hi), S_.domain().v_min, S_.domain().v_max};
    GridSpec g = S_.default_grid();
    g.u0 = dom.u_min;
    g.u1 = dom.u_max;
    Surface C(info, dom, g, jet, point);
    C.set_orientation(S_.orientation());
    return C;
  }

 private:
  double E_over_G(double r) const {
    const JetVec3 X = S_.jet({r, t0_}, 1);
    const LVec3 xu = values(du(X)), xv = values(dv(X));
    return lorentz_inner(xu, xu) / lorentz_inner(xv, xv);
  }

  Surface S_;
  double r0_;
  Interval range_;
  double t0_;
  std::shared_ptr<Primitive> s_;
  std::string notice_;
};

/// Conformal profile on [r_lo, r_hi], clipped to the component around the
/// anchor where G > 0.
inline std::unique_ptr<ConformalProfile> conformal_profile_chart(const Surface& S, double r_lo, double r_hi,
                                                                 std::optional<double> anchor = std::nullopt,
                                                                 double t0 = 0.0) {
  if (!S.info().rotational) throw InputError("conformal profile needs a rotational surface");
  if (!(r_lo < r_hi)) throw InputError("empty r range");
  const double r0 = anchor.value_or(0.5 * (r_lo + r_hi));
  auto G = [&](double r) {
    const JetVec3 X = S.jet({r, t0}, 1);
    const LVec3 xv = values(dv(X));
    return lorentz_inner(xv, xv);
  };
  if (!(G(r0) > 1e-10)) throw InputError("anchor lies on the singular axis");
  Interval range{r_lo, r_hi};
  std::string notice;
  const int n = 400;
  for (int i = 0; i <= n; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / n;
    if (G(r) > 1e-10) continue;
    if (r < r0) range.lo = std::max(range.lo, r + (r_hi - r_lo) / n);
    if (r > r0) range.hi = std::min(range.hi, r - (r_hi - r_lo) / n);
  }
  if (range.lo != r_lo || range.hi != r_hi)
    notice = "range clipped to avoid G = 0 (singular axis)";
  auto P = std::make_unique<ConformalProfile>(S, r0, range, t0);
  P->set_notice(notice);
  return P;
}

/// max(|E - G|, |F|)/E over a grid of the conformal chart.
inline double conformality_residual(const Surface& chart, const GridSpec& grid) {
  double worst = 0.0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const JetVec3 X = chart.jet({grid.u(i), grid.v(j)}, 1);
      const LVec3 xu = values(du(X)), xv = values(dv(X));
      const double E = lorentz_inner(xu, xu), F = lorentz_inner(xu, xv), G = lorentz_inner(xv, xv);
      worst = std::max(worst, std::max(std::abs(E - G), std::abs(F)) / E);
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Gauss data

struct GaussData {
  GridSpec grid;
  double H = 0.0;
  std::vector<CJet> g;  // node (i, j) at i * nv + j

  const CJet& node(int i, int j) const { return g.at(static_cast<size_t>(i) * grid.nv + j); }
};

/// Gauss map jets at every node of a grid in a conformal chart.
inline GaussData gauss_data_from(const Surface& chart, const GridSpec& grid, double H,
                                 int degree = kJetDegree - 1) {
  if (grid.nu < 2 || grid.nv < 2) throw InputError("grid must be 2D");
  GaussData gd;
  gd.grid = grid;
  gd.H = H;
  gd.g.reserve(static_cast<size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      try {
        gd.g.push_back(gauss_jet(chart, {grid.u(i), grid.v(j)}, degree));
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " at grid node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  return gd;
}

/// (-2g, 1+g², i(1-g²)) ω̂ as complex jets.
inline CJetVec3 representation_integrand(const CJet& g) {
  const CJet gzb = g.dzbar();
  const CJet gg = g * g;
  const Point2 b = g.base();
  const int d = gzb.degree();
  CJet gt{g.re.truncated(d), g.im.truncated(d)};
  CJet g2{gg.re.truncated(d), gg.im.truncated(d)};
  const Jet2 w = 1.0 - gt.norm();
  const Jet2 inv = 1.0 / (w * w);
  const CJet om = inv * gzb.conj();
  const Complex i(0.0, 1.0);
  const CJet one = CJet::constant(1.0, b, d);
  return {Complex(-2.0) * gt * om, (one + g2) * om, i * ((one - g2) * om)};
}

/// X_z predicted by the representation: c·(-2g, 1+g², i(1-g²))ω̂ with c = 1/H,
/// the constant obtained by differentiating X = (2/H) Re ∫ (...) ω once.
inline std::array<Complex, 3> predicted_Xz(const CJet& g, double H) {
  const CJetVec3 f = representation_integrand(g);
  return {f[0].value() / H, f[1].value() / H, f[2].value() / H};
}

/// max_i |X_z - predicted|_i / max|X_z| at a point of the conformal chart.
inline double derivative_identity_residual(const Surface& chart, Point2 p, double H) {
  const JetVec3 X = chart.jet(p, 1);
  const auto pred = predicted_Xz(gauss_jet(chart, p), H);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Complex xz(0.5 * X[i].coeff(1, 0), -0.5 * X[i].coeff(0, 1));
    num = std::max(num, std::abs(xz - pred[i]));
    den = std::max(den, std::abs(xz));
  }
  return num / den;
}

struct RepresentationResult {
  std::vector<LVec3> X;  // node (i, j) at i * nv + j
  double max_loop_residual = 0.0;
  int worst_i = -1, worst_j = -1;
  double max_harmonic_residual = 0.0;
};

class ClosednessError : public Error {
 public:
  ClosednessError(double residual, int i, int j)
      : Error("integrand not closed: g not harmonic or grid too coarse"), residual_(residual), i_(i), j_(j) {}
  double residual() const { return residual_; }
  int cell_i() const { return i_; }
  int cell_j() const { return j_; }

 private:
  double residual_;
  int i_, j_;
};

namespace detail {

/// Real jets of X_u = (2/H) Re F and X_v = -(2/H) Im F.
inline std::pair<JetVec3, JetVec3> coordinate_derivatives(const CJet& g, double H) {
  const CJetVec3 f = representation_integrand(g);
  JetVec3 xu, xv;
  for (int i = 0; i < 3; ++i) {
    xu[i] = (2.0 / H) * f[i].re;
    xv[i] = (-2.0 / H) * f[i].im;
  }
  return {xu, xv};
}

/// Trapezoid with Euler-Maclaurin end corrections up to h⁴.
inline LVec3 edge_integral(const JetVec3& fa, const JetVec3& fb, double h, bool along_u) {
  LVec3 out;
  for (int i = 0; i < 3; ++i) {
    auto d = [&](const Jet2& f, int k) {
      return factorial(k) * (along_u ? f.coeff(k, 0) : f.coeff(0, k));
    };
    double v = 0.5 * h * (fa[i].value() + fb[i].value());
    if (fa[i].degree() >= 1) v -= h * h / 12.0 * (d(fb[i], 1) - d(fa[i], 1));
    if (fa[i].degree() >= 3) v += std::pow(h, 4) / 720.0 * (d(fb[i], 3) - d(fa[i], 3));
    out[i] = v;
  }
  return out;
}

}  // namespace detail

/// Path integration of the representation over the grid along a spanning
/// tree (row j0, then columns), with closedness checked on every cell.
inline RepresentationResult integrate_representation(const GaussData& gd, int i0 = 0, int j0 = 0,
                                                     double loop_tol = 1e-8) {
  const GridSpec& G = gd.grid;
  if (G.nu < 2 || G.nv < 2) throw InputError("grid must be 2D");
  if (gd.H == 0.0 || !std::isfinite(gd.H)) throw InputError("H must be finite and nonzero");
  if (gd.g.size() != static_cast<size_t>(G.nu) * G.nv) throw InputError("Gauss data size does not match grid");
  double max_gzb = 0.0;
  for (const auto& g : gd.g) {
    if (!std::isfinite(std::abs(g.value()))) throw InputError("Gauss data contains g = infinity");
    max_gzb = std::max(max_gzb, std::abs(g.dzbar().value()) / (1.0 + std::norm(g.value())));
  }
  if (max_gzb < 1e-12) throw Error("holomorphic Gauss map excluded");

  const int nu = G.nu, nv = G.nv;
  const double hu = (G.u1 - G.u0) / (nu - 1), hv = (G.v1 - G.v0) / (nv - 1);
  std::vector<JetVec3> fu, fv;
  fu.reserve(gd.g.size());
  fv.reserve(gd.g.size());
  RepresentationResult res;
  for (const auto& g : gd.g) {
    auto [a, b] = detail::coordinate_derivatives(g, gd.H);
    fu.push_back(a);
    fv.push_back(b);
    if (std::abs(1.0 - std::norm(g.value())) > kUnitCircleTol)
      res.max_harmonic_residual = std::max(res.max_harmonic_residual, harmonic_residual(g));
  }
  auto id = [nv](int i, int j) { return static_cast<size_t>(i) * nv + j; };
  auto eu = [&](int i, int j) { return detail::edge_integral(fu[id(i, j)], fu[id(i + 1, j)], hu, true); };
  auto ev = [&](int i, int j) { return detail::edge_integral(fv[id(i, j)], fv[id(i, j + 1)], hv, false); };

  res.X.assign(gd.g.size(), LVec3{});
  for (int i = i0 + 1; i < nu; ++i) res.X[id(i, j0)] = res.X[id(i - 1, j0)] + eu(i - 1, j0);
  for (int i = i0 - 1; i >= 0; --i) res.X[id(i, j0)] = res.X[id(i + 1, j0)] - eu(i, j0);
  for (int i = 0; i < nu; ++i) {
    for (int j = j0 + 1; j < nv; ++j) res.X[id(i, j)] = res.X[id(i, j - 1)] + ev(i, j - 1);
    for (int j = j0 - 1; j >= 0; --j) res.X[id(i, j)] = res.X[id(i, j + 1)] - ev(i, j);
  }

  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j + 1 < nv; ++j) {
      const LVec3 a = eu(i, j), b = ev(i + 1, j), c = eu(i, j + 1), d = ev(i, j);
      const double scale = euclid_norm(a) + euclid_norm(b) + euclid_norm(c) + euclid_norm(d);
      const double r = euclid_norm(a + b - c - d) / scale;
      if (r > res.max_loop_residual) {
        res.max_loop_residual = r;
        res.worst_i = i;
        res.worst_j = j;
      }
    }
  if (res.max_loop_residual > loop_tol) throw ClosednessError(res.max_loop_residual, res.worst_i, res.worst_j);
  return res;
}

struct Alignment {
  std::array<std::array<double, 3>, 3> A{};
  LVec3 shift;
  double max_discrepancy = 0.0;
  double lorentz_defect = 0.0;  // |AᵀJA - J| with J = diag(-1,1,1)
};

/// Aligns reconstructed nodes with the original chart: translation at z0 and
/// the linear map taking (X_u, X_v, ν) of the reconstruction to the original.
inline Alignment align_reconstruction(const RepresentationResult& rec, const GaussData& gd, const Surface& chart,
                                      int i0 = 0, int j0 = 0) {
  const GridSpec& G = gd.grid;
  const Point2 z0{G.u(i0), G.v(j0)};
  const JetVec3 X = chart.jet(z0, 1);
  const LVec3 ou = values(du(X)), ov = values(dv(X));
  const LVec3 on = lorentz_cross(ou, ov);
  auto [fu, fv] = detail::coordinate_derivatives(gd.node(i0, j0), gd.H);
  const LVec3 ru = values(fu), rv = values(fv);
  const LVec3 rn = lorentz_cross(ru, rv);
  const std::array<LVec3, 3> Rc{ru, rv, rn}, Oc{ou, ov, on};
  // A = O R⁻¹ with R, O the column matrices.
  const double dR = det3(ru, rv, rn);
  if (dR == 0.0) throw Error("degenerate frame at the base point");
  std::array<std::array<double, 3>, 3> Rinv{};
  for (int r = 0; r < 3; ++r) {
    const LVec3 a = Rc[(r + 1) % 3], b = Rc[(r + 2) % 3];
    const LVec3 row = euclid_cross(a, b) / dR;
    for (int c = 0; c < 3; ++c) Rinv[r][c] = row[c];
  }
  Alignment al;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += Oc[k][r] * Rinv[k][c];
      al.A[r][c] = s;
    }
  auto apply = [&](const LVec3& x) {
    LVec3 y;
    for (int r = 0; r < 3; ++r) y[r] = al.A[r][0] * x[0] + al.A[r][1] * x[1] + al.A[r][2] * x[2];
    return y;
  };
  const size_t id0 = static_cast<size_t>(i0) * G.nv + j0;
  al.shift = chart.point(z0) - apply(rec.X[id0]);
  for (int i = 0; i < G.nu; ++i)
    for (int j = 0; j < G.nv; ++j) {
      const LVec3 y = apply(rec.X[static_cast<size_t>(i) * G.nv + j]) + al.shift;
      al.max_discrepancy = std::max(al.max_discrepancy, euclid_norm(y - chart.point({G.u(i), G.v(j)})));
    }
  const double J[3] = {-1.0, 1.0, 1.0};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += al.A[k][r] * J[k] * al.A[k][c];
      al.lorentz_defect = std::max(al.lorentz_defect, std::abs(s - (r == c ? J[r] : 0.0)));
    }
  return al;
}

/// Mean curvature of reconstructed nodes from fourth-order central differences
/// of X and the exact first derivatives; ν = -π⁻¹(g).
inline double reconstructed_mean_curvature(const RepresentationResult& rec, const GaussData& gd, int i, int j) {
  const GridSpec& G = gd.grid;
  if (i < 2 || j < 2 || i + 2 >= G.nu || j + 2 >= G.nv) throw InputError("node too close to the grid boundary");
  const double hu = (G.u1 - G.u0) / (G.nu - 1), hv = (G.v1 - G.v0) / (G.nv - 1);
  auto X = [&](int a, int b) { return rec.X[static_cast<size_t>(a) * G.nv + b]; };
  auto [fu, fv] = detail::coordinate_derivatives(gd.node(i, j), gd.H);
  const LVec3 xu = values(fu), xv = values(fv);
  const LVec3 xuu = (-1.0 * X(i + 2, j) + 16.0 * X(i + 1, j) - 30.0 * X(i, j) + 16.0 * X(i - 1, j) - X(i - 2, j)) /
                    (12.0 * hu * hu);
  const LVec3 xvv = (-1.0 * X(i, j + 2) + 16.0 * X(i, j + 1) - 30.0 * X(i, j) + 16.0 * X(i, j - 1) - X(i, j - 2)) /
                    (12.0 * hv * hv);
  const LVec3 xuv{fu[0].coeff(0, 1), fu[1].coeff(0, 1), fu[2].coeff(0, 1)};
  const H2Point nu_p = inverse_stereographic(gd.node(i, j).value());
  const LVec3 nu = -1.0 * nu_p.point();
  const double E = lorentz_inner(xu, xu), F = lorentz_inner(xu, xv), Gg = lorentz_inner(xv, xv);
  const double L = lorentz_inner(xuu, nu), M = lorentz_inner(xuv, nu), N = lorentz_inner(xvv, nu);
  return (E * N - 2.0 * F * M + Gg * L) / (2.0 * (E * Gg - F * F));
}

// ---------------------------------------------------------------------------
// Compatibility and Laplacian residuals

struct GaussCodazzi {
  double gauss = 0.0;
  double codazzi = 0.0;
};

/// |4σ_zz̄ - e^{2σ}H² + 4e^{-2σ}|q|²| and |q_z̄| in a conformal chart, with
/// e^{2σ} = E and q = ⟨X_zz, ν⟩.
inline GaussCodazzi gauss_codazzi_residual(const Surface& chart, Point2 p, double H) {
  const JetVec3 X = chart.jet(p, kJetDegree);
  const JetVec3 Xu = du(X), Xv = dv(X);
  const Jet2 E = lorentz_inner(Xu, Xu);
  const Jet2 sigma = 0.5 * log(E);
  const double szzb = 0.25 * (2.0 * sigma.coeff(2, 0) + 2.0 * sigma.coeff(0, 2));
  const JetVec3 n = representation_normal_jet(chart, p, kJetDegree - 1);
  const JetVec3 Xuu = du(Xu), Xuv = dv(Xu), Xvv = dv(Xv);
  const CJet q{0.25 * (lorentz_inner(Xuu, n) - lorentz_inner(Xvv, n)), -0.5 * lorentz_inner(Xuv, n)};
  const double e2s = E.value();
  GaussCodazzi r;
  r.gauss = std::abs(4.0 * szzb - e2s * H * H + 4.0 / e2s * std::norm(q.value()));
  r.codazzi = std::abs(q.dzbar().value());
  return r;
}

/// |Δ X + 2Hν| (Euclidean norm), Δ the Laplace-Beltrami operator of ds².
inline double laplacian_identity_residual(const Surface& S, Point2 p) {
  const JetVec3 X = S.jet(p, 3);
  const JetVec3 Xu = du(X), Xv = dv(X);
  const Jet2 E = lorentz_inner(Xu, Xu), F = lorentz_inner(Xu, Xv), G = lorentz_inner(Xv, Xv);
  const Jet2 W = E * G - F * F;
  if (!(W.value() > 1e-12 * (E.value() * G.value() + 1e-300)) || !(E.value() > 0.0))
    throw Error("not a spacelike regular point");
  const Jet2 sW = sqrt(W);
  const FundamentalForms ff = fundamental_forms(S, p);
  const double H = S.info().H;
  LVec3 r;
  for (int i = 0; i < 3; ++i) {
    const Jet2 a = sW * (G * Xu[i] - F * Xv[i]) / W;
    const Jet2 b = sW * (E * Xv[i] - F * Xu[i]) / W;
    r[i] = (a.coeff(1, 0) + b.coeff(0, 1)) / sW.value() + 2.0 * H * ff.nu[i];
  }
  return euclid_norm(r);
}

// ---------------------------------------------------------------------------
// Fold obstruction for CMC surfaces

struct FoldObstruction {
  Point2 location;
  bool rank0 = false;
  std::string regime;
  double g_limit_plus = 0.0;   // Richardson limit of |g| - 1 from the dλ > 0 side
  double g_limit_minus = 0.0;
  double abs_g_minus_one = 0.0;  // max of the two limits in modulus
  double dg_norm = 0.0;          // |∂g| across the curve
  int side_sign_plus = 0, side_sign_minus = 0;
  bool sign_flip = false;
  bool sheet_flip = false;
  double laplacian_residual = 0.0;
  double offset = 1e-4;
  std::string conclusion;
};

/// Numerical certificate that a non-degenerate singular point of a CMC
/// surface is not a fold: |g| → 1 from both sides with |g| - 1 changing sign,
/// ν switching sheets, and ΔX = -2Hν at flanking regular points.
inline FoldObstruction cmc_fold_obstruction(const Surface& S, const SingularPointRecord& rec, double h = 1e-4) {
  FoldObstruction c;
  c.location = rec.location;
  c.offset = h;
  if (rec.kind == SingularKind::degenerate_rank0 || rec.rank == 0) {
    c.rank0 = true;
    c.regime = "rank-0 regime: omega(p) = 0";
    c.conclusion = "no certificate (rank 0)";
    return c;
  }
  const double gl = detail::norm2(rec.dlambda);
  if (!(gl > 0.0)) throw Error("degenerate singular point: dlambda = 0");
  const Vec2 N{rec.dlambda[0] / gl, rec.dlambda[1] / gl};
  const Point2 p = rec.location;
  auto at = [&](double s) { return Point2{p.u + s * N[0], p.v + s * N[1]}; };
  auto gval = [&](double s) { return gauss_map_of(S, at(s)); };
  auto dev = [&](double s) { return gval(s).abs() - 1.0; };

  c.g_limit_plus = 2.0 * dev(h) - dev(2.0 * h);
  c.g_limit_minus = 2.0 * dev(-h) - dev(-2.0 * h);
  c.abs_g_minus_one = std::max(std::abs(c.g_limit_plus), std::abs(c.g_limit_minus));
  c.side_sign_plus = dev(h) > 0 ? 1 : -1;
  c.side_sign_minus = dev(-h) > 0 ? 1 : -1;
  c.sign_flip = c.side_sign_plus != c.side_sign_minus;
  const ExtComplex gp = gval(h), gm = gval(-h);
  if (!gp.is_infinite() && !gm.is_infinite()) c.dg_norm = std::abs(gp.value() - gm.value()) / (2.0 * h);
  const double x0p = fundamental_forms(S, at(h)).nu[0], x0m = fundamental_forms(S, at(-h)).nu[0];
  c.sheet_flip = (x0p > 0) != (x0m > 0);

  // Flanking regular points at distance up to 0.25 inside the domain.
  const Domain& D = S.domain();
  for (double dir : {-1.0, 1.0}) {
    double s = 0.25;
    while (s > 1e-3 && !D.contains(at(dir * s))) s *= 0.5;
    if (!D.contains(at(dir * s))) continue;
    c.laplacian_residual = std::max(c.laplacian_residual, laplacian_identity_residual(S, at(dir * s)));
  }
  c.conclusion = c.sign_flip ? "fold impossible" : "inconclusive";
  return c;
}

// ---------------------------------------------------------------------------
// Singular locus characterization

struct LocusEntry {
  Point2 location;
  std::string type;  // "|g|=1", "omega=0", "g=infinity"
  int rank = 1;
  double abs_g_minus_one = 0.0;
};

struct LocusReport {
  std::vector<LocusEntry> entries;
  int unit_circle = 0, omega_zero = 0, infinity = 0;
  std::string note;
};

/// Classifies the singular points traced on a grid by the vanishing factor of
/// ds² = (1-|g|²)²|ω|²; also scans nodes for g = ∞.
inline LocusReport singular_locus_characterization(const Surface& S, const GridSpec& grid) {
  LocusReport rep;
  for (const auto& rec : trace_singular_curve(S, grid)) {
    LocusEntry e;
    e.location = rec.location;
    e.rank = rec.rank;
    if (rec.rank == 0) {
      e.type = "omega=0";
      ++rep.omega_zero;
    } else {
      const FoldObstruction c = cmc_fold_obstruction(S, rec);
      e.abs_g_minus_one = c.abs_g_minus_one;
      e.type = c.abs_g_minus_one < 1e-6 ? "|g|=1" : "omega=0";
      ++(e.type == "|g|=1" ? rep.unit_circle : rep.omega_zero);
    }
    rep.entries.push_back(e);
  }
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const Point2 p{grid.u(i), grid.v(j)};
      try {
        if (gauss_map_of(S, p).abs() > 1e12) {
          rep.entries.push_back({p, "g=infinity", 2, 0.0});
          ++rep.infinity;
        }
      } catch (const Error&) {
      }
    }
  if (rep.infinity > 0) rep.note = "g = infinity locus not exercised by the Delaunay examples";
  return rep;
}

}  // namespace cmclab
