#pragma once

// Singular curves of frontals, kind classification, the (2,5)-cuspidal edge
// criterion, the fold test and the CMC fold-obstruction certificate.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cmclab/core_geometry.hpp"
#include "cmclab/error.hpp"
#include "cmclab/jet.hpp"
#include "cmclab/surfaces.hpp"

namespace cmclab {

struct SingularTolerances {
  double zero_rel = 1e-8;        // relative determinant zero test
  double angle = 1e-6;           // first-kind transversality
  double collinear = 1e-6;       // residual of η̃³X = C η̃²X
  double image = 1e-9;           // conelike image diameter
  double normal_distance = 1e-9; // switch to the divided normal below this distance
  double root = 1e-12;           // bisection width
  double fold = 1e-8;            // odd-part residual of the fold test
};

enum class SingularKind { first_kind, conelike, degenerate_rank0, other };

inline std::string to_string(SingularKind k) {
  switch (k) {
    case SingularKind::first_kind: return "first_kind";
    case SingularKind::conelike: return "conelike";
    case SingularKind::degenerate_rank0: return "degenerate_rank0";
    case SingularKind::other: return "other";
  }
  return "unknown";
}

using Vec2 = std::array<double, 2>;

struct SingularPointRecord {
  Point2 location;
  double lambda = 0.0;
  Vec2 dlambda{0.0, 0.0};
  std::optional<Vec2> null_vector;  // unit, oriented so dλ(η) >= 0
  Vec2 tangent{0.0, 0.0};           // unit, ⟂ dλ
  SingularKind kind = SingularKind::other;
  int rank = 1;
  Vec2 singular_values{0.0, 0.0};   // of dX, descending
  bool nondegenerate = false;
  LVec3 image;
};

// ---------------------------------------------------------------------------
// Small linear algebra helpers

namespace detail {

inline double norm2(const Vec2& a) { return std::hypot(a[0], a[1]); }

/// Eigen-decomposition of [[A,B],[B,C]]; returns (λmax, λmin, unit eigvec of λmin).
inline std::tuple<double, double, Vec2> sym_eig2(double A, double B, double C) {
  const double m = 0.5 * (A + C);
  const double d = std::hypot(0.5 * (A - C), B);
  const double lmax = m + d, lmin = m - d;
  Vec2 v;
  if (std::abs(B) > 1e-300 || A != C) {
    // (B, lmin - A) and (lmin - C, B) both solve; take the larger.
    const Vec2 v1{B, lmin - A}, v2{lmin - C, B};
    v = norm2(v1) >= norm2(v2) ? v1 : v2;
  } else {
    v = {0.0, 1.0};
  }
  const double n = norm2(v);
  if (n == 0.0) return {lmax, lmin, Vec2{0.0, 1.0}};
  return {lmax, lmin, Vec2{v[0] / n, v[1] / n}};
}

inline LVec3 apply_dx(const LVec3& xu, const LVec3& xv, const Vec2& w) { return xu * w[0] + xv * w[1]; }

inline double jet_scale(const JetVec3& X) {
  double m = 0.0;
  for (const auto& c : X) m = std::max(m, c.max_abs(1, c.degree()));
  return m;
}

/// Inverse germ of (u,v) -> (s,w) where s, w are displacement jets at some
/// base with invertible linear part. Returns (Δu, Δv) as jets at (0,0).
inline std::array<Jet2, 2> invert_germ(const Jet2& s, const Jet2& w) {
  const int d = std::min(s.degree(), w.degree());
  const double a = s.coeff(1, 0), b = s.coeff(0, 1), c = w.coeff(1, 0), e = w.coeff(0, 1);
  const double det = a * e - b * c;
  if (det == 0.0) throw Error("germ not invertible");
  const Jet2 S = Jet2::coordinate_u({}, d), W = Jet2::coordinate_v({}, d);
  auto lin = [&](const Jet2& x, const Jet2& y) {
    return std::array<Jet2, 2>{(e * x - b * y) / det, (-c * x + a * y) / det};
  };
  std::array<Jet2, 2> uv = lin(S, W);
  for (int it = 0; it < d; ++it) {
    // s(U,V) = a U + b V + ns(U,V)  =>  (U,V) = A^{-1}((S,W) - n(U,V))
    const Jet2 sv = compose(s, uv[0], uv[1]) - (a * uv[0] + b * uv[1]);
    const Jet2 wv = compose(w, uv[0], uv[1]) - (c * uv[0] + e * uv[1]);
    uv = lin(S - sv, W - wv);
  }
  return uv;
}

inline void orient(JetVec3& n, const LVec3& reference) {
  const LVec3 v = values(n);
  if (euclid_inner(v, reference) < 0.0)
    for (auto& c : n) c *= -1.0;
}

/// Default orientation: the first component of magnitude > 1e-8 is positive.
inline void orient_default(JetVec3& n) {
  const LVec3 v = values(n);
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-8) {
      if (v[i] < 0.0)
        for (auto& c : n) c *= -1.0;
      return;
    }
  }
}

inline JetVec3 normalized(const JetVec3& d) {
  const Jet2 inv = 1.0 / sqrt(euclid_inner(d, d));
  return scale(d, inv);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frontal normal and signed area density

/// Jet of the smooth Euclidean unit normal. Uses the analytic normal when the
/// surface has one. Otherwise c = X_u × X_v is normalized, or, within
/// `normal_distance` of the zero set of c, divided by its component with the
/// largest gradient (a defining function of the singular curve) first.
inline JetVec3 euclidean_normal_jet(const Surface& S, Point2 p,
                                    const std::optional<LVec3>& reference = std::nullopt,
                                    const SingularTolerances& tol = {}) {
  JetVec3 n;
  if (S.has_analytic_normal()) {
    n = S.analytic_normal(p, 3);
    if (reference) detail::orient(n, *reference);
    return n;
  }
  const JetVec3 X = S.jet(p, kJetDegree);
  const JetVec3 c = euclid_cross(du(X), dv(X));
  const LVec3 c0 = values(c);
  int best = 0;
  double gbest = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double g = std::hypot(c[i].coeff(1, 0), c[i].coeff(0, 1));
    if (g > gbest) {
      gbest = g;
      best = i;
    }
  }
  const double cn = euclid_norm(c0);
  if (gbest > 0.0 && cn < tol.normal_distance * gbest) {
    const double gu = c[best].coeff(1, 0), gv = c[best].coeff(0, 1);
    const Jet2 s = c[best].displacement();
    const Jet2 w = Jet2::affine(0.0, -gv, gu, p, s.degree());
    const auto inv = detail::invert_germ(s, w);
    const double M = detail::jet_scale(X);
    JetVec3 d;
    for (int j = 0; j < 3; ++j) {
      const Jet2 Cj = compose(c[j], inv[0], inv[1]);
      for (int b = 1; b <= Cj.degree(); ++b) {
        if (std::abs(Cj.coeff(0, b)) > 1e-6 * std::max(gbest, M * M))
          throw Error("normal undefined (rank 0 or non-frontal)");
      }
      Jet2 Dj = Jet2::constant(0.0, {}, Cj.degree() - 1);
      for (int nn = 0; nn <= Dj.degree(); ++nn)
        for (int b = 0; b <= nn; ++b) Dj.set_coeff(nn - b, b, Cj.coeff(nn - b + 1, b));
      d[j] = compose(Dj, s.truncated(Dj.degree()), w.truncated(Dj.degree()));
    }
    n = detail::normalized(d);
  } else if (cn > 0.0) {
    n = detail::normalized(c);
  } else {
    throw Error("normal undefined (rank 0 or non-frontal)");
  }
  if (reference)
    detail::orient(n, *reference);
  else
    detail::orient_default(n);
  for (auto& comp : n) comp = comp.truncated(3);
  return n;
}

inline LVec3 euclidean_normal(const Surface& S, Point2 p,
                              const std::optional<LVec3>& reference = std::nullopt,
                              const SingularTolerances& tol = {}) {
  return values(euclidean_normal_jet(S, p, reference, tol));
}

/// Jet (degree 3) of λ = det(X_u, X_v, n).
inline Jet2 lambda_jet(const Surface& S, Point2 p, const std::optional<LVec3>& reference = std::nullopt,
                       const SingularTolerances& tol = {}) {
  const JetVec3 X = S.jet(p, 4);
  const JetVec3 n = euclidean_normal_jet(S, p, reference, tol);
  return det3(du(X), dv(X), n);
}

inline double signed_area_density(const Surface& S, Point2 p,
                                  const std::optional<LVec3>& reference = std::nullopt) {
  const JetVec3 X = S.jet(p, 1);
  const LVec3 n = euclidean_normal(S, p, reference);
  return det3(values(du(X)), values(dv(X)), n);
}

// ---------------------------------------------------------------------------
// Point analysis and classification

namespace detail {

/// Newton correction of q onto {λ = 0} along direction N.
inline Point2 project_to_curve(const Surface& S, Point2 q, const Vec2& N, const LVec3& ref,
                               const SingularTolerances& tol) {
  for (int it = 0; it < 30; ++it) {
    const Jet2 L = lambda_jet(S, q, ref, tol);
    const double slope = L.coeff(1, 0) * N[0] + L.coeff(0, 1) * N[1];
    if (slope == 0.0) break;
    const double step = -L.value() / slope;
    q = {q.u + step * N[0], q.v + step * N[1]};
    if (std::abs(step) < 1e-15) break;
  }
  return q;
}

}  // namespace detail

/// Kind of a recorded singular point, from the rank and null direction of dX.
inline SingularKind classify_kind(const Surface& S, SingularPointRecord& rec,
                                  const SingularTolerances& tol = {}) {
  const Point2 p = rec.location;
  const JetVec3 X = S.jet(p, 1);
  const LVec3 xu = values(du(X)), xv = values(dv(X));
  const double A = euclid_inner(xu, xu), B = euclid_inner(xu, xv), C = euclid_inner(xv, xv);
  auto [lmax, lmin, eta] = detail::sym_eig2(A, B, C);
  const double smax = std::sqrt(std::max(lmax, 0.0)), smin = std::sqrt(std::max(lmin, 0.0));
  rec.singular_values = {smax, smin};
  rec.image = values(X);
  if (smax <= 1e-9 * std::max(1.0, euclid_norm(rec.image))) {
    rec.rank = 0;
    rec.null_vector.reset();
    return rec.kind = SingularKind::degenerate_rank0;
  }
  rec.rank = smin < 1e-7 * smax ? 1 : 2;
  if (eta[0] * rec.dlambda[0] + eta[1] * rec.dlambda[1] < 0.0) eta = {-eta[0], -eta[1]};
  rec.null_vector = eta;
  const double gl = detail::norm2(rec.dlambda);
  if (!rec.nondegenerate || gl == 0.0) return rec.kind = SingularKind::other;
  const Vec2 T = rec.tangent;
  if (std::abs(T[0] * eta[1] - T[1] * eta[0]) > tol.angle) return rec.kind = SingularKind::first_kind;

  // Conelike: dX(γ') = 0 and nearby curve points share the image point.
  const double dxt = euclid_norm(detail::apply_dx(xu, xv, T));
  if (dxt < 1e-7 * smax) {
    const Vec2 N{rec.dlambda[0] / gl, rec.dlambda[1] / gl};
    const LVec3 ref = euclidean_normal(S, p);
    double diam = 0.0;
    for (double h : {-2e-2, -1e-2, 1e-2, 2e-2}) {
      Point2 q{p.u + h * T[0], p.v + h * T[1]};
      if (!S.domain().contains(q)) continue;
      q = detail::project_to_curve(S, q, N, ref, tol);
      diam = std::max(diam, euclid_norm(S.point(q) - rec.image));
    }
    if (diam < tol.image * (1.0 + euclid_norm(rec.image))) return rec.kind = SingularKind::conelike;
  }
  return rec.kind = SingularKind::other;
}

/// Full record of a (nearly) singular point p.
inline SingularPointRecord analyze_point(const Surface& S, Point2 p,
                                         const std::optional<LVec3>& reference = std::nullopt,
                                         const SingularTolerances& tol = {}) {
  SingularPointRecord rec;
  rec.location = p;
  const JetVec3 X1 = S.jet(p, 1);
  const LVec3 xu = values(du(X1)), xv = values(dv(X1));
  const double scale = std::max({euclid_norm(xu), euclid_norm(xv), 1e-300});
  try {
    const Jet2 L = lambda_jet(S, p, reference, tol);
    rec.lambda = L.value();
    rec.dlambda = {L.coeff(1, 0), L.coeff(0, 1)};
  } catch (const Error&) {
    rec.lambda = 0.0;
    rec.dlambda = {0.0, 0.0};
  }
  const double gl = detail::norm2(rec.dlambda);
  rec.nondegenerate = gl > 1e-8 * scale * scale;
  if (gl > 0.0) {
    Vec2 T{-rec.dlambda[1] / gl, rec.dlambda[0] / gl};
    const bool u_dom = std::abs(T[0]) >= std::abs(T[1]) * (1.0 + 1e-12);
    if ((u_dom && T[0] < 0.0) || (!u_dom && T[1] < 0.0)) T = {-T[0], -T[1]};
    rec.tangent = T;
  }
  classify_kind(S, rec, tol);
  return rec;
}

/// Sign-change scan of λ over grid edges followed by bisection. Nodes where
/// λ vanishes exactly are recorded directly. Records are sorted by (u, v).
inline std::vector<SingularPointRecord> trace_singular_curve(const Surface& S, const GridSpec& box,
                                                             const SingularTolerances& tol = {}) {
  if (box.nu < 2 || box.nv < 2) throw InputError("grid must be 2D");
  struct Node {
    bool ok = false;
    LVec3 n;
    double lambda = 0.0;
  };
  std::vector<Node> nodes(static_cast<size_t>(box.nu) * box.nv);
  auto at = [&](int i, int j) -> Node& { return nodes[static_cast<size_t>(i) * box.nv + j]; };
  for (int i = 0; i < box.nu; ++i)
    for (int j = 0; j < box.nv; ++j) {
      Node& nd = at(i, j);
      try {
        const Point2 p{box.u(i), box.v(j)};
        nd.n = euclidean_normal(S, p, std::nullopt, tol);
        nd.lambda = signed_area_density(S, p, nd.n);
        nd.ok = true;
      } catch (const Error&) {
        nd.ok = false;
      }
    }

  std::vector<Point2> roots;
  for (int i = 0; i < box.nu; ++i)
    for (int j = 0; j < box.nv; ++j)
      if (at(i, j).ok && at(i, j).lambda == 0.0) roots.push_back({box.u(i), box.v(j)});

  auto refine = [&](Point2 a, Point2 b, const LVec3& ref, double la) {
    double s0 = 0.0, s1 = 1.0;
    const double len = std::hypot(b.u - a.u, b.v - a.v);
    for (int it = 0; it < 200 && (s1 - s0) * len > tol.root; ++it) {
      const double m = 0.5 * (s0 + s1);
      const Point2 q{a.u + m * (b.u - a.u), a.v + m * (b.v - a.v)};
      double lm;
      try {
        lm = signed_area_density(S, q, ref);
      } catch (const Error&) {
        throw Error("degenerate zero set");
      }
      if (lm == 0.0) return q;
      ((lm > 0.0) == (la > 0.0) ? s0 : s1) = m;
    }
    const double m = 0.5 * (s0 + s1);
    return Point2{a.u + m * (b.u - a.u), a.v + m * (b.v - a.v)};
  };

  auto edge = [&](int i0, int j0, int i1, int j1) {
    const Node& A = at(i0, j0);
    const Node& B = at(i1, j1);
    if (!A.ok || !B.ok) return;
    const Point2 pa{box.u(i0), box.v(j0)}, pb{box.u(i1), box.v(j1)};
    double lb = B.lambda;
    if (euclid_inner(A.n, B.n) < 0.0) lb = -lb;
    if (A.lambda * lb < 0.0) roots.push_back(refine(pa, pb, A.n, A.lambda));
  };
  for (int i = 0; i < box.nu; ++i)
    for (int j = 0; j < box.nv; ++j) {
      if (i + 1 < box.nu) edge(i, j, i + 1, j);
      if (j + 1 < box.nv) edge(i, j, i, j + 1);
    }

  std::sort(roots.begin(), roots.end(),
            [](const Point2& a, const Point2& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
  std::vector<Point2> unique;
  for (const auto& r : roots) {
    bool dup = false;
    for (const auto& q : unique)
      if (std::hypot(r.u - q.u, r.v - q.v) < 1e-9) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(r);
  }
  std::vector<SingularPointRecord> out;
  out.reserve(unique.size());
  for (const auto& r : unique) out.push_back(analyze_point(S, r, std::nullopt, tol));
  return out;
}

// ---------------------------------------------------------------------------
// Straightened chart

/// X in coordinates (σ, τ) = (u, v) of the returned jets, where σ = 0 is the
/// singular curve through p, ∂_σ is the null direction and ∂_τ = γ' at σ = 0.
struct StraightChart {
  JetVec3 Y;          // jets at (0,0), degree 5; coefficients of τ-degree <= 3 are exact
  Vec2 tangent;       // γ'(0) in the original chart
  Vec2 null_vector;   // η(0) in the original chart
  double scale = 1.0; // largest jet coefficient magnitude of Y in degrees 1..5
};

namespace detail {
inline Jet1 pad(const Jet1& j) {
  std::array<double, kJetDegree + 1> c{};
  for (int k = 0; k <= j.degree(); ++k) c[k] = j[k];
  return Jet1::from_coefficients(c, j.base(), kJetDegree);
}
inline Jet2 in_tau(const Jet1& f) { return lift(pad(f), Jet2::coordinate_v({}, kJetDegree)); }
}  // namespace detail

inline StraightChart straighten(const Surface& S, const SingularPointRecord& rec,
                                const SingularTolerances& tol = {}) {
  if (rec.kind != SingularKind::first_kind) throw Error("straightening needs a first-kind point");
  const Point2 p = rec.location;
  const Jet2 L = lambda_jet(S, p, std::nullopt, tol);
  Vec2 dl{L.coeff(1, 0), L.coeff(0, 1)};
  // λ's sign follows the default normal orientation, as in rec.
  const double gl = detail::norm2(dl);
  const Vec2 N{dl[0] / gl, dl[1] / gl};
  const Vec2 T = rec.tangent;
  const int d = 3;

  const Jet1 tau = Jet1::variable(0.0, d);
  Jet1 s = Jet1::constant(0.0, 0.0, d);
  const double slope = dl[0] * N[0] + dl[1] * N[1];
  for (int it = 0; it <= d + 1; ++it) {
    const Jet1 gu = tau * T[0] + s * N[0], gv = tau * T[1] + s * N[1];
    s = s - restrict(L, gu, gv) / slope;
  }
  const Jet1 gu = tau * T[0] + s * N[0], gv = tau * T[1] + s * N[1];

  const JetVec3 X = S.jet(p, kJetDegree);
  const JetVec3 Xu = du(X), Xv = dv(X);
  std::array<Jet1, 3> ju, jv;
  for (int i = 0; i < 3; ++i) {
    ju[i] = restrict(Xu[i], gu, gv);
    jv[i] = restrict(Xv[i], gu, gv);
  }
  auto dot = [](const std::array<Jet1, 3>& a, const std::array<Jet1, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  const Jet1 A = dot(ju, ju), B = dot(ju, jv), C = dot(jv, jv);
  Jet1 e0, e1;
  if (C.value() >= A.value()) {
    e0 = C;
    e1 = -B;
  } else {
    e0 = B;
    e1 = -A;
  }
  const Jet1 inv = 1.0 / sqrt(e0 * e0 + e1 * e1);
  e0 = e0 * inv;
  e1 = e1 * inv;
  if (e0.value() * dl[0] + e1.value() * dl[1] < 0.0) {
    e0 = -e0;
    e1 = -e1;
  }

  const Jet2 sigma = Jet2::coordinate_u({}, kJetDegree);
  const Jet2 psi_u = detail::in_tau(gu) + sigma * detail::in_tau(e0);
  const Jet2 psi_v = detail::in_tau(gv) + sigma * detail::in_tau(e1);
  StraightChart ch;
  for (int i = 0; i < 3; ++i) ch.Y[i] = compose(X[i], psi_u, psi_v);
  ch.tangent = T;
  ch.null_vector = {e0.value(), e1.value()};
  ch.scale = std::max(detail::jet_scale(ch.Y), 1e-300);
  return ch;
}

// ---------------------------------------------------------------------------
// Criterion for (2,5)-cuspidal edges in a straightened chart

struct Determinant {
  double value = 0.0;
  double scale = 1.0;  // product of floored column norms
  double relative() const { return std::abs(value) / scale; }
};

namespace detail {
inline Determinant column_det(const std::array<LVec3, 3>& cols, const std::array<int, 3>& orders, double M) {
  Determinant d;
  d.value = det3(cols[0], cols[1], cols[2]);
  d.scale = 1.0;
  for (int i = 0; i < 3; ++i) d.scale *= std::max(euclid_norm(cols[i]), factorial(orders[i]) * M);
  return d;
}
inline VectorFieldJet xi_field() { return VectorFieldJet::constant(0.0, 1.0, {}, kJetDegree); }
inline VectorFieldJet eta_field() { return VectorFieldJet::constant(1.0, 0.0, {}, kJetDegree); }
}  // namespace detail

/// det(ξX, η²X, η³X) at the chart origin.
inline Determinant evaluate_condition3(const JetVec3& Y, const VectorFieldJet& xi, const VectorFieldJet& eta,
                                       double M) {
  return detail::column_det({iterated_field_derivative(Y, xi, 1), iterated_field_derivative(Y, eta, 2),
                             iterated_field_derivative(Y, eta, 3)},
                            {1, 2, 3}, M);
}

struct SpecialField {
  double a = 0.0, b = 0.0;
  VectorFieldJet field;
  double residual2 = 0.0;  // |ξX·η̃²X|
  double residual3 = 0.0;  // |ξX·η̃³X|
};

/// η̃ = ∂_σ + (aσ + bσ²)∂_τ with the coefficients of the special null field.
inline SpecialField special_null_field(const JetVec3& Y) {
  const LVec3 Yt = values(dv(Y));
  const double n2 = euclid_inner(Yt, Yt);
  if (!(n2 > 0.0)) throw Error("singular tangent degenerate");
  auto c = [&](int a, int b) { return LVec3{Y[0].coeff(a, b), Y[1].coeff(a, b), Y[2].coeff(a, b)}; };
  const LVec3 Yss = 2.0 * c(2, 0), Ysss = 6.0 * c(3, 0), Yst = c(1, 1);
  SpecialField sf;
  sf.a = -euclid_inner(Yt, Yss) / n2;
  sf.b = -euclid_inner(Yt, Ysss + 3.0 * sf.a * Yst) / (2.0 * n2);
  const Jet2 sigma = Jet2::coordinate_u({}, kJetDegree);
  sf.field = {Jet2::constant(1.0, {}, kJetDegree), sf.a * sigma + sf.b * (sigma * sigma)};
  sf.residual2 = std::abs(euclid_inner(Yt, iterated_field_derivative(Y, sf.field, 2)));
  sf.residual3 = std::abs(euclid_inner(Yt, iterated_field_derivative(Y, sf.field, 3)));
  return sf;
}

struct ConstantC {
  double C = 0.0;
  double residual = 0.0;
};

inline ConstantC constant_C(const JetVec3& Y, const VectorFieldJet& eta) {
  const LVec3 e2 = iterated_field_derivative(Y, eta, 2), e3 = iterated_field_derivative(Y, eta, 3);
  const double n2 = euclid_inner(e2, e2);
  if (!(n2 > 0.0)) throw Error("hypothesis violated: second derivative along the null field vanishes");
  ConstantC r;
  r.C = euclid_inner(e3, e2) / n2;
  r.residual = euclid_norm(e3 - r.C * e2) / std::sqrt(n2);
  return r;
}

struct Condition4 {
  ConstantC C;
  Determinant det;
};

/// det(ξX, η̃²X, 3η̃⁵X - 10Cη̃⁴X) for a special null field η̃.
inline Condition4 evaluate_condition4(const JetVec3& Y, const VectorFieldJet& xi, const VectorFieldJet& eta,
                                      double M) {
  Condition4 r;
  r.C = constant_C(Y, eta);
  const LVec3 col3 = 3.0 * iterated_field_derivative(Y, eta, 5) - 10.0 * r.C.C * iterated_field_derivative(Y, eta, 4);
  r.det = detail::column_det({iterated_field_derivative(Y, xi, 1), iterated_field_derivative(Y, eta, 2), col3},
                             {1, 2, 5}, M);
  return r;
}

enum class Verdict { cusp25, rejected_cond3, rejected_cond4, not_applicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::cusp25: return "cusp25";
    case Verdict::rejected_cond3: return "rejected_cond3";
    case Verdict::rejected_cond4: return "rejected_cond4";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

struct SampleCriterion {
  Point2 location;
  SingularKind kind = SingularKind::other;
  double cond3 = 0.0;           // raw determinant
  double cond3_relative = 0.0;  // |det| / floored column norms
  double a = 0.0, b = 0.0;
  double special_residual = 0.0;
  double C = 0.0;
  double collinearity_residual = 0.0;
  double cond4 = 0.0;
  double cond4_relative = 0.0;
  Verdict verdict = Verdict::not_applicable;
  std::string note;
};

struct CriterionReport {
  double condition3_max_abs_det = 0.0;       // max relative |cond3| over samples
  double condition3_max_abs_det_raw = 0.0;
  double a = 0.0, b = 0.0;
  double C = 0.0;
  double collinearity_residual = 0.0;
  double condition4_det = 0.0;               // at the middle sample
  Verdict verdict = Verdict::not_applicable; // cusp25 iff every sample is
  std::vector<SampleCriterion> samples;
  double tested_interval_lo = 0.0, tested_interval_hi = 0.0;  // along the curve
};

inline SampleCriterion criterion_at(const Surface& S, const SingularPointRecord& rec,
                                    const SingularTolerances& tol = {}) {
  SampleCriterion sc;
  sc.location = rec.location;
  sc.kind = rec.kind;
  if (rec.kind != SingularKind::first_kind || !rec.nondegenerate) {
    sc.note = "not a non-degenerate singular point of the first kind";
    return sc;
  }
  const StraightChart ch = straighten(S, rec, tol);
  const double M = ch.scale;
  const Determinant c3 = evaluate_condition3(ch.Y, detail::xi_field(), detail::eta_field(), M);
  sc.cond3 = c3.value;
  sc.cond3_relative = c3.relative();
  try {
    const SpecialField sf = special_null_field(ch.Y);
    sc.a = sf.a;
    sc.b = sf.b;
    sc.special_residual = std::max(sf.residual2, sf.residual3);
    const Condition4 c4 = evaluate_condition4(ch.Y, detail::xi_field(), sf.field, M);
    sc.C = c4.C.C;
    sc.collinearity_residual = c4.C.residual;
    sc.cond4 = c4.det.value;
    sc.cond4_relative = c4.det.relative();
  } catch (const Error& e) {
    sc.note = e.what();
    sc.verdict = sc.cond3_relative >= tol.zero_rel ? Verdict::rejected_cond3 : Verdict::not_applicable;
    return sc;
  }
  if (sc.cond3_relative >= tol.zero_rel)
    sc.verdict = Verdict::rejected_cond3;
  else if (sc.collinearity_residual >= tol.collinear)
    sc.verdict = Verdict::not_applicable, sc.note = "third derivative not collinear with the second";
  else if (sc.cond4_relative <= tol.zero_rel)
    sc.verdict = Verdict::rejected_cond4;
  else
    sc.verdict = Verdict::cusp25;
  return sc;
}

inline CriterionReport criterion_25(const Surface& S, const std::vector<SingularPointRecord>& samples,
                                    const SingularTolerances& tol = {}) {
  CriterionReport rep;
  if (samples.empty()) return rep;
  bool all = true;
  std::optional<Verdict> first_bad;
  for (const auto& rec : samples) {
    rep.samples.push_back(criterion_at(S, rec, tol));
    const auto& sc = rep.samples.back();
    rep.condition3_max_abs_det = std::max(rep.condition3_max_abs_det, sc.cond3_relative);
    rep.condition3_max_abs_det_raw = std::max(rep.condition3_max_abs_det_raw, std::abs(sc.cond3));
    if (sc.verdict != Verdict::cusp25) {
      all = false;
      if (!first_bad) first_bad = sc.verdict;
    }
  }
  const auto& mid = rep.samples[rep.samples.size() / 2];
  rep.a = mid.a;
  rep.b = mid.b;
  rep.C = mid.C;
  rep.collinearity_residual = mid.collinearity_residual;
  rep.condition4_det = mid.cond4;
  rep.verdict = all ? Verdict::cusp25 : *first_bad;
  const auto& f = samples.front().location;
  const auto& l = samples.back().location;
  const Vec2 T = samples.front().tangent;
  rep.tested_interval_lo = 0.0;
  rep.tested_interval_hi = (l.u - f.u) * T[0] + (l.v - f.v) * T[1];
  return rep;
}

// ---------------------------------------------------------------------------
// Fold test

struct FoldTest {
  bool fold_candidate = false;
  double residual = 0.0;
  std::string reason;
};

/// Odd-in-σ part of X, in the straightened chart, orthogonal to the plane
/// spanned by ξX(p) and η²X(p). A fold has none.
inline FoldTest fold_symmetry_test(const Surface& S, const SingularPointRecord& rec,
                                   const SingularTolerances& tol = {}) {
  FoldTest ft;
  if (rec.kind != SingularKind::first_kind || !rec.nondegenerate) {
    ft.reason = "not a non-degenerate singular point of the first kind (" + to_string(rec.kind) + ")";
    ft.residual = std::numeric_limits<double>::infinity();
    return ft;
  }
  const StraightChart ch = straighten(S, rec, tol);
  const LVec3 e1 = values(dv(ch.Y));
  const LVec3 e2raw = LVec3{ch.Y[0].coeff(2, 0), ch.Y[1].coeff(2, 0), ch.Y[2].coeff(2, 0)} * 2.0;
  if (euclid_norm(e2raw) <= 1e-12 * ch.scale) {
    ft.reason = "second derivative along the null direction vanishes";
    ft.residual = std::numeric_limits<double>::infinity();
    return ft;
  }
  const LVec3 u1 = e1 / euclid_norm(e1);
  LVec3 u2 = e2raw - euclid_inner(e2raw, u1) * u1;
  u2 = u2 / euclid_norm(u2);
  for (int a = 1; a <= kJetDegree; a += 2)
    for (int b = 0; a + b <= kJetDegree && b <= 3; ++b) {
      const LVec3 c{ch.Y[0].coeff(a, b), ch.Y[1].coeff(a, b), ch.Y[2].coeff(a, b)};
      const LVec3 perp = c - euclid_inner(c, u1) * u1 - euclid_inner(c, u2) * u2;
      ft.residual = std::max(ft.residual, euclid_norm(perp) / ch.scale);
    }
  ft.fold_candidate = ft.residual < tol.fold;
  ft.reason = ft.fold_candidate ? "odd part lies in the tangent plane" : "odd part leaves the tangent plane";
  return ft;
}

// ---------------------------------------------------------------------------
// Field changes and ambient diffeomorphisms

/// ξ̄ = a1 ξ + a2 η, η̄ = b1 ξ + b2 η.
struct FieldChange {
  Jet2 a1, a2, b1, b2;
};

inline std::pair<VectorFieldJet, VectorFieldJet> perturb_fields(const VectorFieldJet& xi, const VectorFieldJet& eta,
                                                                const FieldChange& f) {
  VectorFieldJet xb{f.a1 * xi.e1 + f.a2 * eta.e1, f.a1 * xi.e2 + f.a2 * eta.e2};
  VectorFieldJet eb{f.b1 * xi.e1 + f.b2 * eta.e1, f.b1 * xi.e2 + f.b2 * eta.e2};
  return {xb, eb};
}

/// Predicted ratio of condition-4 determinants, a1(p)·b2(p)^7.
inline double predicted_condition4_scale(const FieldChange& f) {
  return f.a1.value() * std::pow(f.b2.value(), 7);
}

/// Validates the constraints of a field change on the chart {σ = 0}: a2 and
/// b1 vanish there, a1 and b2 do not. With `special`, additionally
/// ∂_σ b1 = ∂_σ² b1 = 0 at the origin.
inline void check_field_change(const FieldChange& f, bool special) {
  for (int b = 0; b <= kJetDegree; ++b)
    if (f.a2.coeff(0, b) != 0.0 || f.b1.coeff(0, b) != 0.0)
      throw InputError("a2 and b1 must vanish on the singular curve");
  if (f.a1.value() == 0.0 || f.b2.value() == 0.0) throw InputError("a1 and b2 must not vanish at p");
  if (special && (f.b1.coeff(1, 0) != 0.0 || f.b1.coeff(2, 0) != 0.0))
    throw InputError("b1 must satisfy eta b1 = eta eta b1 = 0 at p");
}

/// Polynomial germ Φ(x) = c + A(x - x0) + Q(x - x0) + K(x - x0) with
/// quadratic and cubic parts.
struct AmbientDiffeo {
  LVec3 x0;
  std::array<std::array<double, 3>, 3> A{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::array<std::array<double, 6>, 3> Q{};   // monomials xx, xy, xz, yy, yz, zz
  std::array<std::array<double, 10>, 3> K{};  // xxx, xxy, xxz, xyy, xyz, xzz, yyy, yyz, yzz, zzz

  template <class T>
  std::array<T, 3> operator()(const std::array<T, 3>& X) const {
    const T x = X[0] - x0.x0, y = X[1] - x0.x1, z = X[2] - x0.x2;
    const std::array<T, 6> q{x * x, x * y, x * z, y * y, y * z, z * z};
    const std::array<T, 10> k{x * x * x, x * x * y, x * x * z, x * y * y, x * y * z,
                              x * z * z, y * y * y, y * y * z, y * z * z, z * z * z};
    std::array<T, 3> out;
    for (int i = 0; i < 3; ++i) {
      T r = A[i][0] * x + A[i][1] * y + A[i][2] * z;
      for (int m = 0; m < 6; ++m) r = r + Q[i][m] * q[m];
      for (int m = 0; m < 10; ++m) r = r + K[i][m] * k[m];
      out[i] = r;
    }
    return out;
  }
  double linear_det() const {
    return det3(LVec3{A[0][0], A[1][0], A[2][0]}, LVec3{A[0][1], A[1][1], A[2][1]},
                LVec3{A[0][2], A[1][2], A[2][2]});
  }
};

/// Φ ∘ X. The analytic normal is dropped.
inline Surface diffeo_push(const Surface& S, const AmbientDiffeo& phi) {
  if (std::abs(phi.linear_det()) < 1e-12) throw InputError("diffeomorphism germ has singular linear part");
  SurfaceInfo info = S.info();
  info.name = "diffeo(" + info.name + ")";
  info.cmc = false;
  Surface::JetFn jet = [S, phi](Point2 p, int d) {
    const JetVec3 X = S.jet(p, d);
    return phi(X);
  };
  Surface::PointFn point = [S, phi](Point2 p) {
    const LVec3 x = S.point(p);
    const auto y = phi(std::array<double, 3>{x.x0, x.x1, x.x2});
    return LVec3{y[0], y[1], y[2]};
  };
  return Surface(info, S.domain(), S.default_grid(), jet, point);
}

}  // namespace cmclab
