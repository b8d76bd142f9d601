#pragma once

// Seeded property suites: field-change and ambient-diffeomorphism invariance
// of the criterion, Laplacian identity, fold-obstruction certificates,
// representation round trip, rank deficiency of the λ zero set and the
// equivalence of the two harmonicity residuals.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cmclab/io.hpp"
#include "cmclab/representation.hpp"
#include "cmclab/singularity.hpp"
#include "cmclab/surfaces.hpp"

namespace cmclab {

/// Worker count: CMC_LAB_THREADS if set, else the hardware concurrency.
inline int thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CMC_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n > 0 ? n : cap, cap);
  }
  return std::max(1, n);
}

/// Runs f(i) for i in [0, n); results are written by index so order is fixed.
inline void parallel_for(int n, const std::function<void(int)>& f) {
  const int workers = std::min(thread_count(), std::max(1, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  double worst = 0.0;  // suite-specific worst statistic
  Json counterexample;
  bool ok() const { return passed == total && total > 0; }
};

inline Json to_json(const SuiteResult& s) {
  Json j{{"suite", s.name}, {"passed", s.passed}, {"total", s.total}, {"worst", s.worst}, {"ok", s.ok()}};
  if (!s.counterexample.is_null()) j["counterexample"] = s.counterexample;
  return j;
}

namespace detail {

/// Per-trial generator derived from the seed and trial index.
inline std::mt19937_64 trial_rng(std::uint64_t seed, int trial, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

/// Random polynomial of degree <= 3 at the origin with value `c0`.
inline Jet2 random_poly(std::mt19937_64& rng, double c0, double amp = 0.5) {
  Jet2 p = Jet2::constant(c0, {}, kJetDegree);
  for (int n = 1; n <= 3; ++n)
    for (int b = 0; b <= n; ++b) p.set_coeff(n - b, b, uniform(rng, -amp, amp));
  return p;
}

inline double nonzero_value(std::mt19937_64& rng) {
  const double m = uniform(rng, 0.5, 2.0);
  return uniform(rng, 0.0, 1.0) < 0.5 ? -m : m;
}

/// Field change with a2, b1 vanishing on σ = 0; with `special`, b1 has the
/// form σ(τα + σ²β).
inline FieldChange random_field_change(std::mt19937_64& rng, bool special) {
  const Jet2 sigma = Jet2::coordinate_u({}, kJetDegree);
  const Jet2 tau = Jet2::coordinate_v({}, kJetDegree);
  FieldChange f;
  f.a1 = random_poly(rng, nonzero_value(rng));
  f.a2 = sigma * random_poly(rng, uniform(rng, -1.0, 1.0));
  f.b2 = random_poly(rng, nonzero_value(rng));
  if (special)
    f.b1 = sigma * (tau * random_poly(rng, uniform(rng, -1.0, 1.0)) +
                    (sigma * sigma) * random_poly(rng, uniform(rng, -1.0, 1.0)));
  else
    f.b1 = sigma * random_poly(rng, uniform(rng, -1.0, 1.0));
  return f;
}

inline AmbientDiffeo random_diffeo(std::mt19937_64& rng, const LVec3& center) {
  AmbientDiffeo phi;
  phi.x0 = center;
  for (;;) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) phi.A[i][j] = (i == j ? 1.0 : 0.0) + uniform(rng, -0.3, 0.3);
    const double d = phi.linear_det();
    if (d >= 0.5 && d <= 2.0) break;
  }
  for (auto& row : phi.Q)
    for (auto& c : row) c = uniform(rng, -0.5, 0.5);
  for (auto& row : phi.K)
    for (auto& c : row) c = uniform(rng, -0.5, 0.5);
  return phi;
}

inline void record(SuiteResult& r, bool pass, double stat, const std::function<Json()>& describe) {
  ++r.total;
  r.worst = std::max(r.worst, stat);
  if (pass)
    ++r.passed;
  else if (r.counterexample.is_null())
    r.counterexample = describe();
}

struct ChartSample {
  std::string surface;
  Point2 location;
  StraightChart chart;
  SpecialField special;
};

inline std::vector<ChartSample> criterion_charts() {
  std::vector<ChartSample> out;
  std::vector<std::pair<Surface, std::vector<Point2>>> cases;
  cases.push_back({standard_model("cusp25"), {{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}}});
  cases.push_back({conjugate_of(Family::delaunay_timelike, 2.0, 0.5), {{0.0, 0.0}, {0.0, 1.0}, {0.0, 2.5}}});
  for (auto& [S, pts] : cases)
    for (const auto& p : pts) {
      const SingularPointRecord rec = analyze_point(S, p);
      ChartSample cs{S.info().name, p, straighten(S, rec), {}};
      cs.special = special_null_field(cs.chart.Y);
      out.push_back(std::move(cs));
    }
  return out;
}

}  // namespace detail

/// Field changes preserve the zero of condition 3 and scale condition 4 by
/// a1(p)·b2(p)⁷.
inline SuiteResult suite_fields(int trials, std::uint64_t seed) {
  SuiteResult r{"fields", 0, 0, 0.0, Json()};
  const auto charts = detail::criterion_charts();
  struct Out {
    bool ok3, ok4;
    double rel3, err4;
    size_t chart;
  };
  std::vector<Out> outs(trials);
  parallel_for(trials, [&](int t) {
    auto rng = detail::trial_rng(seed, t, 1);
    const size_t c = static_cast<size_t>(t) % charts.size();
    const auto& cs = charts[c];
    const auto xi = detail::xi_field(), eta = detail::eta_field();
    const double M = cs.chart.scale;
    const Determinant base3 = evaluate_condition3(cs.chart.Y, xi, eta, M);
    const FieldChange g = detail::random_field_change(rng, false);
    const auto [xb, eb] = perturb_fields(xi, eta, g);
    const Determinant new3 = evaluate_condition3(cs.chart.Y, xb, eb, M);
    const bool ok3 = base3.relative() >= 1e-8 || new3.relative() < 1e-7;

    const FieldChange s = detail::random_field_change(rng, true);
    check_field_change(s, true);
    const Condition4 c4 = evaluate_condition4(cs.chart.Y, xi, cs.special.field, M);
    const auto [xs, es] = perturb_fields(xi, cs.special.field, s);
    const Condition4 n4 = evaluate_condition4(cs.chart.Y, xs, es, M);
    const double predicted = predicted_condition4_scale(s);
    const double err = std::abs(n4.det.value / c4.det.value - predicted) / std::abs(predicted);
    outs[t] = {ok3, err < 1e-6, new3.relative(), err, c};
  });
  for (int t = 0; t < trials; ++t) {
    const auto& o = outs[t];
    detail::record(r, o.ok3 && o.ok4, o.err4, [&] {
      return Json{{"trial", t},
                  {"surface", charts[o.chart].surface},
                  {"location", {charts[o.chart].location.u, charts[o.chart].location.v}},
                  {"condition3_relative", o.rel3},
                  {"condition4_scale_error", o.err4}};
    });
  }
  return r;
}

struct ModelVerdicts {
  SingularKind kind;
  Verdict verdict;
  bool fold;
};

inline ModelVerdicts model_verdicts(const Surface& S, Point2 p) {
  const SingularPointRecord rec = analyze_point(S, p);
  const SampleCriterion sc = criterion_at(S, rec);
  const FoldTest ft = fold_symmetry_test(S, rec);
  return {rec.kind, sc.verdict, ft.fold_candidate};
}

/// Random cubic ambient diffeomorphisms leave kinds and verdicts unchanged
/// on the standard models.
inline SuiteResult suite_diffeo(int trials, std::uint64_t seed) {
  SuiteResult r{"diffeo", 0, 0, 0.0, Json()};
  struct Case {
    Surface S;
    std::vector<Point2> pts;
  };
  std::vector<Case> cases;
  for (const char* m : {"fold", "cuspidal_edge", "cusp25"})
    cases.push_back({standard_model(m), {{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}}});
  cases.push_back({standard_model("cone"), {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}});
  std::vector<std::vector<ModelVerdicts>> base(cases.size());
  for (size_t c = 0; c < cases.size(); ++c)
    for (const auto& p : cases[c].pts) base[c].push_back(model_verdicts(cases[c].S, p));

  std::vector<Json> fails(trials);
  std::vector<char> ok(trials, 1);
  parallel_for(trials, [&](int t) {
    auto rng = detail::trial_rng(seed, t, 2);
    for (size_t c = 0; c < cases.size() && ok[t]; ++c) {
      const AmbientDiffeo phi = detail::random_diffeo(rng, cases[c].S.point(cases[c].pts[1]));
      const Surface D = diffeo_push(cases[c].S, phi);
      for (size_t k = 0; k < cases[c].pts.size(); ++k) {
        const ModelVerdicts v = model_verdicts(D, cases[c].pts[k]);
        const ModelVerdicts& b = base[c][k];
        if (v.kind != b.kind || v.verdict != b.verdict || v.fold != b.fold) {
          ok[t] = 0;
          fails[t] = Json{{"trial", t},
                          {"model", cases[c].S.info().name},
                          {"location", {cases[c].pts[k].u, cases[c].pts[k].v}},
                          {"expected", {to_string(b.kind), to_string(b.verdict), b.fold}},
                          {"got", {to_string(v.kind), to_string(v.verdict), v.fold}}};
          break;
        }
      }
    }
  });
  for (int t = 0; t < trials; ++t) detail::record(r, ok[t], ok[t] ? 0.0 : 1.0, [&] { return fails[t]; });
  return r;
}

/// Surfaces used by the residual suites.
inline std::vector<Surface> cmc_zoo() {
  std::vector<Surface> z;
  z.push_back(delaunay_timelike(2.0, 0.5));
  z.push_back(delaunay_timelike(0.5, 0.5));
  z.push_back(delaunay_spacelike(2.0, 0.5));
  z.push_back(delaunay_lightlike(1, 0.5));
  z.push_back(delaunay_lightlike(2, 0.5));
  z.push_back(conjugate_of(Family::delaunay_timelike, 2.0, 0.5));
  z.push_back(conjugate_of(Family::delaunay_timelike, 0.5, 0.5));
  z.push_back(conjugate_of(Family::delaunay_timelike, 3.0, 1.0));
  z.push_back(conjugate_of(Family::delaunay_timelike, -3.0, 0.5));
  z.push_back(conjugate_of(Family::delaunay_timelike, -1.0, 0.5));
  z.push_back(conjugate_of(Family::delaunay_spacelike, 2.0, 0.5));
  z.push_back(conjugate_of(Family::delaunay_lightlike_i, 0.0, 0.5));
  z.push_back(conjugate_of(Family::delaunay_lightlike_ii, 0.0, 0.5));
  return z;
}

/// ΔX = -2Hν at random regular points, residual < 1e-6.
inline SuiteResult suite_laplacian(int trials, std::uint64_t seed) {
  SuiteResult r{"laplacian", 0, 0, 0.0, Json()};
  const auto zoo = cmc_zoo();
  std::vector<double> res(trials);
  std::vector<Point2> pts(trials);
  parallel_for(trials, [&](int t) {
    auto rng = detail::trial_rng(seed, t, 3);
    const Surface& S = zoo[static_cast<size_t>(t) % zoo.size()];
    const GridSpec& g = S.default_grid();
    const double R = std::max(std::abs(g.u0), std::abs(g.u1));
    const double rad = detail::uniform(rng, 0.1, 0.9) * R;
    const Point2 p{detail::uniform(rng, 0.0, 1.0) < 0.5 ? -rad : rad, detail::uniform(rng, g.v0, g.v1)};
    pts[t] = p;
    res[t] = laplacian_identity_residual(S, p);
  });
  for (int t = 0; t < trials; ++t) {
    const Surface& S = zoo[static_cast<size_t>(t) % zoo.size()];
    detail::record(r, res[t] < 1e-6, res[t], [&] {
      return Json{{"surface", S.info().name}, {"k", num(S.info().k)}, {"location", {pts[t].u, pts[t].v}},
                  {"residual", res[t]}};
    });
  }
  return r;
}

struct CertificateCase {
  std::string label;
  Surface S;
  GridSpec grid;
};

inline std::vector<CertificateCase> certificate_cases() {
  std::vector<CertificateCase> c;
  c.push_back({"delaunay-t k=2 H=1/2", delaunay_timelike(2.0, 0.5), {9, 11, -0.3, 0.3, 0.0, 6.0}});
  c.push_back({"delaunay-t k=1/2 H=1/2", delaunay_timelike(0.5, 0.5), {9, 11, -0.3, 0.3, 0.0, 6.0}});
  c.push_back({"delaunay-s k=2 H=1/2", delaunay_spacelike(2.0, 0.5), {9, 11, -0.3, 0.3, -1.5, 1.5}});
  c.push_back({"delaunay-l1 H=1/2", delaunay_lightlike(1, 0.5), {9, 11, -0.3, 0.3, -1.5, 1.5}});
  c.push_back({"delaunay-l2 H=1/2", delaunay_lightlike(2, 0.5), {9, 11, -0.3, 0.3, -1.5, 1.5}});
  return c;
}

/// Fold-obstruction certificate at every non-degenerate singular sample of
/// the Delaunay families, together with a rejected fold test.
inline SuiteResult suite_certificate() {
  SuiteResult r{"certificate", 0, 0, 0.0, Json()};
  for (const auto& cc : certificate_cases()) {
    const auto recs = trace_singular_curve(cc.S, cc.grid);
    int used = 0;
    for (const auto& rec : recs) {
      if (!rec.nondegenerate || rec.rank != 1) continue;
      ++used;
      const FoldObstruction c = cmc_fold_obstruction(cc.S, rec);
      const FoldTest ft = fold_symmetry_test(cc.S, rec);
      const bool pass = c.abs_g_minus_one < 1e-6 && c.sign_flip && c.laplacian_residual < 1e-5 && !ft.fold_candidate;
      detail::record(r, pass, c.abs_g_minus_one, [&] {
        Json j = to_json(c);
        j["surface"] = cc.label;
        j["fold_test"] = to_json(ft);
        return j;
      });
    }
    if (used == 0)
      detail::record(r, false, 0.0, [&] { return Json{{"surface", cc.label}, {"error", "no non-degenerate samples"}}; });
  }
  return r;
}

struct RoundTrip {
  double conformality = 0.0;
  double harmonic = 0.0;  // relative to max(1, harmonic_scale)
  double loop = 0.0;
  double discrepancy = 0.0;
  double lorentz_defect = 0.0;
  double derivative_identity = 0.0;
  double gauss = 0.0, codazzi = 0.0;
  double mean_curvature_error = 0.0;
  double residual_equivalence = 0.0;
};

/// Gauss data of delaunay-t(k, H) on r in [r_lo, r_hi], t in [0, t1] through
/// the representation and back.
inline RoundTrip representation_round_trip(double k, double H, int n = 41, double r_lo = 0.2, double r_hi = 1.5,
                                           double t1 = 1.0) {
  const Surface S = delaunay_timelike(k, H);
  const auto P = conformal_profile_chart(S, r_lo, r_hi, r_lo);
  const Surface C = P->chart();
  const GridSpec grid{n, n, C.domain().u_min, C.domain().u_max, 0.0, t1};
  RoundTrip rt;
  rt.conformality = conformality_residual(C, grid);
  const GaussData gd = gauss_data_from(C, grid, H);
  for (const auto& g : gd.g) {
    const double h = harmonic_residual(g);
    const double scale = std::max(1.0, harmonic_scale(g));
    rt.harmonic = std::max(rt.harmonic, h / scale);
    rt.residual_equivalence = std::max(rt.residual_equivalence, std::abs(h - extended_harmonic_residual(g)) / scale);
  }
  const RepresentationResult rec = integrate_representation(gd);
  rt.loop = rec.max_loop_residual;
  const Alignment al = align_reconstruction(rec, gd, C);
  rt.discrepancy = al.max_discrepancy;
  rt.lorentz_defect = al.lorentz_defect;
  for (int i = 2; i + 2 < n; i += 4)
    for (int j = 2; j + 2 < n; j += 4) {
      const Point2 p{grid.u(i), grid.v(j)};
      rt.derivative_identity = std::max(rt.derivative_identity, derivative_identity_residual(C, p, H));
      const GaussCodazzi gc = gauss_codazzi_residual(C, p, H);
      rt.gauss = std::max(rt.gauss, gc.gauss);
      rt.codazzi = std::max(rt.codazzi, gc.codazzi);
      rt.mean_curvature_error =
          std::max(rt.mean_curvature_error, std::abs(reconstructed_mean_curvature(rec, gd, i, j) - H));
    }
  return rt;
}

inline Json to_json(const RoundTrip& rt) {
  return {{"conformality", rt.conformality},       {"harmonic_residual", rt.harmonic},
          {"loop_residual", rt.loop},              {"discrepancy", rt.discrepancy},
          {"lorentz_defect", rt.lorentz_defect},   {"derivative_identity", rt.derivative_identity},
          {"gauss_residual", rt.gauss},            {"codazzi_residual", rt.codazzi},
          {"mean_curvature_error", rt.mean_curvature_error},
          {"residual_equivalence", rt.residual_equivalence}};
}

inline bool round_trip_ok(const RoundTrip& rt) {
  return rt.conformality < 1e-8 && rt.harmonic < 1e-6 && rt.loop < 1e-8 && rt.discrepancy < 1e-5 &&
         rt.derivative_identity < 1e-7 && rt.gauss < 1e-6 && rt.codazzi < 1e-7 && rt.mean_curvature_error < 1e-4 &&
         rt.residual_equivalence < 1e-9;
}

inline SuiteResult suite_representation() {
  SuiteResult r{"representation", 0, 0, 0.0, Json()};
  for (auto [k, H] : {std::pair{2.0, 0.5}, {0.5, 0.5}, {3.0, 1.0}}) {
    const RoundTrip rt = representation_round_trip(k, H);
    detail::record(r, round_trip_ok(rt), rt.discrepancy, [&] {
      Json j = to_json(rt);
      j["k"] = k;
      j["H"] = H;
      return j;
    });
  }
  return r;
}

/// At every traced root the smallest singular value of dX is < 1e-7 of the
/// largest.
inline SuiteResult suite_rank() {
  SuiteResult r{"rank", 0, 0, 0.0, Json()};
  std::vector<std::pair<Surface, GridSpec>> cases;
  for (const char* m : {"fold", "cuspidal_edge", "cusp25", "cone"}) {
    Surface S = standard_model(m);
    GridSpec g = S.default_grid();
    g.nu = g.nv = 15;
    cases.push_back({S, g});
  }
  for (auto [k, H] : {std::pair{2.0, 0.5}, {0.5, 0.5}, {3.0, 1.0}, {-3.0, 0.5}}) {
    Surface S = conjugate_of(Family::delaunay_timelike, k, H);
    GridSpec g = S.default_grid();
    g.nu = 10;
    g.nv = 15;
    cases.push_back({S, g});
  }
  {
    Surface S = conjugate_of(Family::delaunay_spacelike, 2.0, 0.5);
    GridSpec g = S.default_grid();
    g.nu = 10;
    g.nv = 15;
    cases.push_back({S, g});
  }
  for (const auto& [S, g] : cases) {
    const auto recs = trace_singular_curve(S, g);
    if (recs.empty()) detail::record(r, false, 0.0, [&] { return Json{{"surface", S.info().name}, {"error", "no roots"}}; });
    for (const auto& rec : recs) {
      const double ratio = rec.singular_values[0] > 0 ? rec.singular_values[1] / rec.singular_values[0] : 0.0;
      detail::record(r, ratio < 1e-7, ratio, [&] {
        return Json{{"surface", S.info().name}, {"location", {rec.location.u, rec.location.v}}, {"ratio", ratio}};
      });
    }
  }
  return r;
}

inline SuiteResult suite_harmonic(int trials, std::uint64_t seed) {
  SuiteResult r{"harmonic", 0, 0, 0.0, Json()};
  for (auto [k, H] : {std::pair{2.0, 0.5}, {0.5, 0.5}}) {
    const Surface S = delaunay_timelike(k, H);
    const auto P = conformal_profile_chart(S, 0.2, 1.5, 0.2);
    const Surface C = P->chart();
    const double s0 = C.domain().u_min, s1 = C.domain().u_max;
    std::vector<double> diff(trials), harm(trials);
    parallel_for(trials, [&](int t) {
      auto rng = detail::trial_rng(seed, t, 4);
      const CJet g = gauss_jet(C, {detail::uniform(rng, s0, s1), detail::uniform(rng, 0.0, 3.0)});
      const double scale = std::max(1.0, harmonic_scale(g));
      harm[t] = harmonic_residual(g) / scale;
      diff[t] = std::abs(harmonic_residual(g) - extended_harmonic_residual(g)) / scale;
    });
    for (int t = 0; t < trials; ++t)
      detail::record(r, diff[t] < 1e-9 && harm[t] < 1e-6, std::max(diff[t], harm[t]), [&] {
        return Json{{"k", k}, {"H", H}, {"trial", t}, {"harmonic", harm[t]}, {"difference", diff[t]}};
      });
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fields",      "diffeo",         "laplacian", "certificate",
                                              "representation", "rank", "harmonic"};
  return names;
}

/// Runs one suite; trials apply to the randomized suites (fields uses it
/// directly, diffeo uses half of it).
inline SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed) {
  if (trials <= 0) throw InputError("trials must be positive");
  if (name == "fields") return suite_fields(trials, seed);
  if (name == "diffeo") return suite_diffeo(std::max(1, trials / 2), seed);
  if (name == "laplacian") return suite_laplacian(trials, seed);
  if (name == "certificate") return suite_certificate();
  if (name == "representation") return suite_representation();
  if (name == "rank") return suite_rank();
  if (name == "harmonic") return suite_harmonic(trials, seed);
  throw InputError("unknown suite: " + name);
}

}  // namespace cmclab
