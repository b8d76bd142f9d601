// Acceptance gate: one PASS/FAIL line per criterion.
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cmclab/verify.hpp"

using namespace cmclab;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

double conj_lambda(double k, double H, double r) {
  const double delta = std::pow(r * r + k + 1, 2) - 4 * k;
  return r * std::sqrt(delta - (k + 1) * r * r) / (H * std::sqrt(k + 1) * std::sqrt(delta));
}

template <class F>
double simpson(F f, double a, double b, int n = 1000000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class F>
double richardson_partial(F f, double u, double v, int a, int b) {
  auto fd = [&](double h) {
    double s = 0.0;
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j)
        s += binom(a, i) * binom(b, j) * ((i + j) % 2 ? -1.0 : 1.0) * f(u + (0.5 * a - i) * h, v + (0.5 * b - j) * h);
    return s / std::pow(h, a + b);
  };
  const double h = std::pow(1e-16, 1.0 / (a + b + 4));
  return (4.0 * fd(h / 2) - fd(h)) / 3.0;
}

template <class T>
T composite(const T& u, const T& v) {
  return exp(sin(u)) * sqrt(1.0 + v * v) + atan(u * v) + log(2.0 + u * u) * cosh(0.5 * v);
}

void criterion1(Check& c) {
  struct Case { double H, k; };
  for (const Case cs : {Case{0.5, 2.0}, Case{0.5, 0.5}, Case{1.0, 3.0}}) {
    const Surface S = conjugate_of(Family::delaunay_timelike, cs.k, cs.H);
    const auto recs = trace_singular_curve(S, {11, 25, -0.3, 0.3, -2.0, 2.0});
    const CriterionReport rep = criterion_25(S, recs);
    const double pred = -72.0 / (cs.H * cs.H * std::pow(std::abs(cs.k - 1), 3));
    std::ostringstream tag;
    tag << "(H,k)=(" << cs.H << "," << cs.k << ") ";
    c.expect(rep.samples.size() >= 20, tag.str() + "too few samples");
    for (const auto& s : rep.samples) {
      c.expect(s.verdict == Verdict::cusp25, tag.str() + "verdict " + to_string(s.verdict));
      c.expect(s.cond3_relative < 1e-7, tag.str() + "cond3 " + std::to_string(s.cond3_relative));
      c.expect(rel(s.cond4, pred) < 1e-5, tag.str() + "cond4 " + std::to_string(s.cond4) + " vs " +
                                              std::to_string(pred));
    }
    std::printf("  %scond4 %.10g (closed form %.6g), %zu samples\n", tag.str().c_str(), rep.condition4_det, pred,
                rep.samples.size());
  }
}

void criterion2(Check& c) {
  std::mt19937_64 rng(2024);
  const double k = 2.0, H = 0.5;
  const Surface S = conjugate_of(Family::delaunay_timelike, k, H);
  const double R = S.default_grid().u1;
  std::uniform_real_distribution<double> dr(-R, R), dt(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double r = dr(rng), t = dt(rng);
    const double ref = conj_lambda(k, H, r);
    worst = std::max(worst, std::abs(signed_area_density(S, {r, t}) - ref) / std::max(std::abs(ref), 1e-300));
  }
  c.expect(worst < 1e-9, "lambda rel err " + std::to_string(worst));
  double dworst = 0.0;
  for (double t : {-1.0, 0.0, 0.7, 2.0}) {
    const auto rec = analyze_point(S, {0.0, t});
    const double ref = 1.0 / (H * std::sqrt(k + 1));
    dworst = std::max({dworst, rel(rec.dlambda[0], ref), std::abs(rec.dlambda[1]) / ref});
  }
  c.expect(dworst < 1e-8, "dlambda rel err " + std::to_string(dworst));
  std::printf("  lambda worst %.3g, dlambda worst %.3g\n", worst, dworst);
}

void criterion3(Check& c) {
  const Surface S = conjugate_of(Family::delaunay_timelike, 2.0, 0.5);
  for (const auto& rec : trace_singular_curve(S, {11, 9, -0.3, 0.3, -2.0, 2.0})) {
    const SampleCriterion s = criterion_at(S, rec);
    c.expect(std::abs(s.a) < 1e-7 && std::abs(s.b - 2.0) < 1e-7,
             "(a,b)=(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")");
    c.expect(s.special_residual < 1e-8, "special residual " + std::to_string(s.special_residual));
    c.expect(std::abs(s.C) < 1e-8, "C " + std::to_string(s.C));
    c.expect(s.collinearity_residual < 1e-8, "collinearity " + std::to_string(s.collinearity_residual));
  }
}

void criterion4(Check& c) {
  const Surface m = standard_model("cusp25");
  const SampleCriterion a = criterion_at(m, analyze_point(m, {0.0, 0.0}));
  c.expect(a.verdict == Verdict::cusp25, "cusp25 model verdict");
  c.expect(std::abs(std::abs(a.cond4) - 720.0) < 1e-12, "cusp25 cond4 " + std::to_string(a.cond4));
  const Surface e = standard_model("cuspidal_edge");
  const SampleCriterion b = criterion_at(e, analyze_point(e, {0.0, 0.0}));
  c.expect(b.verdict == Verdict::rejected_cond3, "cuspidal edge verdict");
  c.expect(std::abs(std::abs(b.cond3) - 12.0) < 1e-12, "cuspidal edge cond3 " + std::to_string(b.cond3));
  const Surface f = standard_model("fold");
  const auto recs = trace_singular_curve(f, {9, 7, -0.3, 0.3, -0.5, 0.5});
  c.expect(!recs.empty(), "fold curve not found");
  for (const auto& rec : recs) {
    const FoldTest ft = fold_symmetry_test(f, rec);
    c.expect(ft.fold_candidate && ft.residual < 1e-12, "fold symmetry");
  }
  c.expect(criterion_25(f, recs).verdict != Verdict::cusp25, "fold accepted by criterion");
}

void criterion5(Check& c) {
  bool timelike = false, spacelike = false, lightlike = false;
  for (const auto& cc : certificate_cases()) {
    int used = 0;
    for (const auto& rec : trace_singular_curve(cc.S, cc.grid)) {
      if (!rec.nondegenerate || rec.rank != 1) continue;
      ++used;
      const FoldObstruction o = cmc_fold_obstruction(cc.S, rec);
      c.expect(o.offset == 1e-4, cc.label + " offset");
      c.expect(o.abs_g_minus_one < 1e-6, cc.label + " ||g|-1| " + std::to_string(o.abs_g_minus_one));
      c.expect(o.sign_flip, cc.label + " no sign flip");
      c.expect(o.laplacian_residual < 1e-5, cc.label + " laplacian " + std::to_string(o.laplacian_residual));
      c.expect(!fold_symmetry_test(cc.S, rec).fold_candidate, cc.label + " fold test accepted");
    }
    c.expect(used > 0, cc.label + " no non-degenerate samples");
    const Family fam = cc.S.info().family;
    timelike = timelike || fam == Family::delaunay_timelike;
    spacelike = spacelike || fam == Family::delaunay_spacelike;
    lightlike = lightlike || fam == Family::delaunay_lightlike_i || fam == Family::delaunay_lightlike_ii;
  }
  c.expect(timelike && spacelike && lightlike, "missing an axis type");
}

void criterion6(Check& c) {
  const SuiteResult f = run_suite("fields", 100, 12345);
  const SuiteResult d = run_suite("diffeo", 100, 12345);
  c.expect(f.total == 100 && f.ok(), "fields " + std::to_string(f.passed) + "/" + std::to_string(f.total));
  c.expect(d.total >= 50 && d.ok(), "diffeo " + std::to_string(d.passed) + "/" + std::to_string(d.total));
  std::printf("  fields %d/%d, diffeo %d/%d\n", f.passed, f.total, d.passed, d.total);
}

void criterion7(Check& c) {
  const double k = 2.0, H = 0.5;
  const Surface X = delaunay_timelike(k, H);
  const Surface Y = conjugate_of(Family::delaunay_timelike, k, H);
  const double R = Y.default_grid().u1;
  double worst = 0.0, hx = 0.0, hy = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const Point2 p{R * (0.1 + 0.8 * i / 19.0), -2.0 + 4.0 * j / 19.0};
      const FundamentalForms a = fundamental_forms(X, p), b = fundamental_forms(Y, p);
      worst = std::max(worst, std::abs(a.E - b.E) + std::abs(a.F - b.F) + std::abs(a.G - b.G));
      hx = std::max(hx, std::abs(a.H_mean - 0.5));
      hy = std::max(hy, std::abs(b.H_mean - 0.5));
    }
  c.expect(worst < 1e-7, "isometry " + std::to_string(worst));
  c.expect(hx < 1e-7 && hy < 1e-7, "mean curvature");
  std::printf("  isometry %.3g, |H-1/2| %.3g / %.3g\n", worst, hx, hy);
}

void criterion8(Check& c) {
  const RoundTrip rt = representation_round_trip(2.0, 0.5);
  c.expect(rt.harmonic < 1e-6, "harmonic " + std::to_string(rt.harmonic));
  c.expect(rt.loop < 1e-8, "loop " + std::to_string(rt.loop));
  c.expect(rt.discrepancy < 1e-5, "discrepancy " + std::to_string(rt.discrepancy));
  c.expect(rt.gauss < 1e-6 && rt.codazzi < 1e-6, "compatibility");
  std::printf("  harmonic %.3g, loop %.3g, discrepancy %.3g, gauss %.3g, codazzi %.3g\n", rt.harmonic, rt.loop,
              rt.discrepancy, rt.gauss, rt.codazzi);
}

void criterion9(Check& c) {
  const Jet2 u = Jet2::coordinate_u({1.5, -2.0}), v = Jet2::coordinate_v({1.5, -2.0});
  const Jet2 m = u * u * v * v * v;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 3; ++b)
      c.expect(m.coeff(a, b) == binom(2, a) * std::pow(1.5, 2 - a) * binom(3, b) * std::pow(-2.0, 3 - b),
               "polynomial jet coefficient");
  const Surface model = standard_model("cusp25");
  c.expect(model.jet({0.0, 0.0})[2].partial(0, 5) == 120.0, "model jet");

  const double u0 = 0.3, v0 = -0.7;
  const Jet2 f = composite(Jet2::coordinate_u({u0, v0}), Jet2::coordinate_v({u0, v0}));
  auto g = [](double x, double y) { return composite(x, y); };
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      const double ref = richardson_partial(g, u0, v0, a, b);
      c.expect(std::abs(f.partial(a, b) - ref) < 1e-7 * (1.0 + std::abs(ref)), "richardson partial");
    }

  std::vector<std::pair<std::function<double(double)>, std::pair<double, double>>> cases;
  for (double H : {0.5, 1.0})
    for (double k : {2.0, 0.5, 3.0}) {
      auto delta = [k](double x) { return (x * x + k + 1) * (x * x + k + 1) - 4 * k; };
      auto Delta = [k](double x) { return 2 * (k + 1) * x * x + (1 - k) * (1 - k); };
      const double A = std::sqrt(2 * std::abs(1 + k));
      cases.push_back({[=](double x) { return (x * x + k - 1) / (2 * H * std::sqrt(delta(x))); }, {0.0, 0.8}});
      cases.push_back({[=](double x) { return A * std::pow(x, 4) / (H * std::sqrt(delta(x)) * Delta(x)); }, {0.0, 0.8}});
      cases.push_back({[=](double x) { return A * (1 - k) * x * x / (std::sqrt(delta(x)) * Delta(x)); }, {0.0, 0.8}});
      cases.push_back({[=](double x) { return 1.0 / (H * std::sqrt(delta(x))); }, {0.2, 1.5}});
    }
  auto w = [](double x) { return std::sqrt(x * x * x * x + 4); };
  cases.push_back({[=](double x) { return x * x * (w(x) + x * x) / w(x); }, {0.0, 1.2}});
  double worst = 0.0;
  for (const auto& [fn, ab] : cases) {
    const double ref = simpson(fn, ab.first, ab.second);
    worst = std::max(worst, std::abs(integrate(fn, ab.first, ab.second).value - ref) / std::max(1.0, std::abs(ref)));
  }
  c.expect(worst < 1e-9, "quadrature vs Simpson " + std::to_string(worst));
  std::printf("  quadrature worst %.3g over %zu integrands\n", worst, cases.size());
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"cusp25 classification of conjugate Delaunay surfaces", criterion1},
      {"signed area density closed form", criterion2},
      {"special null field", criterion3},
      {"standard model truth table", criterion4},
      {"fold obstruction certificates", criterion5},
      {"field change and diffeo invariance", criterion6},
      {"conjugate isometry", criterion7},
      {"representation round trip", criterion8},
      {"numerical kernel oracles", criterion9},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu %s: %s%s%s\n", i + 1, criteria[i].first, c.ok ? "PASS" : "FAIL",
                c.ok ? "" : " ", c.why.str().c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
