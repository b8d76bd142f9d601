#pragma once

// Command-line front end. Every subcommand writes its results to files and
// returns one of the exit codes below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmclab/io.hpp"
#include "cmclab/representation.hpp"
#include "cmclab/singularity.hpp"
#include "cmclab/surfaces.hpp"
#include "cmclab/verify.hpp"

namespace cmclab {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitBadInput = 2, kExitIo = 3 };

struct RunConfig {
  std::string command;
  std::string family;
  std::string of;
  int variant = 0;
  double k = std::numeric_limits<double>::quiet_NaN();
  double H = 0.5;
  int nr = 0, nt = 0;  // 0 keeps the family default
  std::vector<double> r_range, t_range;
  SingularTolerances tol;
  std::string out, sidecar, report, gauss;
  bool singular_curve = false;
  int samples = 0;
  std::vector<std::string> k_list, H_list;
  std::vector<std::string> suites;
  int trials = 100;
  std::uint64_t seed = 12345;
  std::vector<int> base{0, 0};
  double loop_tol = 1e-8;
  double anchor = std::numeric_limits<double>::quiet_NaN();
};

namespace cli_detail {

inline Json range_json(const std::vector<double>& r) { return r.empty() ? Json(nullptr) : Json(r); }

inline Json config_json(const RunConfig& c) {
  Json j{{"command", c.command}};
  if (!c.family.empty()) j["family"] = c.family;
  if (!c.of.empty()) j["of"] = c.of;
  if (c.variant) j["variant"] = c.variant;
  j["k"] = num(c.k);
  j["H"] = num(c.H);
  j["grid"] = {{"nr", c.nr}, {"nt", c.nt}, {"r_range", range_json(c.r_range)}, {"t_range", range_json(c.t_range)}};
  j["tolerances"] = to_json(c.tol);
  j["seed"] = c.seed;
  return j;
}

inline Json envelope(const RunConfig& c, Json results, double seconds) {
  return {{"tool", "cmclab"},
          {"version", kToolVersion},
          {"config", config_json(c)},
          {"results", std::move(results)},
          {"timing", {{"wall_seconds", seconds}}}};
}

inline Surface build_surface(const RunConfig& c) {
  std::string family = c.family;
  std::string of = c.of;
  if (family == "delaunay-l") {
    if (c.variant != 1 && c.variant != 2) throw InputError("delaunay-l needs --variant 1 or 2");
    family += std::to_string(c.variant);
  }
  if (of == "delaunay-l") {
    if (c.variant != 1 && c.variant != 2) throw InputError("delaunay-l needs --variant 1 or 2");
    of += std::to_string(c.variant);
  }
  if (family.empty()) throw InputError("--family is required");
  return make_family(family, c.k, c.H, of);
}

inline void check_range(const std::vector<double>& r, const char* name) {
  if (r.empty()) return;
  if (r.size() != 2 || !std::isfinite(r[0]) || !std::isfinite(r[1]) || !(r[0] < r[1]))
    throw InputError(std::string(name) + " must be two finite numbers lo < hi");
}

inline GridSpec build_grid(const Surface& S, const RunConfig& c, int nr_default = 0, int nt_default = 0) {
  GridSpec g = S.default_grid();
  if (nr_default > 0) g.nu = nr_default;
  if (nt_default > 0) g.nv = nt_default;
  if (c.nr != 0) g.nu = c.nr;
  if (c.nt != 0) g.nv = c.nt;
  if (g.nu < 2 || g.nv < 2) throw InputError("grid must be 2D with positive sizes");
  check_range(c.r_range, "--r-range");
  check_range(c.t_range, "--t-range");
  if (!c.r_range.empty()) g.u0 = c.r_range[0], g.u1 = c.r_range[1];
  if (!c.t_range.empty()) g.v0 = c.t_range[0], g.v1 = c.t_range[1];
  const Domain& d = S.domain();
  if (!d.contains({g.u0, g.v0}) || !d.contains({g.u1, g.v1}))
    throw InputError("grid leaves the admissible domain of " + S.info().name);
  return g;
}

inline std::string with_location(const std::string& what, Point2 p) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at (" << p.u << ", " << p.v << ")";
  return os.str();
}

inline double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Evenly spaced subset of at most n records (all when n <= 0).
inline std::vector<SingularPointRecord> subsample(const std::vector<SingularPointRecord>& recs, int n) {
  if (n <= 0 || static_cast<int>(recs.size()) <= n) return recs;
  std::vector<SingularPointRecord> out;
  for (int i = 0; i < n; ++i) out.push_back(recs[static_cast<size_t>(i) * (recs.size() - 1) / std::max(1, n - 1)]);
  return out;
}

/// Closed-form condition (4) determinant of the timelike-axis conjugate with
/// k > -1; NaN elsewhere.
inline double predicted_condition4(const SurfaceInfo& s) {
  if (s.family != Family::conjugate || s.conjugate_of != Family::delaunay_timelike || s.branch != "I-i" || !(s.k > -1.0))
    return std::numeric_limits<double>::quiet_NaN();
  return -72.0 / (s.H * s.H * std::pow(std::abs(s.k - 1.0), 3));
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_generate(const RunConfig& c, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Surface S = build_surface(c);
  const GridSpec grid = build_grid(S, c);
  const TriangleMesh mesh = mesh_export(S, grid);
  Json results = surface_sidecar(S, grid);
  results["vertices"] = mesh.vertices.size();
  results["faces"] = mesh.faces.size();
  if (c.singular_curve) {
    Json poly = Json::array();
    for (const auto& rec : trace_singular_curve(S, grid, c.tol))
      poly.push_back({{"location", {rec.location.u, rec.location.v}},
                      {"image", {rec.image.x0, rec.image.x1, rec.image.x2}},
                      {"kind", to_string(rec.kind)}});
    results["singular_curve"] = poly;
  }
  write_text(c.out, to_obj(mesh));
  const std::string side = c.sidecar.empty() ? c.out + ".json" : c.sidecar;
  write_json(side, envelope(c, results, elapsed(t0)));
  out << "wrote " << c.out << " (" << mesh.vertices.size() << " vertices) and " << side << "\n";
  return kExitOk;
}

inline Json classify_results(const Surface& S, const GridSpec& grid, const RunConfig& c) {
  const auto all = trace_singular_curve(S, grid, c.tol);
  const auto recs = subsample(all, c.samples);
  Json points = Json::array();
  std::map<std::string, int> kinds;
  for (const auto& r : recs) {
    points.push_back(to_json(r));
    ++kinds[to_string(r.kind)];
  }
  std::vector<SingularPointRecord> first;
  for (const auto& r : recs)
    if (r.kind == SingularKind::first_kind && r.nondegenerate) first.push_back(r);

  CriterionReport crit;
  if (!first.empty()) {
    try {
      crit = criterion_25(S, first, c.tol);
    } catch (const InputError&) {
      throw;
    } catch (const Error&) {
      for (const auto& r : first) {
        try {
          criterion_at(S, r, c.tol);
        } catch (const Error& e) {
          throw Error(with_location(e.what(), r.location));
        }
      }
      throw;
    }
  }

  Json folds = Json::array();
  Json certs = Json::array();
  for (const auto& r : recs) {
    try {
      Json f = to_json(fold_symmetry_test(S, r, c.tol));
      f["location"] = {r.location.u, r.location.v};
      folds.push_back(f);
      if (S.info().cmc && r.nondegenerate && r.rank == 1) certs.push_back(to_json(cmc_fold_obstruction(S, r)));
    } catch (const Error& e) {
      throw Error(with_location(e.what(), r.location));
    }
  }

  Json results{{"surface", to_json(S.info())}, {"grid", to_json(grid)}};
  Json summary{{"singular_points_found", all.size()}, {"samples", recs.size()}, {"first_kind_samples", first.size()}};
  Json kj = Json::object();
  for (const auto& [name, n] : kinds) kj[name] = n;
  summary["kinds"] = kj;
  summary["verdict"] = first.empty() ? "not_applicable" : to_string(crit.verdict);
  results["summary"] = summary;
  results["singular_points"] = points;
  results["criterion"] = first.empty() ? Json(nullptr) : to_json(crit);
  results["fold_tests"] = folds;
  results["certificates"] = certs;

  const double pred = predicted_condition4(S.info());
  Json prov{{"singular_points", "computed"}, {"criterion", "computed"}, {"fold_tests", "computed"},
            {"certificates", "computed"}};
  if (std::isfinite(pred)) {
    results["predicted"] = {{"condition4_det", pred},
                            {"formula", "-72/(H^2 |k-1|^3)"},
                            {"provenance", "closed-form"},
                            {"relative_difference",
                             first.empty() ? Json(nullptr) : num(std::abs(crit.condition4_det - pred) / std::abs(pred))}};
    prov["predicted"] = "closed-form";
  }
  results["provenance"] = prov;
  return results;
}

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Surface S = build_surface(c);
  const GridSpec grid = build_grid(S, c, 41, 41);
  const Json results = classify_results(S, grid, c);
  write_json(c.out, envelope(c, results, elapsed(t0)));
  out << S.info().name << ": " << results["summary"]["samples"].get<int>() << " singular samples, verdict "
      << results["summary"]["verdict"].get<std::string>() << "\n";
  return kExitOk;
}

struct SweepRow {
  double k = 0.0, H = 0.0;
  std::string branch, template_name, verdict;
  double h = std::numeric_limits<double>::quiet_NaN();
  double rho0 = std::numeric_limits<double>::quiet_NaN();
  double cond4 = std::numeric_limits<double>::quiet_NaN();
  double predicted = std::numeric_limits<double>::quiet_NaN();
  int samples = 0;
  std::string error;
};

inline std::string csv_num(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

inline std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::vector<double> parse_list(const std::vector<std::string>& items, const char* name) {
  std::vector<double> v;
  for (const auto& s : items) {
    if (s.empty()) continue;
    try {
      size_t used = 0;
      v.push_back(std::stod(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw InputError(std::string(name) + ": not a number: " + s);
    }
  }
  if (v.empty()) throw InputError(std::string(name) + " must be nonempty");
  return v;
}

inline SweepRow sweep_row(const RunConfig& c, double k, double H) {
  SweepRow row;
  row.k = k;
  row.H = H;
  try {
    RunConfig rc = c;
    rc.k = k;
    rc.H = H;
    rc.family = "conjugate";
    if (rc.of.empty()) rc.of = "delaunay-t";
    const Surface S = build_surface(rc);
    row.branch = S.info().branch;
    row.template_name = S.info().template_name;
    row.h = S.info().h;
    row.rho0 = S.info().rho0;
    row.predicted = predicted_condition4(S.info());
    const GridSpec grid = build_grid(S, rc, 9, 21);
    std::vector<SingularPointRecord> first;
    for (const auto& r : trace_singular_curve(S, grid, c.tol))
      if (r.kind == SingularKind::first_kind && r.nondegenerate) first.push_back(r);
    row.samples = static_cast<int>(first.size());
    if (first.empty()) {
      row.verdict = "not_applicable";
      row.error = "no non-degenerate singular points of the first kind on the grid";
      return row;
    }
    const CriterionReport rep = criterion_25(S, first, c.tol);
    row.verdict = to_string(rep.verdict);
    row.cond4 = rep.condition4_det;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const std::vector<double> ks = parse_list(c.k_list, "--k-list");
  const std::vector<double> Hs = parse_list(c.H_list, "--H-list");
  std::vector<std::pair<double, double>> cases;
  for (double H : Hs)
    for (double k : ks) cases.emplace_back(k, H);
  std::vector<SweepRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) { rows[i] = sweep_row(c, cases[i].first, cases[i].second); });

  std::ostringstream csv;
  csv << "k,H,of,branch,template,h,rho0,samples,verdict,cond4_det,predicted_closed_form,rel_diff,error\n";
  for (const auto& r : rows) {
    const double rel = std::isfinite(r.predicted) && std::isfinite(r.cond4)
                           ? std::abs(r.cond4 - r.predicted) / std::abs(r.predicted)
                           : std::numeric_limits<double>::quiet_NaN();
    csv << csv_num(r.k) << ',' << csv_num(r.H) << ',' << (c.of.empty() ? "delaunay-t" : c.of) << ',' << r.branch << ',' << r.template_name << ','
        << csv_num(r.h) << ',' << csv_num(r.rho0) << ',' << r.samples << ',' << r.verdict << ',' << csv_num(r.cond4)
        << ',' << csv_num(r.predicted) << ',' << csv_num(rel) << ',' << csv_text(r.error) << '\n';
  }
  write_text(c.out, csv.str());
  out << "wrote " << rows.size() << " rows to " << c.out << "\n";
  return kExitOk;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> names = c.suites.empty() ? suite_names() : c.suites;
  for (const auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw InputError("unknown suite: " + n);
  if (c.trials <= 0) throw InputError("--trials must be positive");
  Json suites = Json::array();
  std::optional<SuiteResult> first_fail;
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n, c.trials, c.seed);
    out << "suite " << r.name << ": " << r.passed << "/" << r.total << (r.ok() ? " pass" : " FAIL") << " (worst "
        << r.worst << ")\n";
    suites.push_back(to_json(r));
    if (!r.ok() && !first_fail) first_fail = r;
  }
  if (!c.out.empty()) {
    Json results{{"suites", suites}, {"trials", c.trials}, {"all_passed", !first_fail.has_value()}};
    RunConfig rc = c;
    Json env = envelope(rc, results, elapsed(t0));
    env["config"]["suites"] = names;
    env["config"]["trials"] = c.trials;
    write_json(c.out, env);
  }
  if (first_fail) {
    err << "suite " << first_fail->name << " failed; first counterexample: " << first_fail->counterexample.dump()
        << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

/// Source description embedded by gauss-export, used by rep to measure the
/// round-trip discrepancy.
inline std::optional<double> round_trip_discrepancy(const Json& source, const GaussData& gd,
                                                    const RepresentationResult& rec, int i0, int j0) {
  if (!source.is_object() || source.value("family", "") != "delaunay-t") return std::nullopt;
  const Surface S = delaunay_timelike(source.at("k").get<double>(), source.at("H").get<double>());
  const auto r = source.at("r_range").get<std::vector<double>>();
  const auto P = conformal_profile_chart(S, r.at(0), r.at(1), source.at("anchor").get<double>(),
                                         source.value("t0", 0.0));
  return align_reconstruction(rec, gd, P->chart(), i0, j0).max_discrepancy;
}

inline int cmd_rep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_text(c.gauss);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  const GaussData gd = gauss_data_from_json(j);
  if (c.base.size() != 2 || c.base[0] < 0 || c.base[1] < 0 || c.base[0] >= gd.grid.nu || c.base[1] >= gd.grid.nv)
    throw InputError("--base must be a grid index i j inside the grid");

  double harmonic = 0.0;
  for (const auto& g : gd.g)
    if (std::abs(1.0 - std::norm(g.value())) > kUnitCircleTol)
      harmonic = std::max(harmonic, harmonic_residual(g) / std::max(1.0, harmonic_scale(g)));

  RepresentationResult rec;
  try {
    rec = integrate_representation(gd, c.base[0], c.base[1], c.loop_tol);
  } catch (const ClosednessError& e) {
    err << e.what() << "; worst cell (" << e.cell_i() << ", " << e.cell_j() << ") residual " << e.residual() << "\n";
    return kExitFailure;
  }
  Json results{{"H", gd.H},
               {"grid", to_json(gd.grid)},
               {"base", c.base},
               {"harmonic_residual", {{"value", harmonic}, {"tolerance", 1e-6}, {"provenance", "computed"}}},
               {"loop_residual",
                {{"value", rec.max_loop_residual},
                 {"tolerance", c.loop_tol},
                 {"worst_cell", {rec.worst_i, rec.worst_j}},
                 {"provenance", "computed"}}}};
  if (j.contains("source")) {
    if (auto d = round_trip_discrepancy(j["source"], gd, rec, c.base[0], c.base[1]))
      results["round_trip_discrepancy"] = {{"value", *d}, {"tolerance", 1e-5}, {"provenance", "computed"}};
  }
  write_text(c.out, to_obj(mesh_from_nodes(rec.X, gd.grid)));
  const std::string rpt = c.report.empty() ? c.out + ".json" : c.report;
  write_json(rpt, envelope(c, results, elapsed(t0)));
  out << "wrote " << c.out << " and " << rpt << " (loop residual " << rec.max_loop_residual << ")\n";
  return kExitOk;
}

inline int cmd_gauss_export(const RunConfig& c, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig rc = c;
  if (rc.family.empty()) rc.family = "delaunay-t";
  if (rc.family != "delaunay-t") throw InputError("gauss-export supports --family delaunay-t");
  const Surface S = build_surface(rc);
  check_range(rc.r_range, "--r-range");
  check_range(rc.t_range, "--t-range");
  const std::vector<double> r = rc.r_range.empty() ? std::vector<double>{0.2, 1.5} : rc.r_range;
  const std::vector<double> t = rc.t_range.empty() ? std::vector<double>{0.0, 1.0} : rc.t_range;
  const double anchor = std::isfinite(rc.anchor) ? rc.anchor : r[0];
  const auto P = conformal_profile_chart(S, r[0], r[1], anchor, 0.0);
  const Surface C = P->chart();
  const int nr = rc.nr != 0 ? rc.nr : 41, nt = rc.nt != 0 ? rc.nt : 41;
  if (nr < 2 || nt < 2) throw InputError("grid must be 2D with positive sizes");
  const GridSpec grid{nr, nt, C.domain().u_min, C.domain().u_max, t[0], t[1]};
  Json j = to_json(gauss_data_from(C, grid, rc.H));
  j["source"] = {{"family", "delaunay-t"}, {"k", rc.k},     {"H", rc.H}, {"r_range", r},
                 {"anchor", anchor},       {"t0", 0.0}, {"chart", "conformal profile (s, t)"}};
  if (!P->notice().empty()) j["source"]["notice"] = P->notice();
  write_json(c.out, j);
  out << "wrote " << c.out << " (" << nr << "x" << nt << " nodes, " << elapsed(t0) << " s)\n";
  return kExitOk;
}

inline void surface_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family,
                  "delaunay-t | delaunay-s | delaunay-l (with --variant) | delaunay-l1 | delaunay-l2 | conjugate | "
                  "model-fold | model-cuspidal-edge | model-25 | model-cone | plane | hyperboloid");
  sub->add_option("--of", c.of, "base family of a conjugate");
  sub->add_option("--variant", c.variant, "lightlike-axis variant (1 or 2)");
  sub->add_option("--k", c.k, "Delaunay parameter k (k != 1)");
  sub->add_option("--H", c.H, "mean curvature H (nonzero)")->capture_default_str();
  sub->add_option("--nr", c.nr, "grid nodes in r");
  sub->add_option("--nt", c.nt, "grid nodes in t");
  sub->add_option("--r-range", c.r_range, "r interval lo hi")->expected(2);
  sub->add_option("--t-range", c.t_range, "t interval lo hi")->expected(2);
}

inline void tolerance_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tol-zero", c.tol.zero_rel, "relative zero threshold for determinants")->capture_default_str();
  sub->add_option("--tol-angle", c.tol.angle, "transversality threshold")->capture_default_str();
  sub->add_option("--tol-collinear", c.tol.collinear, "collinearity threshold")->capture_default_str();
  sub->add_option("--tol-image", c.tol.image, "image-collapse threshold")->capture_default_str();
  sub->add_option("--tol-normal", c.tol.normal_distance, "normal-division threshold")->capture_default_str();
  sub->add_option("--tol-root", c.tol.root, "root refinement tolerance")->capture_default_str();
  sub->add_option("--tol-fold", c.tol.fold, "fold symmetry threshold")->capture_default_str();
}

}  // namespace cli_detail

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli_detail;
  RunConfig c;
  CLI::App app{"cmclab: singularities of spacelike CMC surfaces in Lorentz-Minkowski space"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "export an OBJ mesh and JSON sidecar");
  surface_options(gen, c);
  tolerance_options(gen, c);
  gen->add_option("--out", c.out, "OBJ path")->required();
  gen->add_option("--sidecar", c.sidecar, "sidecar JSON path (default: <out>.json)");
  gen->add_flag("--singular-curve", c.singular_curve, "trace the singular curve into the sidecar");

  auto* cls = app.add_subcommand("classify", "trace singular curves and run the criteria");
  surface_options(cls, c);
  tolerance_options(cls, c);
  cls->add_option("--out", c.out, "report JSON path")->required();
  cls->add_option("--samples", c.samples, "maximum number of singular samples (0 = all)");

  auto* swp = app.add_subcommand("sweep", "criterion over a list of conjugate Delaunay cases");
  swp->add_option("--of", c.of, "base family of the conjugates (default delaunay-t)");
  swp->add_option("--variant", c.variant, "lightlike-axis variant (1 or 2)");
  swp->add_option("--k-list", c.k_list, "comma-separated k values")->delimiter(',')->required();
  swp->add_option("--H-list", c.H_list, "comma-separated H values")->delimiter(',')->required();
  swp->add_option("--nr", c.nr, "grid nodes in r");
  swp->add_option("--nt", c.nt, "grid nodes in t");
  tolerance_options(swp, c);
  swp->add_option("--out", c.out, "CSV path")->required();

  auto* ver = app.add_subcommand("verify", "run the invariance and residual property suites");
  ver->add_option("--suite", c.suites, "suite name (repeatable); default all");
  ver->add_option("--trials", c.trials, "trials for the randomized suites")->capture_default_str();
  ver->add_option("--seed", c.seed, "random seed")->capture_default_str();
  ver->add_option("--out", c.out, "summary JSON path");

  auto* rep = app.add_subcommand("rep", "reconstruct a surface from Gauss data");
  rep->add_option("--gauss", c.gauss, "Gauss data JSON")->required();
  rep->add_option("--out", c.out, "OBJ path")->required();
  rep->add_option("--report", c.report, "residual JSON path (default: <out>.json)");
  rep->add_option("--base", c.base, "base node i j")->expected(2);
  rep->add_option("--loop-tol", c.loop_tol, "cell closedness tolerance")->capture_default_str();

  auto* gex = app.add_subcommand("gauss-export", "export Gauss data of a Delaunay surface on its conformal chart");
  gex->add_option("--family", c.family, "delaunay-t");
  gex->add_option("--k", c.k, "Delaunay parameter k (k != 1)");
  gex->add_option("--H", c.H, "mean curvature H (nonzero)")->capture_default_str();
  gex->add_option("--nr", c.nr, "grid nodes in s");
  gex->add_option("--nt", c.nt, "grid nodes in t");
  gex->add_option("--r-range", c.r_range, "profile interval lo hi")->expected(2);
  gex->add_option("--t-range", c.t_range, "t interval lo hi")->expected(2);
  gex->add_option("--anchor", c.anchor, "profile value where s = 0");
  gex->add_option("--out", c.out, "Gauss data JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    if (*gen) return cmd_generate(c, out);
    if (*cls) return cmd_classify(c, out);
    if (*swp) return cmd_sweep(c, out);
    if (*ver) return cmd_verify(c, out, err);
    if (*rep) return cmd_rep(c, out, err);
    if (*gex) return cmd_gauss_export(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitBadInput;
}

}  // namespace cmclab
