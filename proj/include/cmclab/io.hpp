#pragma once

// OBJ mesh export with JSON sidecars, Gauss data files and JSON views of the
// analysis records.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmclab/error.hpp"
#include "cmclab/representation.hpp"
#include "cmclab/singularity.hpp"
#include "cmclab/surfaces.hpp"

namespace cmclab {

using Json = nlohmann::ordered_json;

struct TriangleMesh {
  std::vector<LVec3> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
};

/// Two triangles per grid cell.
inline TriangleMesh mesh_export(const Surface& S, const GridSpec& grid) {
  if (grid.nu < 2 || grid.nv < 2) throw InputError("grid must be 2D");
  TriangleMesh m;
  m.vertices.reserve(static_cast<size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      try {
        m.vertices.push_back(S.point({grid.u(i), grid.v(j)}));
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " at grid index (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  auto id = [&](int i, int j) { return i * grid.nv + j; };
  for (int i = 0; i + 1 < grid.nu; ++i)
    for (int j = 0; j + 1 < grid.nv; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

inline TriangleMesh mesh_from_nodes(const std::vector<LVec3>& X, const GridSpec& grid) {
  if (grid.nu < 2 || grid.nv < 2) throw InputError("grid must be 2D");
  if (X.size() != static_cast<size_t>(grid.nu) * grid.nv) throw InputError("node count does not match grid");
  TriangleMesh m;
  m.vertices = X;
  auto id = [&](int i, int j) { return i * grid.nv + j; };
  for (int i = 0; i + 1 < grid.nu; ++i)
    for (int j = 0; j + 1 < grid.nv; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

/// OBJ text with vertices written as (x1, x2, x0) and 1-based faces.
inline std::string to_obj(const TriangleMesh& m) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& v : m.vertices) os << "v " << v.x1 << ' ' << v.x2 << ' ' << v.x0 << '\n';
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// JSON views

inline Json to_json(const GridSpec& g) {
  return {{"nu", g.nu}, {"nv", g.nv}, {"u0", g.u0}, {"u1", g.u1}, {"v0", g.v0}, {"v1", g.v1}};
}

inline GridSpec grid_from_json(const Json& j) {
  GridSpec g;
  g.nu = j.at("nu").get<int>();
  g.nv = j.at("nv").get<int>();
  g.u0 = j.at("u0").get<double>();
  g.u1 = j.at("u1").get<double>();
  g.v0 = j.at("v0").get<double>();
  g.v1 = j.at("v1").get<double>();
  if (g.nu < 2 || g.nv < 2) throw InputError("grid must be 2D");
  return g;
}

/// Non-finite numbers become null.
inline Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const Domain& d) {
  return {{"u_min", num(d.u_min)}, {"u_max", num(d.u_max)}, {"v_min", num(d.v_min)}, {"v_max", num(d.v_max)}};
}

inline Json to_json(const SurfaceInfo& s) {
  Json j{{"name", s.name}, {"family", to_string(s.family)}};
  if (s.conjugate_of) j["conjugate_of"] = to_string(*s.conjugate_of);
  if (!s.branch.empty()) j["branch"] = s.branch;
  if (!s.template_name.empty()) j["template"] = s.template_name;
  j["H"] = num(s.H);
  j["k"] = num(s.k);
  j["h"] = num(s.h);
  j["rho0"] = num(s.rho0);
  j["cmc"] = s.cmc;
  return j;
}

inline Json surface_sidecar(const Surface& S, const GridSpec& grid) {
  return {{"surface", to_json(S.info())}, {"grid", to_json(grid)}, {"domain", to_json(S.domain())},
          {"vertex_order", "x1 x2 x0"}};
}

inline Json to_json(const SingularPointRecord& r) {
  Json j{{"location", {r.location.u, r.location.v}},
         {"lambda", r.lambda},
         {"dlambda", {r.dlambda[0], r.dlambda[1]}},
         {"null_vector", r.null_vector ? Json{(*r.null_vector)[0], (*r.null_vector)[1]} : Json(nullptr)},
         {"tangent", {r.tangent[0], r.tangent[1]}},
         {"kind", to_string(r.kind)},
         {"rank", r.rank},
         {"singular_values", {r.singular_values[0], r.singular_values[1]}},
         {"nondegenerate", r.nondegenerate},
         {"image", {r.image.x0, r.image.x1, r.image.x2}}};
  if (r.kind == SingularKind::conelike) j["kind_definition"] = "operational";
  return j;
}

inline Json to_json(const SampleCriterion& s) {
  Json j{{"location", {s.location.u, s.location.v}},
         {"kind", to_string(s.kind)},
         {"condition3_det", s.cond3},
         {"condition3_relative", s.cond3_relative},
         {"special_field", {{"a", s.a}, {"b", s.b}}},
         {"special_residual", s.special_residual},
         {"C", s.C},
         {"collinearity_residual", s.collinearity_residual},
         {"condition4_det", s.cond4},
         {"condition4_relative", s.cond4_relative},
         {"verdict", to_string(s.verdict)}};
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

inline Json to_json(const CriterionReport& c) {
  Json samples = Json::array();
  for (const auto& s : c.samples) samples.push_back(to_json(s));
  return {{"condition3_max_abs_det", c.condition3_max_abs_det},
          {"condition3_max_abs_det_raw", c.condition3_max_abs_det_raw},
          {"special_field", {{"a", c.a}, {"b", c.b}}},
          {"C", c.C},
          {"collinearity_residual", c.collinearity_residual},
          {"condition4_det", c.condition4_det},
          {"verdict", to_string(c.verdict)},
          {"tested_interval", {c.tested_interval_lo, c.tested_interval_hi}},
          {"samples", samples}};
}

inline Json to_json(const FoldTest& f) {
  return {{"fold_candidate", f.fold_candidate},
          {"verdict", f.fold_candidate ? "fold_candidate" : "rejected"},
          {"residual", num(f.residual)},
          {"reason", f.reason}};
}

inline Json to_json(const FoldObstruction& c) {
  if (c.rank0) return {{"location", {c.location.u, c.location.v}}, {"regime", c.regime}, {"conclusion", c.conclusion}};
  return {{"location", {c.location.u, c.location.v}},
          {"offset", c.offset},
          {"abs_g_minus_one", c.abs_g_minus_one},
          {"g_limit_plus", c.g_limit_plus},
          {"g_limit_minus", c.g_limit_minus},
          {"dg_norm", c.dg_norm},
          {"side_signs", {c.side_sign_minus, c.side_sign_plus}},
          {"sign_flip", c.sign_flip},
          {"sheet_flip", c.sheet_flip},
          {"laplacian_residual", c.laplacian_residual},
          {"conclusion", c.conclusion}};
}

inline Json to_json(const SingularTolerances& t) {
  return {{"zero_rel", t.zero_rel}, {"angle", t.angle},           {"collinear", t.collinear},
          {"image", t.image},       {"normal_distance", t.normal_distance}, {"root", t.root},
          {"fold", t.fold}};
}

// ---------------------------------------------------------------------------
// Gauss data files

inline Json to_json(const GaussData& gd) {
  Json nodes = Json::array();
  for (const auto& g : gd.g) {
    Json jet = Json::array();
    for (int n = 0; n <= g.degree(); ++n)
      for (int b = 0; b <= n; ++b) {
        const Complex c = g.coeff(n - b, b);
        jet.push_back({c.real(), c.imag()});
      }
    nodes.push_back({{"g", {g.value().real(), g.value().imag()}}, {"jet", jet}});
  }
  const int degree = gd.g.empty() ? 0 : gd.g.front().degree();
  return {{"format", "cmclab-gauss-data"}, {"H", gd.H}, {"grid", to_json(gd.grid)}, {"degree", degree},
          {"nodes", nodes}};
}

inline GaussData gauss_data_from_json(const Json& j) {
  try {
    GaussData gd;
    gd.H = j.at("H").get<double>();
    if (!std::isfinite(gd.H) || gd.H == 0.0) throw InputError("H must be finite and nonzero");
    gd.grid = grid_from_json(j.at("grid"));
    const int degree = j.at("degree").get<int>();
    if (degree < 2 || degree > kJetDegree) throw InputError("Gauss data jet degree must lie in [2, 5]");
    const Json& nodes = j.at("nodes");
    if (nodes.size() != static_cast<size_t>(gd.grid.nu) * gd.grid.nv) throw InputError("node count does not match grid");
    size_t idx = 0;
    for (int i = 0; i < gd.grid.nu; ++i)
      for (int jj = 0; jj < gd.grid.nv; ++jj, ++idx) {
        const Point2 base{gd.grid.u(i), gd.grid.v(jj)};
        const Json& jet = nodes[idx].at("jet");
        if (jet.size() != static_cast<size_t>((degree + 1) * (degree + 2) / 2))
          throw InputError("jet length does not match degree at node " + std::to_string(idx));
        CJet g{Jet2::constant(0.0, base, degree), Jet2::constant(0.0, base, degree)};
        size_t m = 0;
        for (int n = 0; n <= degree; ++n)
          for (int b = 0; b <= n; ++b, ++m) {
            g.re.set_coeff(n - b, b, jet[m].at(0).get<double>());
            g.im.set_coeff(n - b, b, jet[m].at(1).get<double>());
          }
        gd.g.push_back(g);
      }
    return gd;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed Gauss data: ") + e.what());
  }
}

inline GaussData read_gauss_data(const std::string& path) {
  const std::string text = read_text(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return gauss_data_from_json(j);
}

}  // namespace cmclab
