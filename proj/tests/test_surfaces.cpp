#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cmclab/io.hpp"
#include "cmclab/surfaces.hpp"

using namespace cmclab;

namespace {

/// Regular interior point of a Delaunay chart, away from r = 0.
Point2 regular_point(const Surface& S, double frac_r, double frac_t) {
  const GridSpec& g = S.default_grid();
  const double r = g.u1 * (0.2 + 0.6 * frac_r);
  return {r, g.v0 + (g.v1 - g.v0) * frac_t};
}

std::vector<Surface> cmc_examples() {
  std::vector<Surface> v;
  for (double H : {0.5, 1.0, -0.7})
    for (double k : {2.0, 0.5, 3.0, -3.0, 0.0}) {
      v.push_back(delaunay_timelike(k, H));
      v.push_back(delaunay_spacelike(k, H));
      v.push_back(conjugate_of(Family::delaunay_timelike, k, H));
      v.push_back(conjugate_of(Family::delaunay_spacelike, k, H));
    }
  for (double H : {0.5, 1.0}) {
    v.push_back(delaunay_lightlike(1, H));
    v.push_back(delaunay_lightlike(2, H));
    v.push_back(conjugate_of(Family::delaunay_timelike, -1.0, H));
    v.push_back(conjugate_of(Family::delaunay_lightlike_i, 0.0, H));
    v.push_back(conjugate_of(Family::delaunay_lightlike_ii, 0.0, H));
  }
  v.push_back(hyperboloid_surface(2.0));
  return v;
}

}  // namespace

TEST(SurfaceParameters, InvalidInputsAreRejected) {
  EXPECT_THROW(delaunay_timelike(1.0, 0.5), InputError);
  EXPECT_THROW(delaunay_spacelike(1.0, 0.5), InputError);
  EXPECT_THROW(delaunay_timelike(2.0, 0.0), InputError);
  EXPECT_THROW(conjugate_of(Family::delaunay_timelike, 1.0, 0.5), InputError);
  EXPECT_THROW(delaunay_lightlike(3, 0.5), InputError);
  EXPECT_THROW(make_family("nope", 2.0, 0.5), InputError);
  EXPECT_THROW(make_family("conjugate", 2.0, 0.5, ""), InputError);
  const Surface S = delaunay_timelike(2.0, 0.5);
  EXPECT_THROW(S.point({S.domain().u_max + 1.0, 0.0}), Error);
}

TEST(SurfaceProperty, MeanCurvatureEqualsHAtRegularPoints) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (const auto& S : cmc_examples()) {
    for (int t = 0; t < 5; ++t) {
      const Point2 p = regular_point(S, d(rng), d(rng));
      const FundamentalForms f = fundamental_forms(S, p);
      EXPECT_GT(f.E * f.G - f.F * f.F, 0.0) << S.info().name;
      EXPECT_NEAR(f.H_mean, S.info().H, 1e-7) << S.info().name << " k=" << S.info().k << " at " << p.u << "," << p.v;
      EXPECT_NEAR(lorentz_inner(f.nu, f.nu), -1.0, 1e-12);
    }
  }
}

TEST(SurfaceProperty, ConjugateSharesTheFirstFundamentalForm) {
  for (double H : {0.5, 1.0})
    for (double k : {2.0, 0.5, 3.0, 0.0, -3.0}) {
      const Surface X = delaunay_timelike(k, H);
      const Surface Y = conjugate_of(Family::delaunay_timelike, k, H);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const Point2 p = regular_point(Y, i / 5.0, j / 5.0);
          const FundamentalForms a = fundamental_forms(X, p), b = fundamental_forms(Y, p);
          const double diff = std::abs(a.E - b.E) + std::abs(a.F - b.F) + std::abs(a.G - b.G);
          EXPECT_LT(diff, 1e-8 * (1.0 + a.E + a.G)) << "k=" << k << " H=" << H;
        }
    }
}

TEST(ConjugateBranches, TemplateAndConstants) {
  const Surface a = conjugate_of(Family::delaunay_timelike, 2.0, 0.5);
  EXPECT_EQ(a.info().branch, "I-i");
  EXPECT_EQ(a.info().template_name, "X_T");
  EXPECT_NEAR(a.info().h, (1.0 - 2.0) / (2 * 0.5 * 3.0), 1e-15);
  EXPECT_NEAR(a.info().rho0, 1.0 / 3.0, 1e-15);
  // ρ(0) is the x1-x2 radius of the image of r = 0.
  const LVec3 x = a.point({0.0, 0.3});
  EXPECT_NEAR(std::hypot(x.x1, x.x2), a.info().rho0, 1e-12);

  EXPECT_EQ(conjugate_of(Family::delaunay_timelike, -3.0, 0.5).info().template_name, "X_S");
  const Surface l = conjugate_of(Family::delaunay_timelike, -1.0, 0.5);
  EXPECT_EQ(l.info().branch, "I-ii");
  EXPECT_EQ(l.info().template_name, "X_L");
  EXPECT_EQ(l.info().h, 0.5);
  EXPECT_EQ(conjugate_of(Family::delaunay_spacelike, 2.0, 0.5).info().branch, "II-i");
  EXPECT_EQ(conjugate_of(Family::delaunay_spacelike, -1.0, 0.5).info().branch, "II-ii");
  EXPECT_EQ(conjugate_of(Family::delaunay_lightlike_i, 0.0, 0.5).info().branch, "III-i");
  EXPECT_EQ(conjugate_of(Family::delaunay_lightlike_ii, 0.0, 0.5).info().branch, "III-ii");
}

TEST(Delaunay, TimelikeProfileHandValues) {
  const double k = 2.0, H = 0.5;
  const Surface S = delaunay_timelike(k, H);
  // r = 0 collapses onto the axis point (0, 0, 0).
  EXPECT_NEAR(euclid_norm(S.point({0.0, 1.3})), 0.0, 1e-15);
  // X_t = (0, -r sin 2Ht, r cos 2Ht): |X_t|² = r².
  const JetVec3 X = S.jet({0.4, 0.7}, 1);
  const LVec3 xt = values(dv(X));
  EXPECT_NEAR(lorentz_inner(xt, xt), 0.16, 1e-14);
  // x0' = (r² + k - 1)/(2H √δ).
  const double r = 0.4, delta = std::pow(r * r + k + 1, 2) - 4 * k;
  EXPECT_NEAR(values(du(X)).x0, (r * r + k - 1) / (2 * H * std::sqrt(delta)), 1e-14);
}

TEST(Models, JetsAreExactPolynomials) {
  const Surface m = standard_model("cusp25");
  const JetVec3 X = m.jet({0.0, 0.0});
  EXPECT_EQ(X[0].coeff(1, 0), 1.0);
  EXPECT_EQ(X[1].coeff(0, 2), 1.0);
  EXPECT_EQ(X[2].coeff(0, 5), 1.0);
  EXPECT_THROW(standard_model("unknown"), InputError);
  EXPECT_EQ(standard_model("fold").info().family, Family::model_fold);
}

TEST(MeshExport, GridTrianglesAndObjFormat) {
  const Surface S = standard_model("cusp25");
  const GridSpec g{4, 3, -1, 1, -1, 1};
  const TriangleMesh m = mesh_export(S, g);
  EXPECT_EQ(m.vertices.size(), 12u);
  EXPECT_EQ(m.faces.size(), 2u * 3u * 2u);
  for (const auto& f : m.faces)
    for (int id : f) EXPECT_LT(id, 12);
  const std::string obj = to_obj(m);
  std::istringstream is(obj);
  std::string line;
  int v = 0, f = 0;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, 12);
  EXPECT_EQ(f, 12);
  EXPECT_EQ(obj.substr(0, 2), "v ");
  EXPECT_THROW(mesh_export(S, GridSpec{1, 3, 0, 1, 0, 1}), InputError);

  const Json side = surface_sidecar(delaunay_timelike(2.0, 0.5), g);
  EXPECT_EQ(side["surface"]["family"], "delaunay_timelike");
  EXPECT_EQ(side["grid"]["nu"], 4);
  EXPECT_EQ(side["vertex_order"], "x1 x2 x0");
}

TEST(MeshExport, ErrorsCarryTheGridIndex) {
  const Surface S = delaunay_lightlike(2, 0.5);
  const GridSpec g{3, 3, 0.0, 2.0, 0.0, 1.0};
  try {
    mesh_export(S, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("grid index"), std::string::npos);
  }
}
