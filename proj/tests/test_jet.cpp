#include <gtest/gtest.h>

#include <random>

#include "cmclab/jet.hpp"

using namespace cmclab;

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class T>
T composite(const T& u, const T& v) {
  return exp(sin(u)) * sqrt(1.0 + v * v) + atan(u * v) + log(2.0 + u * u) * cosh(0.5 * v);
}

/// Mixed partial ∂u^a ∂v^b of f at p by central differences with one
/// Richardson step.
template <class F>
double richardson_partial(F f, double u, double v, int a, int b) {
  auto fd = [&](double h) {
    double s = 0.0;
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) {
        const double w = binom(a, i) * binom(b, j) * ((i + j) % 2 ? -1.0 : 1.0);
        s += w * f(u + (0.5 * a - i) * h, v + (0.5 * b - j) * h);
      }
    return s / std::pow(h, a + b);
  };
  const double h = std::pow(1e-16, 1.0 / (a + b + 4));
  return (4.0 * fd(h / 2) - fd(h)) / 3.0;
}

}  // namespace

TEST(Jet2Polynomial, MonomialMatchesBinomialExpansion) {
  const Point2 p{1.5, -2.0};
  const Jet2 u = Jet2::coordinate_u(p), v = Jet2::coordinate_v(p);
  const Jet2 f = u * u * v * v * v;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 3; ++b)
      EXPECT_EQ(f.coeff(a, b), binom(2, a) * std::pow(1.5, 2 - a) * binom(3, b) * std::pow(-2.0, 3 - b))
          << a << "," << b;
  for (int a = 0; a <= kJetDegree; ++a)
    for (int b = 0; a + b <= kJetDegree; ++b)
      if (a > 2 || b > 3) EXPECT_EQ(f.coeff(a, b), 0.0);
}

TEST(Jet2Polynomial, PartialsAreCoefficientTimesFactorials) {
  const Jet2 u = Jet2::coordinate_u({0, 0}), v = Jet2::coordinate_v({0, 0});
  const Jet2 f = u * v * v * 7.0 + v * v * v * v * v;
  EXPECT_EQ(f.partial(1, 2), 14.0);
  EXPECT_EQ(f.partial(0, 5), 120.0);
  EXPECT_EQ(f.du().coeff(0, 2), 7.0);
  EXPECT_EQ(f.dv().coeff(0, 4), 5.0);
}

TEST(Jet2Transcendental, AgreesWithRichardsonDifferences) {
  const double u0 = 0.3, v0 = -0.7;
  const Jet2 f = composite(Jet2::coordinate_u({u0, v0}), Jet2::coordinate_v({u0, v0}));
  auto g = [](double u, double v) { return composite(u, v); };
  EXPECT_NEAR(f.value(), g(u0, v0), 1e-15);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}}) {
    const double ref = richardson_partial(g, u0, v0, a, b);
    EXPECT_NEAR(f.partial(a, b), ref, 1e-7 * (1.0 + std::abs(ref))) << a << "," << b;
  }
}

TEST(Jet1, SeriesCompositionInverses) {
  const Jet1 x = Jet1::variable(0.4);
  const Jet1 a = exp(log(x + 1.0)) - 1.0;
  const Jet1 b = sin(x) * sin(x) + cos(x) * cos(x);
  const Jet1 c = (x * x + 2.0) / (x * x + 2.0);
  for (int k = 0; k <= kJetDegree; ++k) {
    EXPECT_NEAR(a[k], x[k], 1e-13);
    EXPECT_NEAR(b[k], k == 0 ? 1.0 : 0.0, 1e-13);
    EXPECT_NEAR(c[k], k == 0 ? 1.0 : 0.0, 1e-13);
  }
  const Jet1 s = sqrt(x * x);
  for (int k = 0; k <= kJetDegree; ++k) EXPECT_NEAR(s[k], x[k], 1e-13);
}

TEST(Jet1, DerivativeOfAtanhAndPower) {
  const double r = 0.3;
  const Jet1 x = Jet1::variable(r);
  EXPECT_NEAR(atanh(x)[1], 1.0 / (1.0 - r * r), 1e-14);
  EXPECT_NEAR(pow(x, 2.5)[1], 2.5 * std::pow(r, 1.5), 1e-14);
  EXPECT_NEAR(pow(x, 3)[2], 3.0 * r, 1e-14);
  EXPECT_NEAR(atan(x)[1], 1.0 / (1.0 + r * r), 1e-14);
}

TEST(JetComposition, ComposeLiftRestrictAreConsistent) {
  const Point2 p{0.2, 0.1};
  const Jet2 u = Jet2::coordinate_u(p), v = Jet2::coordinate_v(p);
  const Jet2 f = composite(u, v);
  // Identity displacements reproduce f.
  const Jet2 id = compose(f, u.displacement(), v.displacement());
  for (int a = 0; a <= kJetDegree; ++a)
    for (int b = 0; a + b <= kJetDegree; ++b) EXPECT_NEAR(id.coeff(a, b), f.coeff(a, b), 1e-13);
  // lift(g, x) equals g∘x evaluated directly.
  const Jet2 x = u * v + sin(u);
  const Jet2 direct = exp(x);
  const Jet2 lifted = lift(exp(Jet1::variable(x.value())), x);
  for (int a = 0; a <= kJetDegree; ++a)
    for (int b = 0; a + b <= kJetDegree; ++b) EXPECT_NEAR(lifted.coeff(a, b), direct.coeff(a, b), 1e-13);
  // restrict along the line (t, 2t) equals the one-variable composite.
  const Jet1 t = Jet1::variable(0.0);
  const Jet1 r = restrict(f, t, 2.0 * t);
  const Jet1 ref = composite(p.u + t, p.v + 2.0 * t);
  for (int k = 0; k <= kJetDegree; ++k) EXPECT_NEAR(r[k], ref[k], 1e-12);
}

TEST(VectorFields, ConstantFieldIteratesPartials) {
  const Jet2 u = Jet2::coordinate_u({}), v = Jet2::coordinate_v({});
  const JetVec3 X{u, v * v, v * v * v * v * v};
  const VectorFieldJet eta = VectorFieldJet::constant(0.0, 1.0, {});
  EXPECT_EQ(iterated_field_derivative(X, eta, 2), (LVec3{0, 2, 0}));
  EXPECT_EQ(iterated_field_derivative(X, eta, 5), (LVec3{0, 0, 120}));
  // η = ∂u + u ∂v applied twice to v² gives 2u² + 2v... at 0 only the v-term.
  const VectorFieldJet w{Jet2::constant(1.0, {}), u};
  const Jet2 f = v * v;
  const Jet2 once = apply_vector_field(w, f);
  EXPECT_EQ(once.coeff(1, 1), 2.0);
  EXPECT_EQ(apply_vector_field(w, once).value(), 0.0);
}

TEST(Jet2, RejectsDegreeAboveTheEngineLimit) {
  EXPECT_THROW(Jet2::coordinate_u({}, kJetDegree + 1), Error);
  EXPECT_THROW(Jet1::variable(0.0, -1), Error);
}

TEST(Jet2Property, ProductRuleOnRandomPolynomials) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const Point2 p{d(rng), d(rng)};
    const Jet2 u = Jet2::coordinate_u(p), v = Jet2::coordinate_v(p);
    const Jet2 f = d(rng) * u * u + d(rng) * v + d(rng) * u * v;
    const Jet2 g = d(rng) * v * v * v + d(rng) * u + 1.0;
    const Jet2 lhs = (f * g).du();
    const Jet2 rhs = f.du() * g + f * g.du();
    for (int a = 0; a + 1 <= kJetDegree - 1; ++a)
      for (int b = 0; a + b <= kJetDegree - 1; ++b) EXPECT_NEAR(lhs.coeff(a, b), rhs.coeff(a, b), 1e-13);
  }
}
