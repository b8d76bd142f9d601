#include <gtest/gtest.h>

#include "cmclab/verify.hpp"

using namespace cmclab;

namespace {

void expect_suite(const std::string& name, int trials, std::uint64_t seed) {
  const SuiteResult r = run_suite(name, trials, seed);
  EXPECT_TRUE(r.ok()) << name << " " << r.passed << "/" << r.total << " counterexample " << r.counterexample.dump();
  EXPECT_GT(r.total, 0) << name;
}

}  // namespace

TEST(PropertySuites, FieldChangesPreserveTheCriterion) { expect_suite("fields", 100, 12345); }
TEST(PropertySuites, AmbientDiffeosPreserveVerdicts) { expect_suite("diffeo", 100, 12345); }
TEST(PropertySuites, LaplacianIdentityOnRandomRegularPoints) { expect_suite("laplacian", 100, 12345); }
TEST(PropertySuites, FoldObstructionCertificates) { expect_suite("certificate", 1, 0); }
TEST(PropertySuites, RepresentationRoundTrips) { expect_suite("representation", 1, 0); }
TEST(PropertySuites, RankAndKindsOfSingularPoints) { expect_suite("rank", 1, 0); }
TEST(PropertySuites, HarmonicResidualOfGaussMaps) { expect_suite("harmonic", 100, 12345); }

TEST(PropertySuites, OtherSeedsPassToo) {
  for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    expect_suite("fields", 30, seed);
    expect_suite("laplacian", 30, seed);
  }
}

TEST(PropertySuites, SeededRunsAreDeterministic) {
  const SuiteResult a = run_suite("fields", 20, 7), b = run_suite("fields", 20, 7);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  const SuiteResult c = run_suite("fields", 20, 8);
  EXPECT_NE(to_json(a)["worst"], to_json(c)["worst"]);
}

TEST(PropertySuites, BadArgumentsAreInputErrors) {
  EXPECT_THROW(run_suite("nope", 10, 1), InputError);
  EXPECT_THROW(run_suite("fields", 0, 1), InputError);
}
