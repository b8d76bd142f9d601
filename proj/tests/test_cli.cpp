#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cmclab/cli.hpp"

using namespace cmclab;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "cmclab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cmclab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  Json load(const std::string& name) const { return Json::parse(read_text(path(name))); }

  fs::path dir_;
};

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string x;
  while (std::getline(ss, x, ',')) f.push_back(x);
  if (!line.empty() && line.back() == ',') f.push_back("");
  return f;
}

}  // namespace

TEST_F(CliTest, GenerateWritesMeshAndSidecar) {
  const CliRun r = run({"generate", "--family", "conjugate", "--of", "delaunay-t", "--k", "2", "--H", "0.5", "--nr", "9",
                     "--nt", "7", "--out", path("x.obj"), "--singular-curve"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string obj = read_text(path("x.obj"));
  EXPECT_EQ(std::count(obj.begin(), obj.end(), 'v'), 63);
  const Json side = load("x.obj.json");
  EXPECT_EQ(side["results"]["surface"]["branch"], "I-i");
  EXPECT_EQ(side["results"]["singular_curve"].size(), 7u);
  EXPECT_EQ(side["config"]["seed"], 12345);
  EXPECT_TRUE(side.contains("timing"));

  EXPECT_EQ(run({"generate", "--family", "model-25", "--nr", "5", "--nt", "5", "--out", path("m.obj")}).code, 0);
  EXPECT_EQ(run({"generate", "--family", "delaunay-t", "--H", "0.5", "--out", path("d.obj")}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "delaunay-t", "--k", "1", "--out", path("d.obj")}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "delaunay-t", "--k", "2", "--H", "0", "--out", path("d.obj")}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "model-25", "--nr", "0", "--out", path("d.obj")}).code, 0);
  EXPECT_EQ(run({"generate", "--family", "model-25", "--nr", "1", "--out", path("d.obj")}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "model-25", "--out", path("no/such/dir/d.obj")}).code, 3);
  EXPECT_EQ(run({"generate", "--out", path("d.obj")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, ClassifyConjugateGivesCusp25AndTheClosedForm) {
  const CliRun r = run({"classify", "--family", "conjugate", "--of", "delaunay-t", "--k", "2", "--H", "0.5", "--out",
                     path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = load("c.json")["results"];
  EXPECT_EQ(j["summary"]["verdict"], "cusp25");
  EXPECT_GE(j["criterion"]["samples"].size(), 20u);
  for (const auto& s : j["criterion"]["samples"]) {
    EXPECT_EQ(s["verdict"], "cusp25");
    EXPECT_NEAR(s["condition4_det"].get<double>(), -288.0, 288.0 * 1e-5);
  }
  EXPECT_EQ(j["predicted"]["provenance"], "closed-form");
  EXPECT_EQ(j["predicted"]["condition4_det"], -288.0);
  for (const auto& f : j["fold_tests"]) EXPECT_EQ(f["verdict"], "rejected");
  EXPECT_EQ(load("c.json")["config"]["tolerances"]["zero_rel"], 1e-8);
}

TEST_F(CliTest, ClassifyKindsAndModels) {
  ASSERT_EQ(run({"classify", "--family", "delaunay-t", "--k", "2", "--H", "0.5", "--out", path("d.json")}).code, 0);
  const Json d = load("d.json")["results"];
  EXPECT_EQ(d["summary"]["kinds"].size(), 1u);
  EXPECT_GT(d["summary"]["kinds"]["conelike"].get<int>(), 0);
  for (const auto& p : d["singular_points"]) EXPECT_EQ(p["kind_definition"], "operational");

  ASSERT_EQ(run({"classify", "--family", "model-fold", "--out", path("f.json")}).code, 0);
  const Json f = load("f.json")["results"];
  EXPECT_EQ(f["summary"]["verdict"], "rejected_cond4");
  for (const auto& t : f["fold_tests"]) EXPECT_EQ(t["verdict"], "fold_candidate");

  ASSERT_EQ(run({"classify", "--family", "model-cuspidal-edge", "--out", path("e.json"), "--samples", "5"}).code, 0);
  const Json e = load("e.json")["results"];
  EXPECT_EQ(e["summary"]["verdict"], "rejected_cond3");
  EXPECT_EQ(e["summary"]["samples"], 5);
}

TEST_F(CliTest, ClassifyPayloadIsDeterministic) {
  const std::vector<std::string> args{"classify", "--family", "conjugate", "--of", "delaunay-t", "--k", "0.5",
                                      "--nr",     "9",        "--nt",      "11"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", path("a.json")});
  b.insert(b.end(), {"--out", path("b.json")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  Json ja = load("a.json"), jb = load("b.json");
  ja.erase("timing");
  jb.erase("timing");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST_F(CliTest, SweepRowsBranchesAndPredictions) {
  const CliRun r = run({"sweep", "--k-list", "2,0.5,3,-1", "--H-list", "0.5", "--out", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(read_text(path("s.csv")));
  std::string line;
  std::getline(is, line);
  const auto header = csv_fields(line);
  ASSERT_EQ(header[0], "k");
  auto col = [&](const std::string& name) {
    return static_cast<size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) rows.push_back(csv_fields(line));
  ASSERT_EQ(rows.size(), 4u);
  const double predicted[] = {-288.0, -2304.0, -36.0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i][col("branch")], "I-i");
    EXPECT_EQ(rows[i][col("verdict")], "cusp25");
    EXPECT_DOUBLE_EQ(std::stod(rows[i][col("predicted_closed_form")]), predicted[i]);
    EXPECT_LT(std::stod(rows[i][col("rel_diff")]), 1e-5);
  }
  EXPECT_EQ(rows[3][col("branch")], "I-ii");
  EXPECT_EQ(rows[3][col("template")], "X_L");
  EXPECT_EQ(std::stod(rows[3][col("h")]), 0.5);

  EXPECT_EQ(run({"sweep", "--k-list", "", "--H-list", "0.5", "--out", path("e.csv")}).code, 2);
  EXPECT_EQ(run({"sweep", "--k-list", "2", "--H-list", ",", "--out", path("e.csv")}).code, 2);
  EXPECT_EQ(run({"sweep", "--H-list", "0.5", "--out", path("e.csv")}).code, 2);
}

TEST_F(CliTest, SweepRecordsPerRowErrorsAndContinues) {
  const CliRun r = run({"sweep", "--k-list", "1,2", "--H-list", "0.5", "--out", path("s.csv")});
  ASSERT_EQ(r.code, 0);
  const std::string csv = read_text(path("s.csv"));
  EXPECT_NE(csv.find("k=1 degenerate"), std::string::npos);
  EXPECT_NE(csv.find("cusp25"), std::string::npos);
}

TEST_F(CliTest, VerifySuiteFilterAndExitCodes) {
  const CliRun r = run({"verify", "--suite", "laplacian", "--trials", "20", "--seed", "7", "--out", path("v.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("suite laplacian: 20/20 pass"), std::string::npos);
  EXPECT_EQ(r.out.find("suite fields"), std::string::npos);
  const Json v = load("v.json");
  EXPECT_EQ(v["config"]["seed"], 7);
  EXPECT_TRUE(v["results"]["all_passed"].get<bool>());
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"verify", "--trials", "0"}).code, 2);
}

TEST_F(CliTest, GaussExportThenRepRoundTrip) {
  ASSERT_EQ(run({"gauss-export", "--k", "2", "--H", "0.5", "--nr", "21", "--nt", "21", "--out", path("g.json")}).code,
            0);
  const CliRun r = run({"rep", "--gauss", path("g.json"), "--out", path("r.obj")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json rep = load("r.obj.json")["results"];
  EXPECT_LT(rep["round_trip_discrepancy"]["value"].get<double>(), 1e-5);
  EXPECT_LT(rep["loop_residual"]["value"].get<double>(), 1e-8);
  EXPECT_LT(rep["harmonic_residual"]["value"].get<double>(), 1e-6);
  EXPECT_TRUE(fs::exists(path("r.obj")));
}

TEST_F(CliTest, RepFailureModes) {
  ASSERT_EQ(run({"gauss-export", "--k", "2", "--nr", "5", "--nt", "5", "--out", path("g.json")}).code, 0);
  Json g = load("g.json");
  Json c = g;
  for (auto& n : c["nodes"]) {
    for (auto& e : n["jet"]) e = Json::array({0.0, 0.0});
    n["jet"][0] = Json::array({0.3, 0.1});
    n["g"] = Json::array({0.3, 0.1});
  }
  write_json(path("const.json"), c);
  const CliRun hol = run({"rep", "--gauss", path("const.json"), "--out", path("c.obj")});
  EXPECT_EQ(hol.code, 1);
  EXPECT_NE(hol.err.find("holomorphic Gauss map excluded"), std::string::npos);

  Json p = g;
  for (auto& n : p["nodes"]) n["jet"][1][0] = n["jet"][1][0].get<double>() * 1.5 + 0.1;
  write_json(path("bad.json"), p);
  const CliRun closed = run({"rep", "--gauss", path("bad.json"), "--out", path("b.obj")});
  EXPECT_EQ(closed.code, 1);
  EXPECT_NE(closed.err.find("worst cell"), std::string::npos);

  write_text(path("mal.json"), "{\"H\": ");
  EXPECT_EQ(run({"rep", "--gauss", path("mal.json"), "--out", path("m.obj")}).code, 2);
  write_text(path("shape.json"), "{\"H\": 0.5, \"grid\": {\"nu\": 2}}");
  EXPECT_EQ(run({"rep", "--gauss", path("shape.json"), "--out", path("m.obj")}).code, 2);
  EXPECT_EQ(run({"rep", "--gauss", path("missing.json"), "--out", path("m.obj")}).code, 3);
  EXPECT_EQ(run({"rep", "--gauss", path("g.json"), "--out", path("m.obj"), "--base", "9", "0"}).code, 2);
}

TEST_F(CliTest, HelpAndVersionExitZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const CliRun v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}
