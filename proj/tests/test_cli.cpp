#include <gtest/gtest.h>

#include <sstream>

#include "entanglia/channels.hpp"
#include "entanglia/sknorm.hpp"
#include "entanglia_cli/cli.hpp"
#include "entanglia_cli/report.hpp"

using namespace entanglia;
using entanglia::cli::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
  json report;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "", bool timing = false) {
  std::istringstream in(input);
  std::ostringstream out, err;
  cli::Environment env;
  env.timing = timing;
  CliRun r;
  r.code = cli::run(args, in, out, err, env);
  r.out = out.str();
  r.err = err.str();
  if (!r.out.empty() && r.out.front() == '{') r.report = json::parse(r.out);
  return r;
}

std::string matrix_input(const CMat& X, int m, int n) { return cli::dump_json(cli::matrix_file_json(X, m, n)); }

std::string vector_input(const CVec& v, int m, int n) {
  json j = cli::vector_json(v);
  j["m"] = m;
  j["n"] = n;
  return cli::dump_json(j);
}

CMat sample_state() {
  CMat r(4, 4);
  r << 5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  return r / 8.0;
}

CMat swap2() {
  CMat S = CMat::Zero(4, 4);
  S(0, 0) = S(3, 3) = S(1, 2) = S(2, 1) = 1;
  return S;
}

}  // namespace

TEST(Cli, SchmidtOfMaximallyEntangled) {
  const CliRun r = run({"schmidt", "-"}, vector_input(max_entangled(2), 2, 2));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.report["results"]["coefficients"][0].get<double>(), 0.70710678, 1e-8);
  EXPECT_NEAR(r.report["results"]["coefficients"][1].get<double>(), 0.70710678, 1e-8);
  EXPECT_EQ(r.report["command"]["name"], "schmidt");
  EXPECT_TRUE(r.report.contains("inputs_digest"));
  EXPECT_TRUE(r.report.contains("timing"));
  EXPECT_TRUE(r.report.contains("seed"));
}

TEST(Cli, DpsOnExampleState) {
  const CliRun r = run({"op-norm", "--k", "1", "--method", "dps", "--s", "1", "--ppt"}, matrix_input(sample_state(), 2, 2));
  ASSERT_EQ(r.code, 0) << r.err;
  const double v = r.report["results"]["upper"].get<double>();
  EXPECT_NEAR(v, (3 + 2 * std::sqrt(2.0)) / 8, 1e-9);
  const CMat W = cli::matrix_from_json(r.report["results"]["certificate"]);
  EXPECT_NEAR(lambda_max(CMat(sample_state() + partial_transpose(W, 2, 2))), v, 1e-9);
}

TEST(Cli, SeesawWitnessReproducesValue) {
  const CliRun r = run({"op-norm", "--method", "seesaw", "--seed", "3"}, matrix_input(sample_state(), 2, 2));
  ASSERT_EQ(r.code, 0) << r.err;
  const CVec w = cli::vector_from_json(r.report["results"]["witness"]);
  EXPECT_NEAR((w.adjoint() * sample_state() * w)(0, 0).real(), r.report["results"]["lower"].get<double>(), 1e-9);
  EXPECT_EQ(r.report["seed"].get<std::uint64_t>(), 3u);
}

TEST(Cli, AllMethodsInterval) {
  const CliRun r = run({"op-norm", "--k", "1"}, matrix_input(werner_state(3, -0.5), 3, 3));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.report["results"]["lower"].get<double>(), 1.0 / 7, 1e-6);
  EXPECT_NEAR(r.report["results"]["upper"].get<double>(), 1.0 / 7, 1e-6);
  EXPECT_FALSE(r.report["methods"].empty());
}

TEST(Cli, WernerClosedFormAndSdp) {
  const CliRun r = run({"werner", "--n", "3", "--alpha", "0.5", "--k", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.report["results"]["closed_form"].get<double>(), 2.0 / 15, 1e-12);
  EXPECT_NEAR(r.report["results"]["sdp"][0]["upper"].get<double>(), 0.1333, 1e-4);
  EXPECT_NEAR(r.report["results"]["sdp"][1]["upper"].get<double>(), 0.2, 1e-6);
}

TEST(Cli, BlockPositiveVerdictExitCode) {
  const CliRun no = run({"block-positive", "--k", "2"}, matrix_input(swap2(), 2, 2));
  EXPECT_EQ(no.code, cli::kVerdict);
  EXPECT_EQ(no.report["results"]["verdict"], "NotKBlockPositive");
  const CVec w = cli::vector_from_json(no.report["results"]["witness"]);
  EXPECT_NEAR((w.adjoint() * swap2() * w)(0, 0).real(), no.report["results"]["witness_value"].get<double>(), 1e-12);
  const CliRun yes = run({"block-positive", "--k", "1", "--rule", "spectral"}, matrix_input(swap2(), 2, 2));
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.report["results"]["verdict"], "KBlockPositive");
}

TEST(Cli, BoundEntanglement) {
  const CliRun a = run({"bound-ent", "--n", "8", "--r", "2", "--alpha", "2/7"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.report["results"]["certification"]["status"], "certified");
  EXPECT_EQ(a.report["results"]["certification"]["margin_exact"], "0");
  EXPECT_EQ(a.report["results"]["threshold_exact"], "2/7");
  const CliRun b = run({"bound-ent", "--n", "4", "--r", "2", "--alpha", "0.2"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.report["results"]["certification"]["status"], "theorem-inapplicable");
  EXPECT_EQ(b.report["results"]["verification"]["rank"].get<long long>(), 30);
  EXPECT_EQ(run({"bound-ent", "--n", "4", "--r", "2", "--alpha", "x/7"}).code, cli::kInputError);
}

TEST(Cli, TestsAndChannels) {
  const CMat psi = max_entangled(2) * max_entangled(2).adjoint();
  const CliRun re = run({"realign-test", "--k", "1"}, matrix_input(psi, 2, 2));
  EXPECT_EQ(re.code, cli::kVerdict);
  EXPECT_NEAR(re.report["results"]["value"].get<double>(), 2.0, 1e-10);
  EXPECT_EQ(run({"reduction-test", "--k", "1"}, matrix_input(psi, 2, 2)).code, cli::kVerdict);
  EXPECT_EQ(run({"reduction-test", "--k", "2"}, matrix_input(psi, 2, 2)).code, 0);

  const Channel dep = depolarizing_channel(2, 0.1);
  const CliRun gf = run({"gate-fidelity"}, matrix_input(dep.choi.mat, 2, 2));
  ASSERT_EQ(gf.code, 0) << gf.err;
  EXPECT_NEAR(gf.report["results"]["lower"].get<double>(), 0.95, 1e-6);
  const CliRun tp = run({"channel", "--check-tp"}, matrix_input(dep.choi.mat, 2, 2));
  EXPECT_TRUE(tp.report["results"]["trace_preserving"].get<bool>());
  const CliRun comp = run({"channel", "--complementary"}, matrix_input(dep.choi.mat, 2, 2));
  ASSERT_EQ(comp.code, 0) << comp.err;
  const CliRun kr = run({"channel", "--to-kraus"}, matrix_input(dep.choi.mat, 2, 2));
  ASSERT_EQ(kr.code, 0);
  json kin;
  kin["kraus"] = kr.report["results"]["left"];
  const CliRun back = run({"channel", "--to-choi"}, cli::dump_json(kin));
  ASSERT_EQ(back.code, 0) << back.err;
  EXPECT_NEAR((cli::matrix_from_json(back.report["results"]["choi"]) - dep.choi.mat).norm(), 0.0, 1e-9);
  const CliRun pur = run({"output-purity", "--k", "1"}, matrix_input(depolarizing(2).choi.mat, 2, 2));
  EXPECT_NEAR(pur.report["results"]["upper"].get<double>(), 0.5, 1e-9);
}

TEST(Cli, GeometricMeasureWithDims) {
  json j;
  j["dims"] = {2, 2, 2};
  j["re"] = {std::sqrt(0.5), 0, 0, 0, 0, 0, 0, std::sqrt(0.5)};
  const CliRun r = run({"geom-measure"}, cli::dump_json(j));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.report["results"]["upper"].get<double>(), 0.5, 1e-6);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"schmidt"}, "{not json").code, cli::kInputError);
  EXPECT_EQ(run({"schmidt"}, R"({"re": [1, 0, 0]})").code, cli::kInputError);
  EXPECT_EQ(run({"schmidt"}, R"({"m": 2, "n": 2, "re": [1, 0, 0]})").code, cli::kInputError);
  EXPECT_EQ(run({"op-norm", "--method", "nope"}, "").code, cli::kInputError);
  EXPECT_EQ(run({"nosuch"}).code, cli::kInputError);
  EXPECT_EQ(run({"op-norm", "/nonexistent/file.json"}).code, cli::kInputError);
  EXPECT_EQ(run({"op-norm", "--k", "3"}, matrix_input(sample_state(), 2, 2)).code, cli::kInputError);
  const CliRun e = run({"werner", "--n", "3", "--alpha", "2"});
  EXPECT_EQ(e.code, cli::kInputError);
  EXPECT_FALSE(e.err.empty());
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DeterministicReports) {
  const std::string in = matrix_input(werner_state(3, 0.3), 3, 3);
  const CliRun a = run({"op-norm", "--k", "1", "--seed", "9"}, in);
  const CliRun b = run({"op-norm", "--k", "1", "--seed", "9", "--threads", "3"}, in);
  EXPECT_EQ(a.report["results"], b.report["results"]);
  const CliRun c = run({"op-norm", "--k", "1", "--seed", "9"}, in);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, EnvironmentSeed) {
  std::istringstream in(matrix_input(sample_state(), 2, 2));
  std::ostringstream out, err;
  cli::Environment env;
  env.seed = "41";
  ASSERT_EQ(cli::run({"op-norm", "--method", "seesaw"}, in, out, err, env), 0);
  EXPECT_EQ(json::parse(out.str())["seed"].get<int>(), 41);
}

TEST(Report, SerializationRoundTrip) {
  const double values[] = {0.1, 1.0 / 3, 1e-300, 123456789.123456789, -2.5e17, 0.7285533905932737};
  json j;
  for (double v : values) j["x"].push_back(v);
  const json back = json::parse(cli::dump_json(j));
  for (std::size_t i = 0; i < std::size(values); ++i) {
    EXPECT_EQ(back["x"][i].get<double>(), values[i]);
    EXPECT_TRUE(back["x"][i].is_number_float());
  }
  EXPECT_NE(cli::dump_json(json(0.1)).find("0.10000000000000001"), std::string::npos);
  EXPECT_EQ(cli::dump_json(json(1.0)), "1.0");
  EXPECT_EQ(cli::digest_string(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(cli::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Report, MatrixFileRoundTrip) {
  CMat X(2, 2);
  X << cplx(1, 2), cplx(0.1, -0.3), cplx(1.0 / 3, 0), cplx(0, 1e-17);
  const cli::MatrixFile f = cli::parse_matrix_text(cli::dump_json(cli::matrix_file_json(X, 1, 2)));
  EXPECT_EQ(f.mat, X);
  EXPECT_EQ(*f.m, 1);
  EXPECT_EQ(*f.n, 2);
}
