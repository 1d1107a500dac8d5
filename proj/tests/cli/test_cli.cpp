#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = extint::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, Normalize) {
  const Result r = run({"normalize", "--n", "100", "--p", "10", "--profile", "gaussian"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["manifest"]["subcommand"], "normalize");
  EXPECT_NEAR(j["results"]["b"].get<double>(), 258.21877371356669, 1e-9);
  EXPECT_NEAR(j["results"]["c"].get<double>(), 0.072773467141958362, 1e-12);
}

TEST(Cli, NormalizeMissingMoments) {
  EXPECT_EQ(run({"normalize", "--n", "100", "--p", "10"}).code, 2);
}

TEST(Cli, UnknownSubcommand) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, MaxDist) {
  const auto path = temp_file("extint_cli_maxdist.csv", "0,0\n3,4\n0,1\n");
  const Result r = run({"maxdist", "--input", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["results"]["max"].get<double>(), 25.0);
  EXPECT_EQ(j["results"]["argmax"], json::array({1, 2}));
  const Result root = run({"maxdist", "--input", path.string(), "--root"});
  EXPECT_DOUBLE_EQ(json::parse(root.out)["results"]["max"].get<double>(), 5.0);
}

TEST(Cli, MalformedInput) {
  const auto path = temp_file("extint_cli_bad.csv", "1,2\n3\n");
  EXPECT_EQ(run({"maxdist", "--input", path.string()}).code, 3);
  EXPECT_EQ(run({"maxdist", "--input", "/nonexistent.csv"}).code, 3);
}

TEST(Cli, TestMeans) {
  std::string csv;
  for (int i = 0; i < 10; ++i) {
    for (int l = 0; l < 100; ++l) csv += (l ? "," : "") + std::string(i == 0 ? "1.76068168616590091" : "0");
    csv += "\n";
  }
  const auto path = temp_file("extint_cli_means.csv", csv);
  const Result r = run({"test-means", "--input", path.string(), "--profile", "gaussian"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["statistic"].get<double>(), 310.0, 1e-9);
  EXPECT_NEAR(j["results"]["threshold"].get<double>(), 299.03303426333874, 1e-9);
  EXPECT_TRUE(j["results"]["reject"].get<bool>());
}

TEST(Cli, ChenStein) {
  const Result r = run({"chenstein", "--p", "4", "--marginal", "0.1", "--joint", "0.02"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["results"]["total_count_version"].get<double>(), 0.78, 1e-15);
  EXPECT_EQ(run({"chenstein", "--p", "4", "--marginal", "0", "--joint", "0"}).code, 2);
}

TEST(Cli, Oracle) {
  const Result r = run({"oracle", "orthant", "--rho", "0.5", "--t", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["results"]["probability"].get<double>(), 1.0 / 3.0, 1e-14);
}

TEST(Cli, SimulateDeterministicAcrossThreads) {
  const std::vector<std::string> base = {"--deterministic", "simulate", "gumbel", "--n", "30",
                                         "--p", "10", "--reps", "20", "--seed", "5", "--samples"};
  std::vector<std::string> four = {"--threads", "4"};
  four.insert(four.end(), base.begin(), base.end());
  const Result a = run(base);
  const Result b = run(four);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["manifest"]["master_seed"], 5);
  EXPECT_FALSE(j["manifest"].contains("runtime_seconds"));
  EXPECT_EQ(j["samples"]["normalized_max"].size(), 20u);
}

TEST(Cli, SimulateRejectsZeroReps) {
  EXPECT_EQ(run({"simulate", "gumbel", "--reps", "0"}).code, 2);
}

TEST(Cli, SimulateSampleRoundTrip) {
  const auto out = std::filesystem::temp_directory_path() / "extint_cli_sample.csv";
  const Result r = run({"simulate", "sample", "--dist", "rademacher", "--n", "5", "--p", "4",
                        "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Result m = run({"maxdist", "--input", out.string()});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(json::parse(m.out)["results"]["p"], 4);
}
