#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

using eulerprod::io::json;

namespace {

const std::string kZerosPath = std::string(EULERPROD_DATA_DIR) + "/zeros100.txt";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "eulerprod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eulerprod::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args) {
  const auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, GoldenRatioPolynomialIsNotCyclotomic) {
  const auto j = run_json({"cyclotomic", "--poly", "1 - X - X^2"});
  EXPECT_EQ(j["status"], "not_cyclotomic");
  EXPECT_EQ(j["witness"]["kind"], "root");
  EXPECT_NEAR(j["witness"]["root"]["re"].get<double>(), 0.618033988749895, 1e-14);
}

TEST(Cli, CyclotomicProduct) {
  const auto j = run_json({"cyclotomic", "--poly", "1 - X^6"});
  EXPECT_EQ(j["status"], "cyclotomic");
}

TEST(Cli, ClassifyGsp6) {
  const auto j = run_json({"classify", "--preset", "gsp6", "--depth", "10", "--prime-bound", "10000"});
  EXPECT_EQ(j["caseLabel"], 4);
  EXPECT_EQ(j["beta"], "4/1");
}

TEST(Cli, DomainMembership) {
  const auto j = run_json({"domain", "--poly", "1 + (X1 + X1*X2)*X3", "--n", "2", "--point", "2,0;0.5,0"});
  EXPECT_TRUE(j["contains"].get<bool>());
  const auto k = run_json({"domain", "--poly", "1 + (X1 + X1*X2)*X3", "--n", "2", "--point", "0.5,0;10,0"});
  EXPECT_FALSE(k["contains"].get<bool>());
}

TEST(Cli, ToricCountCsv) {
  const auto r = run({"--format", "csv", "toric", "count", "--n", "2", "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"t,count", "1,1", "2,1"}));
}

TEST(Cli, GlobalOptionsAfterTheSubcommand) {
  const auto before = run({"--format", "csv", "gsp6", "coeffs", "--N", "30"});
  const auto after = run({"gsp6", "coeffs", "--N", "30", "--format", "csv"});
  ASSERT_EQ(before.code, 0) << before.err;
  EXPECT_EQ(before.out, after.out);
  EXPECT_EQ(lines(before.out), (std::vector<std::string>{"n,a_n", "1,1", "8,135", "27,1120"}));
}

TEST(Cli, ZetaEval) {
  const auto j = run_json({"zeta", "eval", "--s", "2"});
  EXPECT_NEAR(j["value"]["re"].get<double>(), 1.64493406684823, 1e-13);
  EXPECT_EQ(j["value"]["im"].get<double>(), 0.0);
}

TEST(Cli, CountsAcceptScientificAndPowerNotation) {
  EXPECT_EQ(eulerprod::cli::parse_count("1e6", "--N"), 1000000u);
  EXPECT_EQ(eulerprod::cli::parse_count("2^20", "--N"), 1u << 20);
  EXPECT_THROW(eulerprod::cli::parse_count("1.5", "--N"), eulerprod::ValidationError);
  EXPECT_THROW(eulerprod::cli::parse_count("-3", "--N"), eulerprod::ValidationError);
  const auto a = run({"goldbach", "phi2", "--s", "4", "--N", "1e3"});
  const auto b = run({"goldbach", "phi2", "--s", "4", "--N", "1000"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"zeta", "eval", "--s", "abc"}).code, 2);
  const auto pole = run({"zeta", "eval", "--s", "1"});
  EXPECT_EQ(pole.code, 2);
  EXPECT_NE(pole.err.find("error:"), std::string::npos);
  EXPECT_TRUE(pole.out.empty());
  EXPECT_EQ(run({"cyclotomic", "--poly", "1 +* X"}).code, 2);
  EXPECT_EQ(run({"cyclotomic", "--poly", "1 - X", "--preset", "gsp6"}).code, 2);
  EXPECT_EQ(run({"--format", "csv", "cyclotomic", "--poly", "1 - X"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "zeta", "eval"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RerunsAreByteIdentical) {
  const std::vector<std::string> args{"classify", "--preset", "innocent", "--depth", "10", "--prime-bound", "500"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> euler{"--threads", "1", "zeta", "euler", "--preset", "gsp6", "--s", "6,1", "--P", "1e5"};
  auto threaded = euler;
  threaded[1] = "3";
  EXPECT_EQ(run(euler).out, run(threaded).out);
}

TEST(Cli, WritesToOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "eulerprod_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run({"--out", path.string(), "zeta", "eval", "--s", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run({"zeta", "eval", "--s", "2"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, ZerosFromEnvironment) {
  const auto explicit_path = run({"independence", "--zeros", kZerosPath, "--K", "10"});
  ASSERT_EQ(explicit_path.code, 0) << explicit_path.err;
  ::setenv("BF_ZEROS", kZerosPath.c_str(), 1);
  const auto from_env = run({"independence", "--K", "10"});
  ::unsetenv("BF_ZEROS");
  EXPECT_EQ(from_env.out, explicit_path.out);
  EXPECT_EQ(run({"independence", "--K", "10"}).code, 2);
}

TEST(Cli, GoldbachResidualCsv) {
  const auto r = run({"--format", "csv", "goldbach", "sum", "--N", "1e4", "--x", "1000,10000", "--zeros", kZerosPath,
                      "--K", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].substr(0, 2), "x,");
  EXPECT_EQ(l[1].substr(0, 5), "1000,");
  EXPECT_EQ(l[2].substr(0, 6), "10000,");
}
