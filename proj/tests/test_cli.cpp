#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quartic_sos/cli.hpp"
#include "quartic_sos/io.hpp"

namespace quartic_sos {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("quartic_sos_test_" + name);
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

const char* kTrivialCert = R"({
  "signs": [1, 1, 1],
  "forms": [[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]],
            [[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]],
            [[0,0],[0,0],[1,0],[0,0],[0,0],[0,0]]]
})";

TEST(CheckCommand, Fermat) {
  const CliRun r = run({"check", "x^4+y^4+z^4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "smooth: yes"));
  EXPECT_TRUE(has(r.out, "nonnegative: yes"));
}

TEST(CheckCommand, SingularConic) {
  const CliRun r = run({"check", "(x^2+y^2+z^2)^2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "smooth: no"));
}

TEST(CheckCommand, IndefinitePrintsCounterexample) {
  const CliRun r = run({"check", "x^4+y^4-z^4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "smooth: yes"));
  EXPECT_TRUE(has(r.out, "nonnegative: no"));
  EXPECT_TRUE(has(r.out, "counterexample: f("));
}

TEST(CheckCommand, ParseErrorsExitTwo) {
  EXPECT_EQ(run({"check", "x^3+y^4"}).code, kExitUsage);
  EXPECT_EQ(run({"check", "x^4+*"}).code, kExitUsage);
  EXPECT_EQ(run({"check"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST(CheckCommand, JsonInput) {
  const fs::path path = temp_file("form.json");
  write(path, R"({"coefficients": {"x^4": 1, "y^4": "1", "z^4": 1.0}})");
  const CliRun r = run({"check", "--json-in", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "form: x^4 + y^4 + z^4"));
  write(path, R"({"x^4": "1", "y^3": 2})");
  EXPECT_EQ(run({"check", "--json-in", path.string()}).code, kExitUsage);
  fs::remove(path);
}

TEST(DecomposeCommand, SingularExitsFour) {
  const CliRun r = run({"decompose", "(x^2+y^2+z^2)^2"});
  EXPECT_EQ(r.code, kExitHypothesis);
  EXPECT_TRUE(has(r.out, "hypothesis failed: smooth"));
  EXPECT_TRUE(has(r.out, "counts not asserted"));
  EXPECT_FALSE(has(r.out, "counts (complex"));
}

TEST(DecomposeCommand, FermatSosOnlyRoundTripsThroughVerify) {
  const fs::path json = temp_file("fermat.json");
  const CliRun r = run({"decompose", "x^4+y^4+z^4", "--sos-only", "--json", json.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "63 / 15 / 8 expected 63 / 15 / 8: pass"));
  EXPECT_TRUE(has(r.out, "certificates: 8 "));
  EXPECT_FALSE(has(r.out, "verified no"));

  std::ifstream in(json);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["certificates"].size(), 8u);
  EXPECT_EQ(j["solutions"]["points"].size(), 63u);
  EXPECT_EQ(j["solutions"]["counts"]["psd"], 8);
  EXPECT_EQ(j["pass"], true);

  const CliRun v = run({"verify", "x^4+y^4+z^4", "--cert", json.string()});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_FALSE(has(v.out, "fail"));
  fs::remove(json);
}

TEST(DecomposeCommand, IndefiniteReportsCountsAndExitsFour) {
  const CliRun r = run({"decompose", "x^4+y^4-z^4", "--restarts", "2000"});
  EXPECT_EQ(r.code, kExitHypothesis);
  EXPECT_TRUE(has(r.out, "hypothesis failed: nonnegative"));
  EXPECT_TRUE(has(r.out, "/ 0\n"));  // psd count
}

TEST(DecomposeCommand, SeedFromEnvironment) {
  const std::vector<std::string> base = {"decompose", "x^4+y^4+z^4", "--restarts", "300", "--all"};
  std::vector<std::string> explicit_seed = base;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "5"});
  const CliRun a = run(explicit_seed);
  setenv("QUARTIC_SOS_SEED", "5", 1);
  const CliRun b = run(base);
  unsetenv("QUARTIC_SOS_SEED");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST(DecomposeCommand, OutputIndependentOfThreads) {
  const std::vector<std::string> base = {"decompose", "x^4+y^4+z^4", "--restarts", "1000",
                                         "--all", "--seed", "3"};
  std::vector<std::string> one = base, three = base;
  one.insert(one.end(), {"--threads", "1"});
  three.insert(three.end(), {"--threads", "3"});
  EXPECT_EQ(run(one).out, run(three).out);
}

TEST(VerifyCommand, TrivialAndCorruptedCertificates) {
  const fs::path path = temp_file("cert.json");
  write(path, kTrivialCert);
  const CliRun ok = run({"verify", "x^4+y^4+z^4", "--cert", path.string()});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_TRUE(has(ok.out, "pass, residual 0 (exact)"));

  Json bad = Json::parse(kTrivialCert);
  bad["forms"][1][0][0] = 0.1;
  write(path, bad.dump());
  EXPECT_EQ(run({"verify", "x^4+y^4+z^4", "--cert", path.string()}).code, kExitVerifyFailed);

  write(path, "{not json");
  EXPECT_EQ(run({"verify", "x^4+y^4+z^4", "--cert", path.string()}).code, kExitUsage);
  fs::remove(path);
}

TEST(CorpusCommand, FermatOnlyAndDeterministic) {
  const CliRun a = run({"corpus", "--count", "0", "--seed", "7"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_TRUE(has(a.out, "fermat      63       15    8    pass"));
  EXPECT_FALSE(has(a.out, "random-1"));
  EXPECT_EQ(a.out, run({"corpus", "--count", "0", "--seed", "7"}).out);
}

}  // namespace
}  // namespace quartic_sos
