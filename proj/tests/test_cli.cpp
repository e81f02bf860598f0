#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "suites.hpp"

namespace twfock::cli {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "twfock");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("twfock_cli_test_" + name);
}

TEST(CliVerify, StrictSuitePasses) {
  const Invocation r = run({"verify", "--suite", "sp-exact", "--q-order", "20", "--t-band", "20"});
  EXPECT_EQ(r.code, kPass) << r.out << r.err;
  EXPECT_NE(r.out.find("sp-exact: 16/16 passed"), std::string::npos) << r.out;
  EXPECT_NE(r.err.find("finished in"), std::string::npos);
}

TEST(CliVerify, DifferenceEquationsAtGivenPoint) {
  const Invocation r = run({"verify", "--suite", "numeric-diff", "--q", "0.2+0.05i", "--t", "1.4", "--t",
                     "0.9+0.28i", "--tol", "1e-8"});
  EXPECT_EQ(r.code, kPass) << r.out << r.err;
  EXPECT_EQ(lines(r.out).size(), 4u) << r.out;
}

TEST(CliVerify, UnknownSuiteIsAUsageError) {
  const Invocation r = run({"verify", "--suite", "bogus"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("unknown suite 'bogus'"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliVerify, InvalidParametersAreUsageErrors) {
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"verify"}).code, kUsage);
  EXPECT_EQ(run({"verify", "--suite", "sp-exact", "--q-order", "-1"}).code, kUsage);
  EXPECT_EQ(run({"verify", "--suite", "numeric-1pt", "--tol", "0"}).code, kUsage);
  EXPECT_EQ(run({"verify", "--suite", "sp-exact", "--format", "xml"}).code, kUsage);
  EXPECT_EQ(run({"verify", "--suite", "numeric-diff", "--q", "zero"}).code, kUsage);
  EXPECT_EQ(run({"verify", "--suite", "sp-exact", "--frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"--help"}).code, kPass);
}

TEST(CliVerify, FailingSuiteNamesIdentityAndMonomial) {
  const Invocation r = run({"verify", "--suite", "osp-exact", "--q-order", "8"});
  EXPECT_EQ(r.code, kFail);
  EXPECT_NE(r.out.find("FAIL  row-sum-lemma [kind=odd-strict, k=1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("first mismatch at qh: lhs=1 rhs=0"), std::string::npos) << r.out;
}

TEST(CliVerify, ExactOutputIsByteIdentical) {
  for (const char* format : {"text", "json", "csv"}) {
    const Invocation a = run({"verify", "--suite", "super-exact", "--q-order", "10", "--format", format});
    const Invocation b = run({"verify", "--suite", "super-exact", "--q-order", "10", "--format", format});
    EXPECT_EQ(a.code, kPass);
    EXPECT_EQ(a.out, b.out) << format;
  }
}

TEST(CliVerify, JsonReports) {
  const Invocation r = run({"verify", "--suite", "shift-exact", "--q-order", "6", "--format", "json"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["suite"], "shift-exact");
  EXPECT_EQ(j["pass"], true);
  ASSERT_EQ(j["reports"].size(), 2u);
  for (const auto& rep : j["reports"]) {
    EXPECT_EQ(rep["identity"], "quasi-periodicity-exact");
    EXPECT_EQ(rep["pass"], true);
    EXPECT_TRUE(rep.contains("params"));
  }
}

TEST(CliVerify, CsvReports) {
  const Invocation r = run({"verify", "--suite", "numeric-theta", "--format", "csv"});
  EXPECT_EQ(r.code, kFail);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].substr(0, 16), "identity,params,");
  EXPECT_EQ(rows[3].substr(0, 22), "b-shift-product,grid=5");
}

TEST(CliVerify, AllSubsumesEverySuite) {
  const Invocation all = run({"verify", "--suite", "all", "--q-order", "6", "--z-order", "4"});
  EXPECT_EQ(all.code, kFail);
  const std::string& text = all.out;
  std::size_t total = 0;
  for (const auto& suite : suite_registry()) {
    const Invocation one = run({"verify", "--suite", suite.name, "--q-order", "6", "--z-order", "4"});
    auto ls = lines(one.out);
    ls.pop_back();  // summary line
    total += ls.size();
    for (const auto& l : ls) EXPECT_NE(text.find(l + "\n"), std::string::npos) << l;
  }
  EXPECT_EQ(lines(text).size(), total + 1);
}

TEST(CliVerify, OutputFile) {
  const auto path = scratch("report.json");
  const Invocation r = run({"verify", "--suite", "shift-exact", "--q-order", "4", "--format", "json",
                     "--output", path.string()});
  EXPECT_EQ(r.code, kPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["suite"], "shift-exact");
  std::filesystem::remove(path);
}

TEST(CliVerify, ConfigFile) {
  const auto path = scratch("config.ini");
  {
    std::ofstream f(path);
    f << "[verify]\nsuite=\"shift-exact\"\nq-order=5\n";
  }
  const Invocation r = run({"--config", path.string(), "verify"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("q-order=5"), std::string::npos) << r.out;
  // Command-line flags win over the file.
  const Invocation o = run({"--config", path.string(), "verify", "--q-order", "3"});
  EXPECT_NE(o.out.find("q-order=3"), std::string::npos) << o.out;
  std::filesystem::remove(path);
}

TEST(CliSeries, WorkedCoefficientRows) {
  const Invocation r = run({"series", "--target", "nr", "--q-order", "3", "--format", "csv"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows.front(), "q,t,z,num,den");
  for (const char* row : {"3,3,0,1,1", "3,2,0,1,1", "3,-1,0,-1,1"}) {
    EXPECT_NE(std::find(rows.begin(), rows.end(), row), rows.end()) << row;
  }
}

TEST(CliSeries, EulerSidesAgree) {
  const Invocation lhs = run({"series", "--target", "euler-lhs", "--q-order", "3"});
  const Invocation rhs = run({"series", "--target", "euler-rhs", "--q-order", "3"});
  ASSERT_EQ(lhs.code, kPass);
  ASSERT_EQ(rhs.code, kPass);
  const auto a = nlohmann::json::parse(lhs.out);
  const auto b = nlohmann::json::parse(rhs.out);
  EXPECT_FALSE(a["terms"].empty());
  EXPECT_EQ(a["terms"], b["terms"]);
}

TEST(CliSeries, EmptyWindowAndErrors) {
  const Invocation r = run({"series", "--target", "nr", "--q-order", "0"});
  ASSERT_EQ(r.code, kPass);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["terms"].empty());
  EXPECT_EQ(run({"series", "--target", "bogus"}).code, kUsage);
  EXPECT_EQ(run({"series"}).code, kUsage);
}

TEST(CliPartitions, CountsAndListing) {
  const Invocation c = run({"partitions", "--kind", "strict", "--max-weight", "5", "--count"});
  EXPECT_EQ(c.code, kPass);
  EXPECT_EQ(c.out, "0,1\n1,1\n2,1\n3,2\n4,2\n5,3\n");
  const Invocation l = run({"partitions", "--kind", "odd-strict", "--max-weight", "4"});
  EXPECT_EQ(l.out, "\n1\n3\n3,1\n");
  EXPECT_EQ(run({"partitions", "--kind", "even"}).code, kUsage);
}

TEST(CliEval, Values) {
  const Invocation r = run({"eval", "--func", "R", "--q", "0", "--t", "2"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_EQ(r.out, "1.5\n");
  const Invocation th = run({"eval", "--func", "theta", "--j", "0", "--q", "0.1", "--t", "1"});
  EXPECT_EQ(th.code, kPass) << th.err;
  EXPECT_NEAR(std::stod(th.out), 1.2002, 1e-8);
  const Invocation b = run({"eval", "--func", "B", "--q", "0.1", "--t", "1.3", "--format", "json"});
  EXPECT_EQ(b.code, kPass) << b.err;
  EXPECT_TRUE(nlohmann::json::parse(b.out).contains("value"));
}

TEST(CliEval, Errors) {
  EXPECT_EQ(run({"eval", "--func", "R", "--q", "0.5", "--t", "9"}).code, kFail);
  EXPECT_EQ(run({"eval", "--func", "R", "--q", "0.5+"}).code, kUsage);
  EXPECT_EQ(run({"eval", "--func", "R", "--t", "2"}).code, kUsage);
  EXPECT_EQ(run({"eval", "--func", "Q", "--q", "0.1", "--t", "2"}).code, kUsage);
  EXPECT_EQ(run({"eval", "--func", "theta", "--q", "0.1"}).code, kUsage);
}

}  // namespace
}  // namespace twfock::cli
