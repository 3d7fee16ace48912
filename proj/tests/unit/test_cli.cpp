#include "abset_cli/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using abset::cli::Json;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "abset");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int rc = abset::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("abset_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("usage and version") {
  CHECK(run({"--help"}).rc == 0);
  auto v = run({"--version"});
  CHECK(v.rc == 0);
  CHECK(v.out.find(abset::cli::kVersion) != std::string::npos);
  CHECK(run({}).rc == 1);
  CHECK(run({"bogus"}).rc == 1);
  CHECK(run({"dim", "--no-such-flag"}).rc == 1);
}

TEST_CASE("malformed schedule names the token") {
  auto r = run({"katznelson", "--schedule", "list:32,64;256,6x"});
  CHECK(r.rc == 1);
  CHECK(r.err.find("'6x'") != std::string::npos);
}

TEST_CASE("failed assertion exits 2 and names the check") {
  auto r = run({"thin-orbit", "--n0", "1", "--samples", "500", "--quiet"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("assertion failed:") != std::string::npos);
  CHECK(r.err.find("covering.n0_1.") != std::string::npos);
}

TEST_CASE("report layout") {
  auto r = run({"dim", "--fixture", "points:0,0.1,0.15,0.8", "--scales", "1/5,1/10", "--windows", "1/2:1/4"});
  REQUIRE(r.rc == 0);
  Json j = Json::parse(r.out);
  CHECK(j["tool"] == "abset");
  CHECK(j["version"] == abset::cli::kVersion);
  CHECK(j["config"]["subcommand"] == "dim");
  CHECK(j["config"]["dim"]["scales"] == "1/5,1/10");
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["summary"]["asserted_failed"] == 0);
}

TEST_CASE("rational dioph input stops at delta = 0") {
  auto r = run({"dioph", "--alpha", "1/4", "--beta", "1/3", "--nmax", "12", "--scan", "minima,ratio"});
  REQUIRE(r.rc == 0);
  Json j = Json::parse(r.out);
  CHECK(j["results"]["zero_at"] == 3);
  CHECK(j["results"]["integer_ratio"]["early_stop"] == 3);
  CHECK(run({"dioph", "--scan", "nope"}).rc == 1);
  CHECK(run({"dioph", "--prec", "64"}).rc == 1);
  CHECK(run({"dioph", "--s", "1/2"}).rc == 1);
}

TEST_CASE("csv routing") {
  fs::path d = scratch("csv");
  auto r = run({"katznelson", "--schedule", "list:2,3", "--stages", "1", "--out", (d / "k.csv").string()});
  REQUIRE(r.rc == 0);
  std::string csv = slurp(d / "k.csv");
  CHECK(csv.rfind("scale_num,scale_den,count,log_ratio_decimal\n", 0) == 0);
  CHECK(Json::parse(r.out)["summary"]["passed"] == true);

  auto q = run({"dioph", "--alpha", "2/7", "--beta", "3/7", "--nmax", "2", "--scan", "minima", "--quiet", "--out",
                (d / "report.json").string(), "--csv", (d / "m.csv").string()});
  REQUIRE(q.rc == 0);
  CHECK(q.out.empty());
  CHECK(slurp(d / "m.csv") == "n,a,b,delta_decimal,minimal\n1,1,0,2.8571428571428571e-01,1\n2,0,2,1.4285714285714286e-01,1\n");
  CHECK(Json::parse(slurp(d / "report.json"))["config"]["out"] == (d / "report.json").string());
}

TEST_CASE("same configuration gives identical bytes") {
  std::vector<std::string> args{"katznelson", "--seed", "7"};
  auto a = run(args), b = run(args);
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);
  std::vector<std::string> t{"thin-orbit", "--n0", "2", "--samples", "300", "--seed", "99", "--orbit-range", "0:5"};
  auto c = run(t), e = run(t);
  REQUIRE(c.rc == 0);
  CHECK(c.out == e.out);
  Json j = Json::parse(c.out);
  CHECK(j["config"]["seed"] == "99");
  CHECK(j["results"]["covering"][0]["seed"] == "99");
}

TEST_CASE("paper-faithful switches") {
  auto k = run({"katznelson", "--paper-faithful", "--quiet"});
  CHECK(k.rc == 0);
  CHECK(k.err.find("warning") != std::string::npos);
  CHECK(run({"verify-all", "--paper-faithful"}).rc == 1);
  CHECK(run({"verify-all", "--profile", "huge"}).rc == 1);
}

TEST_CASE("config file") {
  fs::path d = scratch("cfg");
  std::ofstream(d / "run.ini") << "seed=5\n[dim]\nfixture=\"grid:10\"\nscales=\"1/10\"\nwindows=\"1/2:1/5\"\n";
  auto r = run({"--config", (d / "run.ini").string(), "dim"});
  REQUIRE(r.rc == 0);
  Json j = Json::parse(r.out);
  CHECK(j["config"]["seed"] == "5");
  CHECK(j["config"]["dim"]["fixture"] == "grid:10");
}
