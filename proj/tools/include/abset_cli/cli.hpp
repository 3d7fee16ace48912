#pragma once

// Command-line front end: option parsing, per-subcommand runs and report
// rendering. Reports are deterministic for a fixed configuration and seed.

#include "abset/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace abset::cli {

using Json = nlohmann::ordered_json;

extern const char* const kVersion;

struct KatzOptions {
  std::string schedule = "list:32,64;256,1024";
  unsigned stages = 2;
  bool enumerate = true;
  std::string enum_cap = "1000000";
  unsigned prec = 128;
};

struct ThinOptions {
  std::string m = "10";
  std::string eps1 = "2^-40";
  unsigned long decay = 4;
  unsigned stages = 3;
  unsigned long sqrt_buffer = 3;
  unsigned long bit_budget = 1UL << 22;
  std::vector<unsigned> n0 = {1};
  std::vector<unsigned> n0_reported;  // covering runs whose checks are informational
  unsigned long samples = 100000;
  std::string orbit_range = "0:1000";
};

struct DiophOptions {
  std::string alpha = "sqrt(2)-1";
  std::string beta = "sqrt(3)-1";
  unsigned prec = 256;
  unsigned long nmax = 500;
  std::string scan = "all";
  std::string tol = "2^-64";
  std::string word = "((x y) ^ 250)";
  unsigned long orbit_points = 500;
  std::string s = "49/100", t = "2", r = "1/2";
};

struct DimOptions {
  std::string fixture = "inverse:100000";
  std::string scales = "4^-4,4^-5,4^-6,4^-7,4^-8";
  std::string windows = "1/16:1/16;1/64:1/64;1/256:1/256";
  unsigned prec = 128;
};

struct RunConfig {
  std::string subcommand;
  std::string profile = "desk";
  bool paper_faithful = false;
  std::uint64_t seed = 1;
  std::string out;  // JSON report, or the command's table when it ends in .csv
  std::string csv;  // the command's table
  bool quiet = false;
  KatzOptions katz;
  ThinOptions thin;
  DiophOptions dioph;
  DimOptions dim;
};

Json config_json(const RunConfig& cfg);

struct Outcome {
  Json results = Json::object();
  CheckList checks;
  std::string csv;
};

Outcome run_katznelson(const KatzOptions& o);
Outcome run_thin(const ThinOptions& o, bool paper_decay, std::uint64_t seed);
Outcome run_dioph(const DiophOptions& o);
Outcome run_dim(const DimOptions& o);
Outcome run_verify_all(const RunConfig& cfg);

std::string render_report(const RunConfig& cfg, const Outcome& outcome);

// Executes a parsed configuration. 0: all asserted checks passed, 2: some
// asserted check failed, 1: invalid parameters.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and runs. Usage errors return 1.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace abset::cli
