#ifndef TUBELOG_CONFIG_HPP
#define TUBELOG_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tubelog/exactq.hpp"
#include "tubelog/ledger.hpp"

namespace tubelog {

struct RunConfig {
  int depth = 2;
  AlphaSchedule alpha;
  double h0 = 10.0;
  double M = 1.0;
  BigInt a_cap = BigInt(1) << 60;
  StageConfig grids;
  int t_samples = 16;
  std::map<std::string, double> tolerances;  // named; see default_config()
  std::string output_dir = "out";
  std::vector<std::string> emit = {"report", "csv", "svg", "disk-svg"};
  std::uint64_t seed = 0x7475626c6f67ULL;
};

RunConfig default_config();

// Load a JSON config file over the defaults; unknown keys are rejected.
RunConfig load_config(const std::string& path);

void validate_config(const RunConfig& cfg);

double tol(const RunConfig& cfg, const std::string& name);

}  // namespace tubelog

#endif
