#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pwf/io.hpp"

namespace pwf {

/// Rejected configuration or command line; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string family = "haar_cos";
  std::string mask_file;  // takes precedence over family when set
  double transition = 1.0;
  int table_jmax = 10;
  int j_min = 4;
  int j_max = 7;
  int K = 1;
  std::optional<std::int64_t> N;  // per-command default when unset
  double span = 4.0;
  int G = 0;
  double tol = 1e-10;
  std::string out = "out";
};

/// Throws UsageError on any violated invariant.
void check_config(const RunConfig& config);

RunConfig config_from_json(const json& doc, RunConfig base = {});
json to_json(const RunConfig& config);

/// FNV-1a over the compact JSON form of the config, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// The table the config points at. Built-in tables span levels 2 .. max(table_jmax, j_max + 1).
PeriodicMaskTable load_table(const RunConfig& config);

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

int cmd_validate(const RunConfig& config);
int cmd_lift(const RunConfig& config);
int cmd_build(const RunConfig& config);
int cmd_periodize(const RunConfig& config);
int cmd_uc(const RunConfig& config);
int cmd_experiment(const RunConfig& config);

/// Parses argv, dispatches the command and maps errors to exit codes.
int run_cli(int argc, char** argv);

}  // namespace pwf
