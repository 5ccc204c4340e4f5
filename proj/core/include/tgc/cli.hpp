#pragma once

#include "tgc/truncated.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tgc {

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;   // a verified-false mathematical check
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBudgetExceeded = 3;

/// Parsed command-line configuration; validated against the module
/// preconditions before dispatch.
struct RunConfig {
  std::string command;

  int q = 0;
  int r = 0;
  int n = 2;
  std::vector<std::vector<int>> A;  // A[j-1]: diagonal of A_j
  std::vector<int> chi;

  int max_r = 6;
  int max_j = 7;  // upper bound for the partition-formula grid
  int i = 0;      // optional restriction of the lemma grid (0 = all)
  int j = 0;

  int p = 0;  // exp-sum
  int N = 0;

  int trials = 100;
  std::uint64_t seed = 20260809;
  std::uint64_t budget = kDefaultBudget;
  std::string cache_dir;  // empty: TGC_CACHE_DIR, else no cache
  std::string report_path;
  bool allow_nongeneric = false;
};

int cmd_verify_lemmas(const RunConfig& config);
int cmd_verify_theorem(const RunConfig& config);
int cmd_verify_stages(const RunConfig& config);
int cmd_exp_sum(const RunConfig& config);
int cmd_cross_validate(const RunConfig& config);

/// Routes by config.command; unknown commands are a config error.
int dispatch(const RunConfig& config);

}  // namespace tgc
