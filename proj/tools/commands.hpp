#pragma once

// Experiment runner behind the xc command line. A run is a pure function of
// its config: the same config yields the same report bytes.

#include <string>
#include <vector>

#include "xc/report.hpp"

namespace xc::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsageError = 2 };

struct Outcome {
  int exit_code = kOk;
  json report;
  std::string summary;
};

/// Every "group action" pair, e.g. {"gadget", "verify"}.
const std::vector<std::pair<std::string, std::string>>& commands();

/// Fills per-command defaults so the stored config is fully explicit.
json complete_config(json config);

/// Runs config["command"]. Throws Error / ResourceError on bad input.
Outcome run(const json& config);

/// Canonical report bytes.
std::string serialize(const json& report);

/// Reruns the embedded config and compares bytes with `report_text`.
struct ReplayResult {
  bool identical = false;
  std::size_t first_difference = 0;
  Outcome rerun;
};
ReplayResult replay(const std::string& report_text);

}  // namespace xc::cli
