#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace accmine::subprocess {

struct RunResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;  // stdout and stderr, interleaved
  std::chrono::milliseconds duration{0};
};

// Runs argv[0] with the given arguments, capturing combined stdout/stderr.
// Kills the process after timeout_seconds (result marked timed_out).
RunResult run_process(const std::vector<std::string>& argv, double timeout_seconds);

}  // namespace accmine::subprocess
