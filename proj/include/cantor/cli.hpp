#pragma once

#include <string>
#include <vector>

#include "cantor/towers.hpp"

namespace cantor::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kResourceCap = 3 };

struct CommandResult {
  int exit_code = kOk;
  std::string verdict;
  std::string out;
  std::string err;
};

/// Runs one command; `args` excludes the program name.
CommandResult run(const std::vector<std::string>& args);

/// Fixed-width columns, one per tower, floors bottom-up, then a line marking
/// that phi sends every top back into the bases.
std::string render_towers(const KRSequence& seq, std::size_t level);

/// "odometer:2,3" (period), "odometer:5;2,3" (prefix;period),
/// "stationary:1,1/1,1" (rows), or a path to a JSON descriptor.
System load_system_arg(const std::string& arg);

}  // namespace cantor::cli
