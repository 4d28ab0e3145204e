#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cweig {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitConvergence = 3,
  kExitVerifyFailed = 4,
};

/// A cell of an output table: number, integer, text or missing.
using Cell = std::variant<std::monostate, double, long long, std::string>;

/// Machine-readable result of one invocation. CSV carries the rows only;
/// JSON carries {"params", "rows", "meta"}.
struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;
};

std::string to_csv(const OutputRecord& record);
std::string to_json(const OutputRecord& record);

/// Default tolerance: CWEIG_TOL when set and parseable, else 1e-12.
double default_tolerance();

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& content);

/// Runs the CLI on argv (argv[0] is the program name).
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cweig
