#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prodset/memory.hpp"
#include "prodset/report.hpp"

namespace prodset::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kCapacity = 3,
};

// Invalid flag combination or value; the message names the flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Union of the flags of every subcommand. Each subcommand reads only the
// fields it documents.
struct CommandOptions {
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> g;
  std::optional<double> lambda;
  std::optional<std::uint64_t> t;
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> dyadic_t;  // --T
  std::optional<int> k;
  double slack = 2.0;
  std::string set_path;
  std::string a_path;
  std::string b_path;
  std::string out_set_path;
  bool general = false;
  bool no_predictor = false;
  ExecutionConfig exec;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"theta",  "params", "mtable", "prodset", "build-b",
                                              "build-b-pp", "energy", "thin",   "build-a", "deficit",
                                              "tilted", "hr-ratio", "d1"};
  return names;
}

// Runs one subcommand and returns its report row (wall time not set).
// Throws UsageError, DomainError, RangeError or CapacityError.
ExperimentReport run_command(const std::string& name, const CommandOptions& options);

// One grid axis: "n=2^4..2^9 step x2", "g=5,20,80", "x=1000..5000 step +1000".
struct Grid {
  std::string key;
  std::vector<std::string> values;
};
Grid parse_grid(const std::string& spec);
// Sets the option named by key from its textual value; throws UsageError.
void apply_option(CommandOptions& options, const std::string& key, const std::string& value);

// Full command line. Writes CSV to `out` (or --out), diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace prodset::cli
