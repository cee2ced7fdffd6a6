#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace credence::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for --help and --version; the message is the text to print.
class InfoRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::string output_dir = "out";
  std::optional<std::uint64_t> seed;  // falls back to the config file, then 7
  std::vector<std::string> overrides;  // key=value
  std::optional<std::pair<std::size_t, std::size_t>> grid;
  std::optional<std::size_t> sims;
  std::string suite = "all";
  double threshold = 0.9;  // belief threshold for first-passage rounds
  bool defaults_only = false;  // `params default`
};

// Parses argv-style arguments (without the program name). Throws UsageError, or
// InfoRequested for --help and --version.
Invocation parse_invocation(const std::vector<std::string>& args);

// Runs a parsed invocation. Returns 0 on success, 2 on a failed validation and 1 on
// configuration problems; diagnostics go to `err`.
int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err);

// parse_invocation followed by dispatch, mapping usage problems to exit code 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace credence::cli
