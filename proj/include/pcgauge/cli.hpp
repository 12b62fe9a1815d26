#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcgauge/io.hpp"

namespace pcgauge::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kInconsistent = 1, kInvalid = 2 };

struct CommandConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::optional<std::string> group;
  double tol = 1e-9;
  double epsilon = 1.0 / 3.0;
  std::string method;  ///< empty: abelian for rplus/u1, riemannian otherwise
  std::string observable;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::size_t> random_pc;
  std::optional<std::string> loop;  ///< "0,1,2,0"
  std::size_t max_iter = 10000;
  std::optional<std::string> out;
  std::optional<std::string> histogram;
  std::string format = "json";
};

struct CommandOutcome {
  int exit_code = kOk;
  json report;
};

CommandOutcome cmd_check(const CommandConfig& cfg);
CommandOutcome cmd_consistencize(const CommandConfig& cfg);
CommandOutcome cmd_holonomy(const CommandConfig& cfg);
CommandOutcome cmd_montecarlo(const CommandConfig& cfg);

/// Builds a complex from a JSON file path or a generator
/// "simplex:<n>" / "grid:<m>".
SimplicialComplex2 load_complex(const std::string& source);

/// Parses argv, dispatches, prints the report. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcgauge::cli
