#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace uniquemax::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kNotUnique = 3,
  kInconclusive = 4,
  kNumericFailure = 5,
};

struct RunConfig {
  std::string command;
  std::string subspace_path;
  std::size_t dim = 0;
  std::vector<double> coefs;
  int resolution = 33;
  double cluster_radius = 0.0;
  double tol_gap = 1e-3;
  int budget = 10000;
  std::uint64_t seed = 0;
  int probes = 1000;
  int trials = 1;
  std::string family = "gaussians";
  std::string output_path;
  std::string format = "json";
};

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kSuccess;
  /// Usage or validation message (help text on --help).
  std::string message;
};

/// Parses and validates argv; input files are checked before returning.
ParseResult parse_args(int argc, const char* const* argv);

/// Executes a validated configuration; returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace uniquemax::cli
