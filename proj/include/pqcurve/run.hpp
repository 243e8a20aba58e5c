#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace pqcurve {

/// Exit statuses of run().
enum ExitStatus : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitNonConvergence = 3,
};

/// One CLI invocation.
struct RunConfig {
  /// torsion, solve, eigen, curve, region, verify-lb, verify-eta, probe-wmp, probe-wcp
  std::string command;
  std::filesystem::path config_path;
  std::filesystem::path out_dir = "out";
  double tol = 1e-10;
  /// Overrides the n of the parameter file when set.
  std::optional<std::size_t> n;
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  // command options
  std::size_t torsion_n = 400;       // torsion, verify-lb, verify-eta
  std::string forcing = "const:1";   // solve
  int equation = 1;                  // solve: 1 -> (s1, p), 2 -> (s2, q)
  std::size_t samples = 0;           // curve points, probe forcings (0 = command default)
  std::size_t grid = 21;             // region: grid x grid points
  std::optional<double> lambda;      // probe-*, verify-eta
  std::optional<double> mu;
  std::optional<double> lambda_min, lambda_max, mu_min, mu_max;  // curve, region
};

/// Checks the RunConfig invariants; throws ParameterError.
void validate(const RunConfig& config);

/// Executes one command and writes its JSON/CSV artifacts into out_dir.
/// Returns an ExitStatus; failures also leave error.json in out_dir and a
/// one-line JSON error record on stderr.
int run(const RunConfig& config);

}  // namespace pqcurve
