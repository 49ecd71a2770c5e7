#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace floquet3::cli {

enum class OutputFormat { Csv, Text };

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitVerification = 3,
};

struct RunConfig {
  std::string spec_path;
  double epsilon = 0.1;
  std::vector<double> eps_list = {0.16, 0.08, 0.04, 0.02};
  double window = 1.0;
  double lambda_lo = -1.0;
  double lambda_hi = 1.0;
  int points = 201;
  /// Integrator tolerance.
  double tol = 1e-12;
  /// Bracket length at which band endpoints are accepted.
  double tol_lambda = 1e-15;
  /// Empty means standard output.
  std::string out_path;
  OutputFormat format = OutputFormat::Text;
};

/// Parses "lo:hi". Throws InvalidInput on malformed or unordered input.
void parse_lambda_range(const std::string& text, double& lo, double& hi);

/// Parses "a,b,c". Throws InvalidInput on malformed input.
std::vector<double> parse_real_list(const std::string& text);

/// printf "%.12e" in the C locale.
std::string format_real(double x);

/// Shortest-exponent scientific notation: 4.2217e-3 rather than 4.2217e-03.
std::string format_short(double x, int digits = 4);

// Each command writes its report to `out` and diagnostics to `err` and
// returns an ExitCode. Library exceptions are mapped by run_guarded.
int cmd_h(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rho_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_band(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs `name` with cfg, writing to cfg.out_path (or `out` when empty).
/// SpecParseError / InvalidInput -> 1, NumericalFailure -> 2.
int run_guarded(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace floquet3::cli
