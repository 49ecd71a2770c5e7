#pragma once

#include <span>
#include <vector>

#include "floquet3/coeffs.hpp"
#include "floquet3/spectrum.hpp"

namespace floquet3 {

/// max over lambda != 0 of |T0(lambda) - (3 - i lambda/2 - lambda^2/240)| / |lambda|^3.
/// Requires |lambda| <= 0.1 for every entry.
double t0_expansion_check(std::span<const double> lambdas);

/// True when lambda lies in one of the disks |lambda - i (2 pi n / sqrt3)^3| <= 1
/// around the double zeros of rho0.
bool in_excluded_disk(cplx lambda);

/// max over the grid of |rho(lambda, eps) / rho0(lambda) - 1|.
/// Throws InvalidInput for grid points inside an excluded disk.
double rho_ratio_check(const PeriodicCoefficients& c, double epsilon,
                       std::span<const cplx> lambda_grid,
                       const IntegratorOptions& opts = {.tol = 1e-13});

struct SweepRow {
  double epsilon = 0.0;
  bool found = false;
  double r_minus = 0.0;
  double r_plus = 0.0;
  double width = 0.0;
  double width_over_eps3 = 0.0;
};

/// One find_band3 per coupling (rows computed concurrently, returned in
/// input order). eps_list must be positive and strictly decreasing.
std::vector<SweepRow> width_sweep(const PeriodicCoefficients& c,
                                  std::span<const double> eps_list,
                                  const BandOptions& opts = {});

struct FitResult {
  /// Slope of log(width) against log(eps).
  double exponent = 0.0;
  /// Richardson-extrapolated limit of width / eps^3 (smallest-eps pair).
  double constant = 0.0;
  /// e^{intercept} of the log-log fit.
  double prefactor = 0.0;
  /// max_i |prefactor eps_i^exponent / width_i - 1|.
  double residual = 0.0;
  /// Richardson estimates for consecutive pairs, largest eps first.
  std::vector<double> richardson;
  std::size_t rows_used = 0;
};

/// Least-squares power law through the rows with found = true (at least 3).
FitResult fit_width_law(std::span<const SweepRow> rows);

}  // namespace floquet3
