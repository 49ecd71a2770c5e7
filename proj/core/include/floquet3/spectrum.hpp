#pragma once

#include <array>
#include <vector>

#include "floquet3/coeffs.hpp"
#include "floquet3/monodromy.hpp"
#include "floquet3/error.hpp"
#include "floquet3/multiplier.hpp"

namespace floquet3 {

/// Spectral multiplicity at a real point: 1, 3, or undecided at a zero of rho.
enum class Multiplicity { Boundary = 0, One = 1, Three = 3 };

const char* to_string(Multiplicity m);

/// Relative zero threshold for rho, measured against discriminant_scale.
inline constexpr double kRhoZeroTol = 1e-9;

/// rho(lambda, eps) at real lambda, with its term scale.
DiscriminantSample rho_at(const PeriodicCoefficients& c, double lambda,
                          double epsilon, const IntegratorOptions& opts = {});

/// Sign rule: rho < 0 means multiplicity 3, rho > 0 multiplicity 1.
Multiplicity classify_rho(const DiscriminantSample& s, double rel_tol = kRhoZeroTol);

Multiplicity multiplicity_at(const PeriodicCoefficients& c, double lambda,
                             double epsilon, const IntegratorOptions& opts = {});

/// n_points uniformly spaced samples of rho on [lambda_lo, lambda_hi],
/// in increasing lambda; evaluated in parallel.
std::vector<DiscriminantSample> scan_rho(const PeriodicCoefficients& c,
                                         double epsilon, double lambda_lo,
                                         double lambda_hi, int n_points,
                                         const IntegratorOptions& opts = {});

struct BandOptions {
  /// Search interval is [-window, window].
  double window = 1.0;
  /// Endpoint brackets are refined until shorter than this.
  double tol_lambda = 1e-15;
  int coarse_points = 64;
  int fine_points = 64;
  int max_iterations = 200;
  IntegratorOptions integrator{.tol = 1e-12};
};

/// The multiplicity-3 interval (r_minus, r_plus) at a given coupling.
struct BandReport {
  double epsilon = 0.0;
  double h_value = 0.0;
  bool found = false;
  double r_minus = 0.0;
  double r_plus = 0.0;
  double width = 0.0;
  /// |rho| at the refined endpoints.
  std::array<double, 2> endpoint_residuals{};
  /// |d rho / d lambda| across the final brackets.
  std::array<double, 2> endpoint_slopes{};
  /// Centre of the fine grid (refined from 2 b2 eps^2 + 2 b3 eps^3).
  double center = 0.0;
  int sign_changes = 0;
  int evaluations = 0;
};

/// Thrown when the window holds a sign pattern other than none or +,-,+.
class UnexpectedZeroCount : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Locates the zeros of rho(., eps) bounding the negative region near 0.
/// A 64-point grid over the window is merged with a fine grid of half-width
/// 10 |h|^{3/2} |eps|^3 around the estimated band centre; each sign change
/// is refined with TOMS 748 (bisection if that stalls).
BandReport find_band3(const PeriodicCoefficients& c, double epsilon,
                      const BandOptions& opts = {});

}  // namespace floquet3
