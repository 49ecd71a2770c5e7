#pragma once

#include <map>
#include <optional>
#include <vector>

#include "floquet3/matrix3.hpp"

namespace floquet3 {

/// Fourier modes keyed by the nonzero harmonic index n; both n and -n are stored.
using ModeMap = std::map<int, cplx>;

enum class ProfileKind { FiniteFourier, PiecewiseConstant };

/// Piecewise-constant profile on one period. Piece i covers
/// [breakpoints[i], breakpoints[i+1]) and the last piece ends at 1.
struct PiecewiseProfile {
  std::vector<double> breakpoints;
  std::vector<double> p_values;
  std::vector<double> q_values;
};

struct FourierMode {
  int n = 0;
  cplx value;
};

/// Unvalidated user description of (p, q): either modes or a piecewise profile.
struct CoefficientDescription {
  std::vector<FourierMode> p_modes;
  std::vector<FourierMode> q_modes;
  std::optional<PiecewiseProfile> piecewise;
};

/// Default harmonic cutoff used to represent piecewise profiles by modes.
inline constexpr int kPiecewiseModes = 1024;

class PeriodicCoefficients;

/// Validates a description and completes conjugate partners of the modes.
/// Throws InvalidInput on n = 0 modes, asymmetric pairs or trivial data.
/// Piecewise profiles are additionally represented by their first
/// `piecewise_modes` harmonics.
PeriodicCoefficients make_coefficients(const CoefficientDescription& spec,
                                       int piecewise_modes = kPiecewiseModes);

/// Validated, immutable pair of real, mean-zero, 1-periodic coefficients.
class PeriodicCoefficients {
 public:
  /// The unperturbed case p = q = 0. Not reachable through make_coefficients,
  /// which rejects trivial data, but useful as a reference operator.
  static PeriodicCoefficients zero();

  ProfileKind kind() const noexcept { return kind_; }
  const ModeMap& p_modes() const noexcept { return p_modes_; }
  const ModeMap& q_modes() const noexcept { return q_modes_; }
  const std::optional<PiecewiseProfile>& piecewise() const noexcept {
    return piecewise_;
  }
  bool is_zero() const noexcept;

  /// Values on the periodic extension; t is wrapped into [0, 1).
  double p(double t) const;
  double q(double t) const;

  /// Raw complex Fourier sums; the imaginary part is roundoff only.
  cplx p_series(double t) const;
  cplx q_series(double t) const;

  /// Points in [0, 1] where p or q may jump, always including 0 and 1.
  std::vector<double> breakpoints() const;

  /// Total variation over one period of the periodic extension.
  double total_variation_p() const;
  double total_variation_q() const;

 private:
  friend PeriodicCoefficients make_coefficients(const CoefficientDescription&,
                                                int);

  ProfileKind kind_ = ProfileKind::FiniteFourier;
  ModeMap p_modes_;
  ModeMap q_modes_;
  std::optional<PiecewiseProfile> piecewise_;
};

/// Fourier coefficients of a piecewise-constant profile, 1 <= |n| <= n_max.
ModeMap piecewise_modes(const std::vector<double>& breakpoints,
                        const std::vector<double>& values, int n_max);

double eval_p(const PeriodicCoefficients& c, double t);
double eval_q(const PeriodicCoefficients& c, double t);

/// h = (1/3) sum_{n != 0} ( |p_n|^2 / (2 pi n)^2 - 3 |q_n|^2 / (2 pi n)^4 ).
double compute_h(const ModeMap& p_modes, const ModeMap& q_modes);
double compute_h(const PeriodicCoefficients& c);

struct TruncatedH {
  double value = 0.0;
  double tail_bound = 0.0;
  int modes = 0;
};

/// h summed over 1 <= |n| <= n_max with a bound on the discarded tail.
/// For finite Fourier data the tail is exactly zero once n_max covers
/// all stored modes.
TruncatedH compute_h_truncated(const PeriodicCoefficients& c,
                               int n_max = kPiecewiseModes);

/// kappa = int_0^1 (|p| + |q|) dt by adaptive quadrature.
double compute_kappa(const PeriodicCoefficients& c, double quad_tol = 1e-12);

}  // namespace floquet3
