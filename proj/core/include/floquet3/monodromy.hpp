#pragma once

#include "floquet3/coeffs.hpp"
#include "floquet3/matrix3.hpp"

namespace floquet3 {

/// omega = e^{i 2 pi / 3}.
cplx omega();

/// A spectral parameter together with its cube root on the fixed branch
/// arg(lambda) in (-pi/2, 3pi/2], arg(z) in (-pi/6, pi/2].
struct SpectralPoint {
  cplx lambda;
  cplx z;
};

SpectralPoint cube_root_branch(cplx lambda);

/// z0 = max_j Re(i z omega^j): the growth rate of the unperturbed solutions.
double growth_rate(const SpectralPoint& sp);

/// P(lambda): rows (0,1,0), (0,0,1), (-i lambda,0,0).
ComplexMatrix3 matrix_p(cplx lambda);
inline ComplexMatrix3 matrix_p(const SpectralPoint& sp) { return matrix_p(sp.lambda); }

/// Q(t): strictly lower triangular with -p(t) at (2,1) and (3,2), i q(t) at (3,1).
ComplexMatrix3 matrix_q(const PeriodicCoefficients& c, double t);

/// J = antidiag(i, -i, i), the form preserved by M for real lambda.
ComplexMatrix3 j_matrix();

/// Below this |z| the eigenbasis of P is too ill-conditioned and m0 falls
/// back to scaling and squaring.
inline constexpr double kZSwitch = 0.5;

/// M0(t, lambda) = e^{tP}, via the spectral projectors of P for
/// |z| >= kZSwitch and scaling-and-squaring otherwise.
ComplexMatrix3 m0(double t, const SpectralPoint& sp);

struct IntegratorOptions {
  /// Local error tolerance (used as both relative and absolute tolerance).
  double tol = 1e-10;
  long max_steps = 1'000'000;
  /// Check det M = 1 and, for real lambda, the J-identity before returning.
  bool verify = true;
};

/// M(1, lambda, epsilon) with integrator diagnostics.
struct Monodromy {
  ComplexMatrix3 m;
  cplx lambda;
  double epsilon = 0.0;
  long steps_taken = 0;
  double est_local_error = 0.0;
  double det_residual = 0.0;
  /// ||M* J M - J||, or NaN when lambda is not real.
  double j_residual = 0.0;
  double norm = 0.0;
  double z0 = 0.0;
};

/// Fundamental matrix M(t_end, lambda, epsilon) of M' = (P + eps Q(t)) M,
/// M(0) = 1. Fourier data use adaptive Dormand-Prince 5(4); piecewise
/// constant data are propagated exactly piece by piece with matrix
/// exponentials.
ComplexMatrix3 propagate(const PeriodicCoefficients& c, cplx lambda,
                         double epsilon, double t_end,
                         const IntegratorOptions& opts = {});

/// Monodromy matrix with its structural post-conditions verified.
/// Throws IntegrationError("integration accuracy ...") when det M or the
/// J-identity is off by more than 1e-9 ||M||^3 resp. 1e-8 ||M||^2.
Monodromy integrate_monodromy(const PeriodicCoefficients& c, cplx lambda,
                              double epsilon,
                              const IntegratorOptions& opts = {});

/// ||M|| / e^{z0 + |eps| kappa}; the ratio the growth estimate would bound by 1.
double norm_bound_ratio(const Monodromy& mono, double kappa);

}  // namespace floquet3
