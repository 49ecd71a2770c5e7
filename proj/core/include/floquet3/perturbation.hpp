#pragma once

#include <vector>

#include "floquet3/coeffs.hpp"
#include "floquet3/monodromy.hpp"

namespace floquet3 {

/// n-th term of M(1, lambda, eps) = sum_n eps^n M_n(1, lambda).
struct SeriesTerm {
  int n = 0;
  ComplexMatrix3 m_n;
  cplx t_n;  ///< Tr M_n(1, lambda)
  cplx lambda;
};

/// M_0 .. M_max_n at t = 1 from one solve of the block-triangular system
///   M_0' = P M_0,  M_n' = P M_n + Q M_{n-1},  M_0(0) = 1, M_n(0) = 0,
/// which is the differentiated form of the Volterra recursion
///   M_n(t) = int_0^t M_0(t - s) Q(s) M_{n-1}(s) ds.
std::vector<SeriesTerm> series_terms(const PeriodicCoefficients& c, cplx lambda,
                                     int max_n, const IntegratorOptions& opts = {});

/// M_1(1, lambda) = int_0^1 M_0(1 - s) Q(s) M_0(s) ds evaluated directly by
/// quadrature; an independent check on the n = 1 block of series_terms.
ComplexMatrix3 first_order_term_by_quadrature(const PeriodicCoefficients& c,
                                              cplx lambda, double quad_tol = 1e-12);

/// int_0^1 dt int_0^t ds Phi(t, s) with
///   Phi = p(t) p(s) (1/2 + u(1-u)) - q(t) q(s) u^2 (1-u)^2 / 4,  u = t - s,
/// by nested adaptive quadrature. Independent route to Re T_2(0) = -3h.
double t2_real_oracle(const PeriodicCoefficients& c, double quad_tol = 1e-12);

struct KernelCheckReport {
  /// max_n |int u(1-u) e^{-i2pi n u} du + 1/(2 (pi n)^2)|
  double quadratic_deviation = 0.0;
  /// max_n |int u^2(1-u)^2 e^{-i2pi n u} du + 3/(2 (pi n)^4)|
  double quartic_deviation = 0.0;
  /// Largest imaginary part seen (zero by symmetry about u = 1/2).
  double max_imaginary = 0.0;
  double max_deviation() const {
    return quadratic_deviation > quartic_deviation ? quadratic_deviation
                                                   : quartic_deviation;
  }
};

/// Numerically checks the two kernel Fourier identities behind Re T_2(0) = -3h
/// for n = 1..n_max.
KernelCheckReport fourier_kernel_check(int n_max = 8, double quad_tol = 1e-13);

/// (|eps| kappa)^n e^{z0 + |eps| kappa}: bound on the remainder after n terms.
double truncation_bound(int n, double epsilon, double kappa, double z0);

struct ImaginaryTraceCoefficients {
  double b2 = 0.0;  ///< Im T_2(0)
  double b3 = 0.0;  ///< Im T_3(0)
};

/// b2, b3 from series_terms at lambda = 0. They place the band centre at
/// roughly 2 b2 eps^2 + 2 b3 eps^3.
ImaginaryTraceCoefficients estimate_b2_b3(const PeriodicCoefficients& c,
                                          const IntegratorOptions& opts = {});

}  // namespace floquet3
