#pragma once

#include <array>

#include "floquet3/monodromy.hpp"

namespace floquet3 {

/// T(lambda, eps) = Tr M(1, lambda, eps) and conj(T(conj(lambda), eps)).
struct TraceData {
  cplx t_value;
  cplx t_conj_value;
  bool real_lambda = true;
};

/// Trace data at a real lambda. Throws InvalidInput for non-real lambda,
/// which needs the monodromy at conj(lambda) as well.
TraceData trace_of(const Monodromy& m);
TraceData trace_of(const Monodromy& m, const Monodromy& m_conj);

/// Coefficients of D(tau) = a3 tau^3 + a2 tau^2 + a1 tau + a0.
struct CubicCoefficients {
  cplx a3;
  cplx a2;
  cplx a1;
  cplx a0;

  cplx operator()(cplx tau) const { return ((a3 * tau + a2) * tau + a1) * tau + a0; }
  cplx derivative(cplx tau) const { return (3.0 * a3 * tau + 2.0 * a2) * tau + a1; }
};

/// D(tau) = det(M - tau) = -tau^3 + T tau^2 - conj(T(conj lambda)) tau + 1.
CubicCoefficients char_poly(const TraceData& td);

using Roots3 = std::array<cplx, 3>;

/// Companion-matrix eigenvalues polished by Newton steps (kept only when
/// they reduce |D|).
Roots3 solve_cubic(const CubicCoefficients& coeffs);

enum class CircleClass { AllOnCircle, OneOnCircle, Degenerate };

const char* to_string(CircleClass c);

struct MultiplierSet {
  Roots3 taus;
  /// Quasimomenta k_j = -i Log tau_j (principal branch), so tau_j = e^{i k_j}.
  Roots3 ks;
  CircleClass classification = CircleClass::Degenerate;
};

inline constexpr double kCircleTol = 1e-7;
/// Roots closer than this are treated as colliding.
inline constexpr double kCollisionRadius = 1e-6;

/// AllOnCircle when every ||tau| - 1| <= tol_circle, OneOnCircle when exactly
/// one is and the other two pair up as tau, 1/conj(tau); Degenerate otherwise
/// or when two roots collide.
MultiplierSet classify_multipliers(const Roots3& roots,
                                   double tol_circle = kCircleTol);

/// Multipliers at (lambda, eps) through the whole pipeline:
/// monodromy -> trace -> characteristic polynomial -> roots.
MultiplierSet multipliers_at(const PeriodicCoefficients& c, cplx lambda,
                             double epsilon, const IntegratorOptions& opts = {},
                             double tol_circle = kCircleTol);

/// (t1 - t2)^2 (t1 - t3)^2 (t2 - t3)^2.
cplx discriminant_from_roots(const Roots3& roots);

/// Discriminant of the characteristic polynomial at real lambda from the
/// trace alone. With T = 3 + a + ib this is
///   a^3 (a + 4) + b^2 (108 + 2 (a + 18) a + b^2),
/// algebraically equal to |T|^4 - 8 Re T^3 + 18 |T|^2 - 27 but free of the
/// cancellation that form suffers near T = 3, where the band lives.
double discriminant_from_trace(const TraceData& td);

/// The literal |T|^4 - 8 Re T^3 + 18 |T|^2 - 27.
double discriminant_from_trace_expanded(const TraceData& td);

/// Magnitude of the individual terms in discriminant_from_trace; the
/// natural scale against which a computed rho is compared with zero.
double discriminant_scale(const TraceData& td);

/// Discriminant for complex lambda from T and conj(T(conj lambda)), evaluated
/// in variables shifted by 3 for the same reason as above.
cplx discriminant_from_coefficients(const TraceData& td);

/// rho0 = 64 sinh^2(sqrt3 z/2) sinh^2(sqrt3 omega z/2) sinh^2(sqrt3 omega^2 z/2).
cplx rho0_closed_form(const SpectralPoint& sp);

/// -64 prod_{i<j} sin^2((k_i - k_j)/2); equals the root form because
/// k1 + k2 + k3 is a multiple of 2 pi.
cplx discriminant_from_quasimomenta(const MultiplierSet& ms);

struct DiscriminantSample {
  cplx lambda;
  double epsilon = 0.0;
  cplx rho;
  /// Term scale of rho (see discriminant_scale).
  double scale = 0.0;
};

}  // namespace floquet3
