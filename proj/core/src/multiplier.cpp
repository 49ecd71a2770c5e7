#include "floquet3/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "floquet3/error.hpp"

namespace floquet3 {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

TraceData trace_of(const Monodromy& m) {
  if (m.lambda.imag() != 0.0) {
    throw InvalidInput("trace_of: non-real lambda needs the monodromy at conj(lambda)");
  }
  const cplx t = m.m.trace();
  return {t, std::conj(t), true};
}

TraceData trace_of(const Monodromy& m, const Monodromy& m_conj) {
  if (std::abs(m_conj.lambda - std::conj(m.lambda)) >
          1e-14 * std::max(1.0, std::abs(m.lambda)) ||
      m_conj.epsilon != m.epsilon) {
    throw InvalidInput("trace_of: second monodromy must be taken at conj(lambda)");
  }
  return {m.m.trace(), std::conj(m_conj.m.trace()), m.lambda.imag() == 0.0};
}

CubicCoefficients char_poly(const TraceData& td) {
  return {-1.0, td.t_value, -td.t_conj_value, 1.0};
}

Roots3 solve_cubic(const CubicCoefficients& coeffs) {
  if (coeffs.a3 == cplx{}) throw InvalidInput("solve_cubic: leading coefficient is zero");
  const cplx c2 = coeffs.a2 / coeffs.a3;
  const cplx c1 = coeffs.a1 / coeffs.a3;
  const cplx c0 = coeffs.a0 / coeffs.a3;
  ComplexMatrix3 companion = ComplexMatrix3::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(0, 2) = -c0;
  companion(1, 2) = -c1;
  companion(2, 2) = -c2;
  Eigen::ComplexEigenSolver<ComplexMatrix3> solver(companion, false);
  Roots3 roots{};
  for (int i = 0; i < 3; ++i) roots[i] = solver.eigenvalues()(i);

  for (auto& r : roots) {
    for (int step = 0; step < 2; ++step) {
      const cplx d = coeffs.derivative(r);
      if (d == cplx{}) break;
      const cplx candidate = r - coeffs(r) / d;
      if (std::abs(coeffs(candidate)) < std::abs(coeffs(r))) {
        r = candidate;
      } else {
        break;
      }
    }
  }
  return roots;
}

const char* to_string(CircleClass c) {
  switch (c) {
    case CircleClass::AllOnCircle:
      return "all-on-circle";
    case CircleClass::OneOnCircle:
      return "one-on-circle";
    case CircleClass::Degenerate:
      return "degenerate";
  }
  return "?";
}

MultiplierSet classify_multipliers(const Roots3& roots, double tol_circle) {
  MultiplierSet out;
  out.taus = roots;
  for (int i = 0; i < 3; ++i) out.ks[i] = -kI * std::log(roots[i]);

  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(roots[i] - roots[j]) < kCollisionRadius) {
        out.classification = CircleClass::Degenerate;
        return out;
      }
    }
  }
  int on_circle = 0;
  int unit = -1;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(std::abs(roots[i]) - 1.0) <= tol_circle) {
      ++on_circle;
      unit = i;
    }
  }
  if (on_circle == 3) {
    out.classification = CircleClass::AllOnCircle;
  } else if (on_circle == 1) {
    // The off-circle pair must be {e^{ik}, e^{i conj k}}: tau_b = 1/conj(tau_a).
    const cplx ta = roots[(unit + 1) % 3];
    const cplx tb = roots[(unit + 2) % 3];
    const double mismatch = std::abs(ta * std::conj(tb) - 1.0);
    out.classification = mismatch <= std::max(tol_circle, 1e-8) * (1.0 + std::abs(ta * tb))
                             ? CircleClass::OneOnCircle
                             : CircleClass::Degenerate;
  } else {
    out.classification = CircleClass::Degenerate;
  }
  return out;
}

MultiplierSet multipliers_at(const PeriodicCoefficients& c, cplx lambda,
                             double epsilon, const IntegratorOptions& opts,
                             double tol_circle) {
  const Monodromy mono = integrate_monodromy(c, lambda, epsilon, opts);
  TraceData td;
  if (lambda.imag() == 0.0) {
    td = trace_of(mono);
  } else {
    td = trace_of(mono, integrate_monodromy(c, std::conj(lambda), epsilon, opts));
  }
  return classify_multipliers(solve_cubic(char_poly(td)), tol_circle);
}

cplx discriminant_from_roots(const Roots3& r) {
  const cplx d01 = r[0] - r[1];
  const cplx d02 = r[0] - r[2];
  const cplx d12 = r[1] - r[2];
  const cplx prod = d01 * d02 * d12;
  return prod * prod;
}

double discriminant_from_trace(const TraceData& td) {
  const double a = td.t_value.real() - 3.0;
  const double b = td.t_value.imag();
  const double b2 = b * b;
  return a * a * a * (a + 4.0) + b2 * (108.0 + 2.0 * (a + 18.0) * a + b2);
}

double discriminant_from_trace_expanded(const TraceData& td) {
  const cplx t = td.t_value;
  const double mod2 = std::norm(t);
  return mod2 * mod2 - 8.0 * (t * t * t).real() + 18.0 * mod2 - 27.0;
}

double discriminant_scale(const TraceData& td) {
  const double a = td.t_value.real() - 3.0;
  const double b = td.t_value.imag();
  const double b2 = b * b;
  return std::abs(a * a * a * (a + 4.0)) +
         b2 * (108.0 + std::abs(2.0 * (a + 18.0) * a) + b2);
}

cplx discriminant_from_coefficients(const TraceData& td) {
  // a = 3 + x, b = 3 + y in a^2 b^2 - 4 a^3 - 4 b^3 + 18 a b - 27.
  const cplx x = td.t_value - 3.0;
  const cplx y = td.t_conj_value - 3.0;
  const cplx d = x - y;
  return -4.0 * x * x * x - 4.0 * y * y * y + x * x * y * y +
         6.0 * x * y * (x + y) - 27.0 * d * d;
}

cplx rho0_closed_form(const SpectralPoint& sp) {
  const double s3 = std::sqrt(3.0);
  const cplx w = omega();
  const cplx f1 = std::sinh(s3 * sp.z / 2.0);
  const cplx f2 = std::sinh(s3 * w * sp.z / 2.0);
  const cplx f3 = std::sinh(s3 * w * w * sp.z / 2.0);
  const cplx prod = f1 * f2 * f3;
  return 64.0 * prod * prod;
}

cplx discriminant_from_quasimomenta(const MultiplierSet& ms) {
  const auto& k = ms.ks;
  const cplx s01 = std::sin((k[0] - k[1]) / 2.0);
  const cplx s02 = std::sin((k[0] - k[2]) / 2.0);
  const cplx s12 = std::sin((k[1] - k[2]) / 2.0);
  const cplx prod = s01 * s02 * s12;
  return -64.0 * prod * prod;
}

}  // namespace floquet3
