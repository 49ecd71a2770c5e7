#pragma once

// Test families and independent oracles shared by the unit and acceptance
// suites. Nothing here calls into the code path it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "floquet3/floquet3.hpp"

namespace floquet3::testing {

inline constexpr double kPi = std::numbers::pi;

/// p = cos 2 pi t, q = 0  (h > 0).
inline PeriodicCoefficients cos_p() {
  CoefficientDescription d;
  d.p_modes = {{1, {0.5, 0.0}}};
  return make_coefficients(d);
}

/// p = 0, q = cos 2 pi t  (h < 0).
inline PeriodicCoefficients cos_q() {
  CoefficientDescription d;
  d.q_modes = {{1, {0.5, 0.0}}};
  return make_coefficients(d);
}

/// p = cos 2 pi t, q = cos 2 pi t.
inline PeriodicCoefficients cos_pq() {
  CoefficientDescription d;
  d.p_modes = {{1, {0.5, 0.0}}};
  d.q_modes = {{1, {0.5, 0.0}}};
  return make_coefficients(d);
}

/// p = cos 2 pi t + 0.4 sin 4 pi t, q = 0.5 cos 2 pi t: h > 0 and Im T_2(0) != 0,
/// so the band sits off lambda = 0.
inline PeriodicCoefficients mixed() {
  CoefficientDescription d;
  d.p_modes = {{1, {0.5, 0.0}}, {2, {0.0, -0.2}}};
  d.q_modes = {{1, {0.25, 0.0}}};
  return make_coefficients(d);
}

/// Square wave p = +-1 on halves, q = 0.
inline PeriodicCoefficients square_p() {
  CoefficientDescription d;
  d.piecewise = PiecewiseProfile{{0.0, 0.5}, {1.0, -1.0}, {0.0, 0.0}};
  return make_coefficients(d);
}

/// e^{tP} from its Taylor series in long double, no scaling.
/// Independent of floquet3::m0 / floquet3::expm; fine for |t lambda| <~ 30.
inline ComplexMatrix3 exp_tp_taylor(double t, cplx lambda) {
  using ld = std::complex<long double>;
  ld p[3][3] = {};
  p[0][1] = 1;
  p[1][2] = 1;
  p[2][0] = ld(0, -1) * ld(lambda.real(), lambda.imag());
  ld sum[3][3] = {};
  ld term[3][3] = {};
  for (int i = 0; i < 3; ++i) sum[i][i] = term[i][i] = 1;
  for (int k = 1; k < 400; ++k) {
    ld next[3][3] = {};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) next[i][j] += term[i][l] * p[l][j];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        term[i][j] = next[i][j] * static_cast<long double>(t) / static_cast<long double>(k);
        sum[i][j] += term[i][j];
      }
  }
  ComplexMatrix3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out(i, j) = cplx(static_cast<double>(sum[i][j].real()),
                       static_cast<double>(sum[i][j].imag()));
  return out;
}

/// Fixed-step classical RK4 for M' = (P + eps Q(t)) M with `steps` steps.
/// The end-of-step stage takes the left limit of the coefficients so that
/// piecewise data with breakpoints on the grid are integrated exactly per piece.
inline ComplexMatrix3 monodromy_rk4(const PeriodicCoefficients& c, cplx lambda,
                                    double eps, int steps) {
  auto gen = [&](double t) {
    ComplexMatrix3 a = ComplexMatrix3::Zero();
    a(0, 1) = 1.0;
    a(1, 2) = 1.0;
    a(2, 0) = cplx(0, -1) * lambda + cplx(0, eps * c.q(t));
    a(1, 0) = -eps * c.p(t);
    a(2, 1) = -eps * c.p(t);
    return a;
  };
  ComplexMatrix3 m = ComplexMatrix3::Identity();
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const ComplexMatrix3 k1 = gen(t) * m;
    const ComplexMatrix3 k2 = gen(t + h / 2) * (m + h / 2 * k1);
    const ComplexMatrix3 k3 = gen(t + h / 2) * (m + h / 2 * k2);
    const ComplexMatrix3 k4 = gen(t + h * (1 - 1e-12)) * (m + h * k3);
    m += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return m;
}

/// Multipliers at eps = 0 straight from the definition: e^{i z omega^j}.
inline Roots3 free_multipliers(cplx lambda) {
  const SpectralPoint sp = cube_root_branch(lambda);
  const cplx w = std::polar(1.0, 2 * kPi / 3);
  const cplx i(0, 1);
  return {std::exp(i * sp.z), std::exp(i * w * sp.z), std::exp(i * w * w * sp.z)};
}

/// Max over a of min over b of |a - b|: distance between two root triples.
inline double root_distance(const Roots3& a, const Roots3& b) {
  double worst = 0.0;
  for (const cplx x : a) {
    double best = 1e300;
    for (const cplx y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace floquet3::testing
