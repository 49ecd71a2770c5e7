#include "floquet3/monodromy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "floquet3/dopri5.hpp"
#include "floquet3/error.hpp"

namespace floquet3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

std::array<cplx, 3> eigenvalues_of_p(const SpectralPoint& sp) {
  const cplx w = omega();
  return {kI * sp.z, kI * sp.z * w, kI * sp.z * w * w};
}

// Sylvester: e^{tP} = sum_j e^{mu_j t} prod_{k != j} (P - mu_k) / (mu_j - mu_k).
ComplexMatrix3 exp_by_projectors(double t, const SpectralPoint& sp) {
  const auto mu = eigenvalues_of_p(sp);
  const ComplexMatrix3 p = matrix_p(sp.lambda);
  const ComplexMatrix3 id = ComplexMatrix3::Identity();
  ComplexMatrix3 out = ComplexMatrix3::Zero();
  for (int j = 0; j < 3; ++j) {
    const int k = (j + 1) % 3;
    const int l = (j + 2) % 3;
    const ComplexMatrix3 proj =
        (p - mu[k] * id) * (p - mu[l] * id) / ((mu[j] - mu[k]) * (mu[j] - mu[l]));
    out += std::exp(mu[j] * t) * proj;
  }
  return out;
}

ComplexMatrix3 piece_generator(cplx lambda, double epsilon, double p, double q) {
  ComplexMatrix3 a = matrix_p(lambda);
  a(1, 0) += -epsilon * p;
  a(2, 1) += -epsilon * p;
  a(2, 0) += kI * (epsilon * q);
  return a;
}

ComplexMatrix3 propagate_piecewise(const PeriodicCoefficients& c, cplx lambda,
                                   double epsilon, double t_end, long& pieces) {
  const auto& pw = *c.piecewise();
  ComplexMatrix3 m = ComplexMatrix3::Identity();
  pieces = 0;
  for (std::size_t i = 0; i < pw.breakpoints.size(); ++i) {
    const double lo = pw.breakpoints[i];
    if (lo >= t_end) break;
    const double hi =
        std::min(t_end, i + 1 < pw.breakpoints.size() ? pw.breakpoints[i + 1] : 1.0);
    const ComplexMatrix3 gen =
        piece_generator(lambda, epsilon, pw.p_values[i], pw.q_values[i]);
    m = expm((hi - lo) * gen) * m;
    ++pieces;
  }
  return m;
}

struct FourierRhs {
  const PeriodicCoefficients& c;
  ComplexMatrix3 p;
  double epsilon;

  ComplexMatrix3 operator()(double t, const ComplexMatrix3& m) const {
    ComplexMatrix3 a = p;
    if (epsilon != 0.0) {
      const double pt = c.p(t);
      const double qt = c.q(t);
      a(1, 0) -= epsilon * pt;
      a(2, 1) -= epsilon * pt;
      a(2, 0) += kI * (epsilon * qt);
    }
    return a * m;
  }
};

OdeResult<ComplexMatrix3> propagate_fourier(const PeriodicCoefficients& c,
                                            cplx lambda, double epsilon,
                                            double t_end,
                                            const IntegratorOptions& opts) {
  StepControl ctl;
  ctl.rtol = opts.tol;
  ctl.atol = opts.tol;
  ctl.max_steps = opts.max_steps;
  FourierRhs rhs{c, matrix_p(lambda), epsilon};
  return dopri5(rhs, 0.0, t_end, ComplexMatrix3(ComplexMatrix3::Identity()), ctl);
}

void check_finite_inputs(cplx lambda, double epsilon) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) ||
      !std::isfinite(epsilon)) {
    throw InvalidInput("lambda and epsilon must be finite");
  }
}

}  // namespace

cplx omega() { return std::polar(1.0, 2.0 * kPi / 3.0); }

SpectralPoint cube_root_branch(cplx lambda) {
  if (lambda == cplx{}) return {lambda, cplx{}};
  double arg = std::arg(lambda);  // (-pi, pi]
  if (arg <= -kPi / 2) arg += 2.0 * kPi;
  return {lambda, std::polar(std::cbrt(std::abs(lambda)), arg / 3.0)};
}

double growth_rate(const SpectralPoint& sp) {
  double best = -std::numeric_limits<double>::infinity();
  for (const cplx mu : eigenvalues_of_p(sp)) best = std::max(best, mu.real());
  return best;
}

ComplexMatrix3 matrix_p(cplx lambda) {
  ComplexMatrix3 p = ComplexMatrix3::Zero();
  p(0, 1) = 1.0;
  p(1, 2) = 1.0;
  p(2, 0) = -kI * lambda;
  return p;
}

ComplexMatrix3 matrix_q(const PeriodicCoefficients& c, double t) {
  ComplexMatrix3 q = ComplexMatrix3::Zero();
  const double pt = c.p(t);
  q(1, 0) = -pt;
  q(2, 1) = -pt;
  q(2, 0) = kI * c.q(t);
  return q;
}

ComplexMatrix3 j_matrix() {
  ComplexMatrix3 j = ComplexMatrix3::Zero();
  j(0, 2) = kI;
  j(1, 1) = -kI;
  j(2, 0) = kI;
  return j;
}

ComplexMatrix3 m0(double t, const SpectralPoint& sp) {
  if (std::abs(sp.z) >= kZSwitch) return exp_by_projectors(t, sp);
  return expm(t * matrix_p(sp.lambda));
}

ComplexMatrix3 propagate(const PeriodicCoefficients& c, cplx lambda,
                         double epsilon, double t_end,
                         const IntegratorOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidInput("integrator tolerance must be > 0");
  check_finite_inputs(lambda, epsilon);
  if (!(t_end >= 0.0 && t_end <= 1.0)) {
    throw InvalidInput("propagation end point must lie in [0, 1]");
  }
  if (c.kind() == ProfileKind::PiecewiseConstant) {
    long pieces = 0;
    return propagate_piecewise(c, lambda, epsilon, t_end, pieces);
  }
  return propagate_fourier(c, lambda, epsilon, t_end, opts).y;
}

Monodromy integrate_monodromy(const PeriodicCoefficients& c, cplx lambda,
                              double epsilon, const IntegratorOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidInput("integrator tolerance must be > 0");
  check_finite_inputs(lambda, epsilon);
  Monodromy out;
  out.lambda = lambda;
  out.epsilon = epsilon;
  if (c.kind() == ProfileKind::PiecewiseConstant) {
    out.m = propagate_piecewise(c, lambda, epsilon, 1.0, out.steps_taken);
  } else {
    auto res = propagate_fourier(c, lambda, epsilon, 1.0, opts);
    out.m = res.y;
    out.steps_taken = res.steps;
    out.est_local_error = res.local_error_sum;
  }
  if (!all_finite(out.m)) {
    throw IntegrationError("integration accuracy: non-finite monodromy matrix");
  }

  out.norm = spectral_norm(out.m);
  out.z0 = growth_rate(cube_root_branch(lambda));
  out.det_residual = std::abs(out.m.determinant() - 1.0);
  const bool real_lambda = lambda.imag() == 0.0;
  if (real_lambda) {
    const ComplexMatrix3 j = j_matrix();
    out.j_residual = spectral_norm(out.m.adjoint() * j * out.m - j);
  } else {
    out.j_residual = std::numeric_limits<double>::quiet_NaN();
  }

  if (opts.verify) {
    const double scale = std::max(1.0, out.norm);
    const bool det_ok = out.det_residual <= 1e-9 * scale * scale * scale;
    const bool j_ok = !real_lambda || out.j_residual <= 1e-8 * scale * scale;
    if (!det_ok || !j_ok) {
      std::ostringstream msg;
      msg << "integration accuracy: lambda=" << lambda << " eps=" << epsilon
          << " |det M - 1|=" << out.det_residual
          << " ||M*JM - J||=" << out.j_residual;
      throw IntegrationError(msg.str(), out.det_residual, out.j_residual);
    }
  }
  return out;
}

double norm_bound_ratio(const Monodromy& mono, double kappa) {
  return mono.norm / std::exp(mono.z0 + std::abs(mono.epsilon) * kappa);
}

}  // namespace floquet3
