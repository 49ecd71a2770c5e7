#include "floquet3/perturbation.hpp"

#include <cmath>
#include <numbers>

#include "floquet3/dopri5.hpp"
#include "floquet3/error.hpp"
#include "floquet3/quadrature.hpp"

namespace floquet3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

using BlockState = Eigen::Matrix<cplx, 3, Eigen::Dynamic>;

struct BlockRhs {
  ComplexMatrix3 p;
  int blocks;
  // Returns Q at t; for piecewise data the piece values are frozen.
  std::function<ComplexMatrix3(double)> q_at;

  BlockState operator()(double t, const BlockState& y) const {
    BlockState out(3, 3 * blocks);
    const ComplexMatrix3 q = q_at(t);
    out.leftCols<3>() = p * y.leftCols<3>();
    for (int n = 1; n < blocks; ++n) {
      out.middleCols<3>(3 * n) = p * y.middleCols<3>(3 * n) + q * y.middleCols<3>(3 * (n - 1));
    }
    return out;
  }
};

ComplexMatrix3 q_matrix(double p, double q) {
  ComplexMatrix3 m = ComplexMatrix3::Zero();
  m(1, 0) = -p;
  m(2, 1) = -p;
  m(2, 0) = kI * q;
  return m;
}

}  // namespace

std::vector<SeriesTerm> series_terms(const PeriodicCoefficients& c, cplx lambda,
                                     int max_n, const IntegratorOptions& opts) {
  if (max_n < 0) throw InvalidInput("series_terms: max_n must be >= 0");
  if (!(opts.tol > 0.0)) throw InvalidInput("integrator tolerance must be > 0");
  const int blocks = max_n + 1;
  StepControl ctl;
  ctl.rtol = opts.tol;
  ctl.atol = opts.tol;
  ctl.max_steps = opts.max_steps;

  BlockState y = BlockState::Zero(3, 3 * blocks);
  y.leftCols<3>() = ComplexMatrix3::Identity();
  const ComplexMatrix3 p = matrix_p(lambda);

  if (c.kind() == ProfileKind::PiecewiseConstant) {
    const auto& pw = *c.piecewise();
    for (std::size_t i = 0; i < pw.breakpoints.size(); ++i) {
      const double lo = pw.breakpoints[i];
      const double hi = i + 1 < pw.breakpoints.size() ? pw.breakpoints[i + 1] : 1.0;
      const ComplexMatrix3 q = q_matrix(pw.p_values[i], pw.q_values[i]);
      BlockRhs rhs{p, blocks, [q](double) { return q; }};
      y = dopri5(rhs, lo, hi, y, ctl).y;
    }
  } else {
    BlockRhs rhs{p, blocks, [&c](double t) { return matrix_q(c, t); }};
    y = dopri5(rhs, 0.0, 1.0, y, ctl).y;
  }

  std::vector<SeriesTerm> out;
  out.reserve(blocks);
  for (int n = 0; n < blocks; ++n) {
    SeriesTerm term;
    term.n = n;
    term.m_n = y.middleCols<3>(3 * n);
    term.t_n = term.m_n.trace();
    term.lambda = lambda;
    out.push_back(term);
  }
  return out;
}

ComplexMatrix3 first_order_term_by_quadrature(const PeriodicCoefficients& c,
                                              cplx lambda, double quad_tol) {
  const SpectralPoint sp = cube_root_branch(lambda);
  const auto splits = c.breakpoints();
  ComplexMatrix3 out = ComplexMatrix3::Zero();
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) {
      auto entry = [&](double s) {
        return (m0(1.0 - s, sp) * matrix_q(c, s) * m0(s, sp))(r, k);
      };
      const double re =
          integrate_split([&](double s) { return entry(s).real(); }, 0.0, 1.0,
                          splits, quad_tol).value;
      const double im =
          integrate_split([&](double s) { return entry(s).imag(); }, 0.0, 1.0,
                          splits, quad_tol).value;
      out(r, k) = cplx(re, im);
    }
  }
  return out;
}

double t2_real_oracle(const PeriodicCoefficients& c, double quad_tol) {
  if (!(quad_tol > 0.0)) throw InvalidInput("quadrature tolerance must be > 0");
  if (c.is_zero()) return 0.0;
  const auto splits = c.breakpoints();
  auto phi = [&c](double t, double s, double pt, double qt) {
    const double u = t - s;
    const double w = u * (1.0 - u);
    return pt * c.p(s) * (0.5 + w) - qt * c.q(s) * w * w / 4.0;
  };
  auto inner = [&](double t) {
    const double pt = c.p(t);
    const double qt = c.q(t);
    if (pt == 0.0 && qt == 0.0) return 0.0;
    return integrate_split([&](double s) { return phi(t, s, pt, qt); }, 0.0, t,
                           splits, 0.1 * quad_tol)
        .value;
  };
  return integrate_split(inner, 0.0, 1.0, splits, quad_tol).value;
}

KernelCheckReport fourier_kernel_check(int n_max, double quad_tol) {
  KernelCheckReport rep;
  for (int n = 1; n <= n_max; ++n) {
    const double k = 2.0 * kPi * n;
    auto quad = [&](auto kernel) {
      const double re =
          integrate_adaptive([&](double u) { return kernel(u) * std::cos(k * u); },
                             0.0, 1.0, quad_tol)
              .value;
      const double im =
          integrate_adaptive([&](double u) { return -kernel(u) * std::sin(k * u); },
                             0.0, 1.0, quad_tol)
              .value;
      return cplx(re, im);
    };
    const cplx quadratic = quad([](double u) { return u * (1.0 - u); });
    const cplx quartic = quad([](double u) {
      const double w = u * (1.0 - u);
      return w * w;
    });
    const double pn = kPi * n;
    rep.quadratic_deviation =
        std::max(rep.quadratic_deviation, std::abs(quadratic + 1.0 / (2.0 * pn * pn)));
    rep.quartic_deviation = std::max(
        rep.quartic_deviation, std::abs(quartic + 3.0 / (2.0 * pn * pn * pn * pn)));
    rep.max_imaginary = std::max(
        {rep.max_imaginary, std::abs(quadratic.imag()), std::abs(quartic.imag())});
  }
  return rep;
}

double truncation_bound(int n, double epsilon, double kappa, double z0) {
  if (n < 1) throw InvalidInput("truncation_bound: n must be >= 1");
  if (kappa < 0.0) throw InvalidInput("truncation_bound: kappa must be >= 0");
  const double x = std::abs(epsilon) * kappa;
  return std::pow(x, n) * std::exp(z0 + x);
}

ImaginaryTraceCoefficients estimate_b2_b3(const PeriodicCoefficients& c,
                                          const IntegratorOptions& opts) {
  if (c.is_zero()) return {};
  const auto terms = series_terms(c, 0.0, 3, opts);
  return {terms[2].t_n.imag(), terms[3].t_n.imag()};
}

}  // namespace floquet3
