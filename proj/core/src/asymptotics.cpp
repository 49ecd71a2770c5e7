#include "floquet3/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "floquet3/error.hpp"
#include "floquet3/multiplier.hpp"
#include "floquet3/parallel.hpp"

namespace floquet3 {

double t0_expansion_check(std::span<const double> lambdas) {
  double worst = 0.0;
  for (const double lambda : lambdas) {
    if (std::abs(lambda) > 0.1) {
      throw InvalidInput("t0_expansion_check: |lambda| must be <= 0.1");
    }
    if (lambda == 0.0) continue;
    const cplx t0 = m0(1.0, cube_root_branch(lambda)).trace();
    const cplx approx(3.0 - lambda * lambda / 240.0, -lambda / 2.0);
    worst = std::max(worst, std::abs(t0 - approx) / std::pow(std::abs(lambda), 3));
  }
  return worst;
}

bool in_excluded_disk(cplx lambda) {
  // Centres i c_n with c_n = (2 pi n / sqrt3)^3 on the imaginary axis.
  const double unit = 2.0 * std::numbers::pi / std::sqrt(3.0);
  const double n_est = std::cbrt(lambda.imag()) / unit;
  const long base = std::lround(n_est);
  for (long n = base - 1; n <= base + 1; ++n) {
    const double cn = std::pow(unit * static_cast<double>(n), 3);
    if (std::abs(lambda - cplx(0.0, cn)) <= 1.0) return true;
  }
  return false;
}

double rho_ratio_check(const PeriodicCoefficients& c, double epsilon,
                       std::span<const cplx> lambda_grid,
                       const IntegratorOptions& opts) {
  for (const cplx lambda : lambda_grid) {
    if (in_excluded_disk(lambda)) {
      std::ostringstream msg;
      msg << "rho_ratio_check: lambda=" << lambda << " lies in an excluded disk";
      throw InvalidInput(msg.str());
    }
  }
  std::vector<double> dev(lambda_grid.size());
  parallel_for(lambda_grid.size(), [&](std::size_t i) {
    const cplx lambda = lambda_grid[i];
    const Monodromy mono = integrate_monodromy(c, lambda, epsilon, opts);
    cplx rho;
    if (lambda.imag() == 0.0) {
      rho = discriminant_from_trace(trace_of(mono));
    } else {
      const Monodromy conj =
          integrate_monodromy(c, std::conj(lambda), epsilon, opts);
      rho = discriminant_from_coefficients(trace_of(mono, conj));
    }
    dev[i] = std::abs(rho / rho0_closed_form(cube_root_branch(lambda)) - 1.0);
  });
  return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

std::vector<SweepRow> width_sweep(const PeriodicCoefficients& c,
                                  std::span<const double> eps_list,
                                  const BandOptions& opts) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw InvalidInput("width_sweep: couplings must be > 0");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InvalidInput("width_sweep: couplings must be strictly decreasing");
    }
  }
  std::vector<SweepRow> rows(eps_list.size());
  parallel_for(eps_list.size(), [&](std::size_t i) {
    const double eps = eps_list[i];
    BandReport rep;
    try {
      rep = find_band3(c, eps, opts);
    } catch (const NumericalFailure& e) {
      std::ostringstream msg;
      msg << "sweep row " << i << " (eps=" << eps << "): " << e.what();
      throw NumericalFailure(msg.str());
    }
    SweepRow& row = rows[i];
    row.epsilon = eps;
    row.found = rep.found;
    if (rep.found) {
      row.r_minus = rep.r_minus;
      row.r_plus = rep.r_plus;
      row.width = rep.width;
      row.width_over_eps3 = rep.width / (eps * eps * eps);
    }
  });
  return rows;
}

FitResult fit_width_law(std::span<const SweepRow> rows) {
  std::vector<SweepRow> used;
  for (const auto& r : rows) {
    if (r.found && r.width > 0.0 && r.epsilon > 0.0) used.push_back(r);
  }
  if (used.size() < 3) {
    throw InvalidInput("fit_width_law: fewer than 3 usable rows");
  }
  std::sort(used.begin(), used.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.epsilon > b.epsilon; });

  const double n = static_cast<double>(used.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : used) {
    const double x = std::log(r.epsilon);
    const double y = std::log(r.width);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fit;
  fit.rows_used = used.size();
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.prefactor = std::exp(intercept);
  for (const auto& r : used) {
    const double model = fit.prefactor * std::pow(r.epsilon, fit.exponent);
    fit.residual = std::max(fit.residual, std::abs(model / r.width - 1.0));
  }
  // width/eps^3 = C + D eps + ...; eliminate D between neighbouring couplings.
  for (std::size_t i = 0; i + 1 < used.size(); ++i) {
    const double q = used[i].epsilon / used[i + 1].epsilon;
    const double c_big = used[i].width / std::pow(used[i].epsilon, 3);
    const double c_small = used[i + 1].width / std::pow(used[i + 1].epsilon, 3);
    fit.richardson.push_back((q * c_small - c_big) / (q - 1.0));
  }
  fit.constant = fit.richardson.back();
  return fit;
}

}  // namespace floquet3
