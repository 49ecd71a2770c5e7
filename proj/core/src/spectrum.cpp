#include "floquet3/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "floquet3/error.hpp"
#include "floquet3/parallel.hpp"
#include "floquet3/perturbation.hpp"

namespace floquet3 {

namespace {

int sign_of(const DiscriminantSample& s) {
  switch (classify_rho(s)) {
    case Multiplicity::One:
      return 1;
    case Multiplicity::Three:
      return -1;
    case Multiplicity::Boundary:
      return 0;
  }
  return 0;
}

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

struct Refined {
  double root;
  double residual;
  double slope;
  int evaluations;
};

Refined refine(const PeriodicCoefficients& c, double epsilon, const Bracket& br,
               const BandOptions& opts) {
  int evaluations = 0;
  auto f = [&](double lambda) {
    ++evaluations;
    return rho_at(c, lambda, epsilon, opts.integrator).rho.real();
  };
  auto close_enough = [&](double a, double b) {
    return std::abs(b - a) <= opts.tol_lambda;
  };

  double lo = br.lo;
  double hi = br.hi;
  double f_lo = br.f_lo;
  double f_hi = br.f_hi;
  if (!close_enough(lo, hi)) {
    std::uintmax_t iters = opts.max_iterations;
    try {
      const auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                       close_enough, iters);
      lo = r.first;
      hi = r.second;
    } catch (const std::exception&) {
      // Leaves lo/hi untouched; bisection below takes over.
    }
    if (!close_enough(lo, hi)) {
      // TOMS 748 did not converge: plain bisection on the original bracket.
      lo = br.lo;
      hi = br.hi;
      f_lo = br.f_lo;
      for (int i = 0; i < 4 * opts.max_iterations && !close_enough(lo, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if ((fm < 0) == (f_lo < 0)) {
          lo = mid;
          f_lo = fm;
        } else {
          hi = mid;
        }
      }
    }
    f_lo = f(lo);
    f_hi = f(hi);
  }
  const double root = 0.5 * (lo + hi);
  Refined out;
  out.root = root;
  out.residual = std::abs(f(root));
  const double dl = hi - lo;
  if (dl > 0.0) {
    out.slope = std::abs(f_hi - f_lo) / dl;
  } else {
    const double step = std::max(opts.tol_lambda, 1e-16 * std::max(1.0, std::abs(root)));
    out.slope = std::abs(f(root + step) - f(root - step)) / (2.0 * step);
  }
  out.evaluations = evaluations;
  return out;
}

}  // namespace

const char* to_string(Multiplicity m) {
  switch (m) {
    case Multiplicity::One:
      return "1";
    case Multiplicity::Three:
      return "3";
    case Multiplicity::Boundary:
      return "boundary";
  }
  return "?";
}

DiscriminantSample rho_at(const PeriodicCoefficients& c, double lambda,
                          double epsilon, const IntegratorOptions& opts) {
  const Monodromy mono = integrate_monodromy(c, lambda, epsilon, opts);
  const TraceData td = trace_of(mono);
  return {lambda, epsilon, discriminant_from_trace(td), discriminant_scale(td)};
}

Multiplicity classify_rho(const DiscriminantSample& s, double rel_tol) {
  const double rho = s.rho.real();
  const double tol = rel_tol * s.scale;
  if (rho < -tol) return Multiplicity::Three;
  if (rho > tol) return Multiplicity::One;
  return Multiplicity::Boundary;
}

Multiplicity multiplicity_at(const PeriodicCoefficients& c, double lambda,
                             double epsilon, const IntegratorOptions& opts) {
  return classify_rho(rho_at(c, lambda, epsilon, opts));
}

std::vector<DiscriminantSample> scan_rho(const PeriodicCoefficients& c,
                                         double epsilon, double lambda_lo,
                                         double lambda_hi, int n_points,
                                         const IntegratorOptions& opts) {
  if (!(lambda_lo < lambda_hi)) throw InvalidInput("scan_rho: need lambda_lo < lambda_hi");
  if (n_points < 2) throw InvalidInput("scan_rho: need at least 2 points");
  std::vector<DiscriminantSample> out(static_cast<std::size_t>(n_points));
  const double step = (lambda_hi - lambda_lo) / (n_points - 1);
  parallel_for(out.size(), [&](std::size_t i) {
    const double lambda =
        i + 1 == out.size() ? lambda_hi : lambda_lo + static_cast<double>(i) * step;
    out[i] = rho_at(c, lambda, epsilon, opts);
  });
  return out;
}

BandReport find_band3(const PeriodicCoefficients& c, double epsilon,
                      const BandOptions& opts) {
  if (!(opts.window > 0.0)) throw InvalidInput("find_band3: window must be > 0");
  if (!(opts.tol_lambda > 0.0)) throw InvalidInput("find_band3: tol_lambda must be > 0");
  if (opts.coarse_points < 2 || opts.fine_points < 2) {
    throw InvalidInput("find_band3: grids need at least 2 points");
  }

  BandReport rep;
  rep.epsilon = epsilon;
  rep.h_value = compute_h(c);
  const double w = opts.window;

  // Band centre: zero of Im T, which runs like -lambda/2 + b2 eps^2 + b3 eps^3.
  double center = 0.0;
  if (!c.is_zero() && epsilon != 0.0) {
    const auto b = estimate_b2_b3(c, opts.integrator);
    center = 2.0 * b.b2 * epsilon * epsilon + 2.0 * b.b3 * epsilon * epsilon * epsilon;
    center = std::clamp(center, -w, w);
    for (int it = 0; it < 8; ++it) {
      const double im_t =
          integrate_monodromy(c, center, epsilon, opts.integrator).m.trace().imag();
      ++rep.evaluations;
      const double next = std::clamp(center + 2.0 * im_t, -w, w);
      const double moved = std::abs(next - center);
      center = next;
      if (moved <= 1e-3 * opts.tol_lambda + 1e-16 * std::abs(center)) break;
    }
  }
  rep.center = center;

  const double eps3 = std::abs(epsilon * epsilon * epsilon);
  const double half =
      std::max(10.0 * std::pow(std::abs(rep.h_value), 1.5) * eps3,
               64.0 * opts.tol_lambda);

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(opts.coarse_points + opts.fine_points));
  for (int i = 0; i < opts.coarse_points; ++i) {
    grid.push_back(-w + 2.0 * w * i / (opts.coarse_points - 1));
  }
  for (int i = 0; i < opts.fine_points; ++i) {
    const double x = center - half + 2.0 * half * i / (opts.fine_points - 1);
    if (x >= -w && x <= w) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<DiscriminantSample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    samples[i] = rho_at(c, grid[i], epsilon, opts.integrator);
  });
  rep.evaluations += static_cast<int>(grid.size());

  std::vector<Bracket> brackets;
  std::vector<int> pattern;
  int last = 0;
  std::size_t last_idx = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const int s = sign_of(samples[i]);
    if (s == 0) continue;
    if (pattern.empty() || s != last) pattern.push_back(s);
    if (last != 0 && s != last) {
      brackets.push_back({grid[last_idx], grid[i], samples[last_idx].rho.real(),
                          samples[i].rho.real()});
    }
    last = s;
    last_idx = i;
  }
  rep.sign_changes = static_cast<int>(brackets.size());

  if (brackets.empty()) return rep;
  if (brackets.size() != 2 || pattern != std::vector<int>{1, -1, 1}) {
    std::ostringstream msg;
    msg << "unexpected zero count: " << brackets.size()
        << " sign changes of rho in [-" << w << ", " << w << "] at eps=" << epsilon
        << " (coupling outside the perturbative regime?)";
    throw UnexpectedZeroCount(msg.str());
  }

  std::array<Refined, 2> ends{};
  parallel_for(2, [&](std::size_t i) { ends[i] = refine(c, epsilon, brackets[i], opts); });
  rep.found = true;
  rep.r_minus = ends[0].root;
  rep.r_plus = ends[1].root;
  rep.width = rep.r_plus - rep.r_minus;
  rep.endpoint_residuals = {ends[0].residual, ends[1].residual};
  rep.endpoint_slopes = {ends[0].slope, ends[1].slope};
  rep.evaluations += ends[0].evaluations + ends[1].evaluations;
  return rep;
}

}  // namespace floquet3
