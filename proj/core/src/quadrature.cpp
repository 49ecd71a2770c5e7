#include "floquet3/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "floquet3/error.hpp"

namespace floquet3 {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
  int depth;
};

Panel apply_rule(const std::function<double(double)>& f, double a, double b,
                 int depth) {
  double err = 0.0;
  double l1 = 0.0;
  // max_depth = 0: a single Kronrod evaluation with its error estimate.
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
  // At depth 0 Boost reports the error of the rule mapped to [-1, 1] without
  // the Jacobian; L1 is already scaled.
  err *= 0.5 * (b - a);
  return {a, b, v, err, l1, depth};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  if (!(abs_tol > 0.0)) throw InvalidInput("quadrature tolerance must be > 0");
  if (a == b) return {};
  const double length = b - a;

  std::vector<Panel> pending{apply_rule(f, a, b, 0)};
  QuadratureResult out;
  while (!pending.empty()) {
    Panel panel = pending.back();
    pending.pop_back();
    // Local budget proportional to the panel's share of [a, b].
    const double budget = abs_tol * (panel.b - panel.a) / length;
    // The last test is the roundoff floor: the estimate cannot drop below a
    // few ulps of the integral of |f| however small the panel.
    if (panel.error <= budget || panel.error <= 1e-15 * std::abs(panel.value) ||
        panel.error <= 50.0 * std::numeric_limits<double>::epsilon() * panel.l1) {
      out.value += panel.value;
      out.error += panel.error;
      ++out.intervals;
      continue;
    }
    if (panel.depth >= max_depth) {
      throw NumericalFailure(
          "adaptive quadrature did not converge on [" + std::to_string(panel.a) +
          ", " + std::to_string(panel.b) + "], error estimate " +
          std::to_string(panel.error));
    }
    const double mid = 0.5 * (panel.a + panel.b);
    pending.push_back(apply_rule(f, panel.a, mid, panel.depth + 1));
    pending.push_back(apply_rule(f, mid, panel.b, panel.depth + 1));
  }
  return out;
}

QuadratureResult integrate_split(const std::function<double(double)>& f,
                                 double a, double b,
                                 std::span<const double> splits,
                                 double abs_tol, int max_depth) {
  std::vector<double> nodes{a};
  for (double s : splits) {
    if (s > a && s < b) nodes.push_back(s);
  }
  nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  QuadratureResult total;
  const double length = b - a;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double share = (nodes[i + 1] - nodes[i]) / length;
    const auto part = integrate_adaptive(f, nodes[i], nodes[i + 1],
                                         abs_tol * share, max_depth);
    total.value += part.value;
    total.error += part.error;
    total.intervals += part.intervals;
  }
  return total;
}

}  // namespace floquet3
