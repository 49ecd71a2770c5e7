#pragma once

#include <functional>
#include <span>

namespace floquet3 {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature to an absolute tolerance.
/// Intervals are bisected until their Kronrod error estimates sum below
/// abs_tol; throws NumericalFailure when max_depth is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 40);

/// Same as integrate_adaptive, but splits [a, b] at the given interior
/// points (ignoring those outside (a, b)) so that jumps land on interval
/// boundaries. The tolerance is shared in proportion to sub-interval length.
QuadratureResult integrate_split(const std::function<double(double)>& f,
                                 double a, double b,
                                 std::span<const double> splits,
                                 double abs_tol, int max_depth = 40);

}  // namespace floquet3
