#include "floquet3/matrix3.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace floquet3 {

double spectral_norm(const ComplexMatrix3& a) {
  Eigen::JacobiSVD<ComplexMatrix3> svd(a);
  return svd.singularValues()(0);
}

bool all_finite(const ComplexMatrix3& a) { return a.allFinite(); }

ComplexMatrix3 expm(const ComplexMatrix3& a) {
  // Scale so the 1-norm is at most 1/2, sum the Taylor series, square back.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const ComplexMatrix3 b = a / std::ldexp(1.0, squarings);

  ComplexMatrix3 sum = ComplexMatrix3::Identity();
  ComplexMatrix3 term = ComplexMatrix3::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace floquet3
