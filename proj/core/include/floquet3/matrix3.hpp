#pragma once

#include <complex>

#include <Eigen/Core>

namespace floquet3 {

using cplx = std::complex<double>;

/// Dense 3x3 complex matrix; carrier for M, M0, P, Q and J.
using ComplexMatrix3 = Eigen::Matrix3cd;

/// Largest singular value.
double spectral_norm(const ComplexMatrix3& a);

bool all_finite(const ComplexMatrix3& a);

/// Matrix exponential by scaling and squaring with a Taylor kernel.
ComplexMatrix3 expm(const ComplexMatrix3& a);

}  // namespace floquet3
