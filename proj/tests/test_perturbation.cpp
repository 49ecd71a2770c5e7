#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace floquet3 {
namespace {

using testing::kPi;

double max_abs(const ComplexMatrix3& a) { return a.cwiseAbs().maxCoeff(); }

TEST(SeriesTerms, BaseTermIsFreeExponential) {
  const auto c = testing::cos_p();
  for (const cplx lambda : {cplx(0, 0), cplx(1, 0), cplx(-4, 2)}) {
    const auto terms = series_terms(c, lambda, 0, {.tol = 1e-12});
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_LT(max_abs(terms[0].m_n - m0(1.0, cube_root_branch(lambda))), 1e-10);
  }
}

TEST(SeriesTerms, FirstTermMatchesQuadrature) {
  const auto c = testing::mixed();
  for (const cplx lambda : {cplx(0, 0), cplx(2.5, 0), cplx(-1, 0.5)}) {
    const auto terms = series_terms(c, lambda, 1, {.tol = 1e-12});
    const ComplexMatrix3 direct = first_order_term_by_quadrature(c, lambda, 1e-12);
    EXPECT_LT(max_abs(terms[1].m_n - direct), 1e-9) << lambda;
  }
}

TEST(SeriesTerms, FirstTraceVanishes) {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> lam(-10.0, 10.0);
  for (const auto& c : {testing::cos_p(), testing::cos_q(), testing::mixed(), testing::square_p()}) {
    for (int k = 0; k < 5; ++k) {
      const auto terms = series_terms(c, lam(rng), 1, {.tol = 1e-12});
      EXPECT_LT(std::abs(terms[1].t_n), 1e-9);
    }
  }
}

TEST(SeriesTerms, SumReproducesMonodromy) {
  const auto c = testing::cos_pq();
  const double eps = 0.05;
  const cplx lambda = 1.5;
  const auto terms = series_terms(c, lambda, 8, {.tol = 1e-13});
  ComplexMatrix3 sum = ComplexMatrix3::Zero();
  for (const auto& t : terms) sum += std::pow(eps, t.n) * t.m_n;
  const Monodromy mono = integrate_monodromy(c, lambda, eps, {.tol = 1e-13});
  EXPECT_LT(max_abs(sum - mono.m), 1e-11);
}

TEST(SeriesTerms, TruncationBoundHolds) {
  const auto c = testing::cos_p();
  const double kappa = compute_kappa(c);
  for (double eps : {0.05, 0.2}) {
    for (double lambda : {0.0, 3.0}) {
      const auto terms = series_terms(c, lambda, 6, {.tol = 1e-13});
      const Monodromy mono = integrate_monodromy(c, lambda, eps, {.tol = 1e-13});
      ComplexMatrix3 partial = ComplexMatrix3::Zero();
      for (int n = 1; n <= 4; ++n) {
        partial += std::pow(eps, n - 1) * terms[n - 1].m_n;
        const double remainder = spectral_norm(mono.m - partial);
        EXPECT_LE(remainder, truncation_bound(n, eps, kappa, mono.z0)) << n;
      }
    }
  }
}

TEST(T2Oracle, MatchesMinusThreeH) {
  EXPECT_NEAR(t2_real_oracle(testing::cos_p()), -1.0 / (8 * kPi * kPi), 1e-10);
  EXPECT_NEAR(t2_real_oracle(testing::cos_p()), -1.2665e-2, 1e-6);
  EXPECT_NEAR(t2_real_oracle(testing::cos_q()), 3.0 / (32 * std::pow(kPi, 4)), 1e-10);
  EXPECT_NEAR(t2_real_oracle(testing::cos_q()), 9.6244e-4, 1e-8);
  EXPECT_EQ(t2_real_oracle(PeriodicCoefficients::zero()), 0.0);
  EXPECT_NEAR(t2_real_oracle(testing::mixed()), -3 * compute_h(testing::mixed()), 1e-9);
}

TEST(T2Oracle, SeriesAgrees) {
  for (const auto& c : {testing::cos_p(), testing::cos_q(), testing::mixed()}) {
    const auto terms = series_terms(c, 0.0, 2, {.tol = 1e-13});
    EXPECT_NEAR(terms[2].t_n.real(), -3 * compute_h(c), 1e-9);
  }
}

TEST(KernelCheck, FourierIdentities) {
  const auto r = fourier_kernel_check(8, 1e-13);
  EXPECT_LT(r.max_deviation(), 1e-12);
  EXPECT_LT(r.max_imaginary, 1e-12);
}

TEST(KernelCheck, IndividualValues) {
  auto quad = [](auto kernel, int n) {
    const double re = integrate_adaptive(
        [&](double u) { return kernel(u) * std::cos(2 * kPi * n * u); }, 0, 1, 1e-14).value;
    const double im = integrate_adaptive(
        [&](double u) { return -kernel(u) * std::sin(2 * kPi * n * u); }, 0, 1, 1e-14).value;
    return cplx(re, im);
  };
  auto k2 = [](double u) { return u * (1 - u); };
  auto k4 = [](double u) { return u * u * (1 - u) * (1 - u); };
  EXPECT_NEAR(quad(k2, 1).real(), -1.0 / (2 * kPi * kPi), 1e-13);
  EXPECT_NEAR(quad(k4, 2).real(), -3.0 / (32 * std::pow(kPi, 4)), 1e-13);
  EXPECT_LT(std::abs(quad(k2, 1).imag()), 1e-12);
}

TEST(TruncationBound, Values) {
  EXPECT_EQ(truncation_bound(1, 0.0, 2 / kPi, 0.0), 0.0);
  const double want = 0.1 * (2 / kPi) * std::exp(0.1 * 2 / kPi);
  EXPECT_NEAR(truncation_bound(1, 0.1, 2 / kPi, 0.0), want, 1e-16);
  EXPECT_NEAR(truncation_bound(1, 0.1, 2 / kPi, 0.0), 6.784e-2, 1e-5);
  EXPECT_NEAR(truncation_bound(2, -0.1, 1.0, 1.0), 0.01 * std::exp(1.1), 1e-15);
  EXPECT_THROW(truncation_bound(0, 0.1, 1.0, 0.0), InvalidInput);
  EXPECT_THROW(truncation_bound(1, 0.1, -1.0, 0.0), InvalidInput);
}

TEST(ImaginaryTrace, ZeroAndCosineFamilies) {
  const auto zero = estimate_b2_b3(PeriodicCoefficients::zero());
  EXPECT_EQ(zero.b2, 0.0);
  EXPECT_EQ(zero.b3, 0.0);
  // q = 0 makes M(1, 0, eps) real, so both vanish.
  const auto a = estimate_b2_b3(testing::cos_p(), {.tol = 1e-12});
  const auto b = estimate_b2_b3(testing::cos_p(), {.tol = 5e-13});
  EXPECT_TRUE(std::isfinite(a.b2) && std::isfinite(a.b3));
  EXPECT_NEAR(a.b2, b.b2, 1e-8);
  EXPECT_NEAR(a.b3, b.b3, 1e-8);
  EXPECT_NEAR(a.b2, 0.0, 1e-10);
}

TEST(ImaginaryTrace, MixedFamilyStableUnderRefinement) {
  const auto a = estimate_b2_b3(testing::mixed(), {.tol = 1e-12});
  const auto b = estimate_b2_b3(testing::mixed(), {.tol = 5e-13});
  EXPECT_GT(std::abs(a.b2), 1e-4);
  EXPECT_NEAR(a.b2, b.b2, 1e-8);
  EXPECT_NEAR(a.b3, b.b3, 1e-8);
}

TEST(SeriesTerms, ErrorPaths) {
  EXPECT_THROW(series_terms(testing::cos_p(), 0.0, -1), InvalidInput);
  EXPECT_THROW(series_terms(testing::cos_p(), 0.0, 2, {.tol = 0.0}), InvalidInput);
  EXPECT_THROW(first_order_term_by_quadrature(testing::cos_p(), 0.0, 0.0), InvalidInput);
}

}  // namespace
}  // namespace floquet3
