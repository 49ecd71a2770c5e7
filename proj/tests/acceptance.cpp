// Acceptance gate. One line per criterion:
//   AC<n> PASS|FAIL <measured values> (<seconds>s / limit <seconds>s)
// Run with a criterion name (AC1..AC8) or with no argument for all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "floquet3/floquet3.hpp"

namespace {

using namespace floquet3;

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

PeriodicCoefficients family_p() {
  CoefficientDescription d;
  d.p_modes = {{1, {0.5, 0.0}}};
  return make_coefficients(d);
}

PeriodicCoefficients family_q() {
  CoefficientDescription d;
  d.q_modes = {{1, {0.5, 0.0}}};
  return make_coefficients(d);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Closed-form oracles, written out here rather than taken from the library.
double h_cos_p() { return 1.0 / (24 * kPi * kPi); }
double h_cos_q() { return -1.0 / (32 * std::pow(kPi, 4)); }

Outcome ac1() {
  const auto c = family_p();
  const cplx w = std::polar(1.0, 2 * kPi / 3);
  const cplx i(0, 1);
  double tau_err = 0.0, rho_err = 0.0;
  int count = 0;
  // 50 real points, 1.5 <= |lambda| <= 50, clear of the disk around 0.
  for (int k = 0; k < 50; ++k) {
    const double mag = 1.5 + 48.5 * (k / 2) / 24.0;
    const double lambda = k % 2 ? -mag : mag;
    if (in_excluded_disk(lambda)) continue;
    ++count;
    const SpectralPoint sp = cube_root_branch(lambda);
    const std::array<cplx, 3> want = {std::exp(i * sp.z), std::exp(i * w * sp.z),
                                      std::exp(i * w * w * sp.z)};
    const Monodromy m = integrate_monodromy(c, lambda, 0.0, {.tol = 1e-13});
    const TraceData td = trace_of(m);
    const Roots3 got = solve_cubic(char_poly(td));
    for (const cplx t : want) {
      double best = 1e300;
      for (const cplx g : got) best = std::min(best, std::abs(g - t));
      tau_err = std::max(tau_err, best / std::max(1.0, std::abs(t)));
    }
    const cplx rho0 = rho0_closed_form(sp);
    rho_err = std::max(rho_err, std::abs(discriminant_from_trace(td) - rho0) / std::abs(rho0));
  }
  return {count == 50 && tau_err <= 1e-9 && rho_err <= 1e-8,
          "points=" + std::to_string(count) + " max|tau-e^{iz w^j}|=" + sci(tau_err) +
              " (<=1e-9) max rel|rho-rho0|=" + sci(rho_err) + " (<=1e-8)"};
}

Outcome ac2() {
  double det_err = 0.0, j_err = 0.0;
  for (const auto& c : {family_p(), family_q()}) {
    for (int a = 0; a < 20; ++a) {
      const double lambda = -10.0 + 20.0 * a / 19.0;
      for (int b = 0; b < 5; ++b) {
        const double eps = -0.2 + 0.1 * b;
        const Monodromy m = integrate_monodromy(c, lambda, eps, {.tol = 1e-12});
        det_err = std::max(det_err, m.det_residual);
        j_err = std::max(j_err, m.j_residual);
      }
    }
  }
  return {det_err <= 1e-10 && j_err <= 1e-8,
          "grid=20x5 per family max|det M-1|=" + sci(det_err) + " (<=1e-10) max||M*JM-J||=" +
              sci(j_err) + " (<=1e-8)"};
}

Outcome ac3() {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> lambdas(20);
  for (double& l : lambdas) l = u(rng);
  const IntegratorOptions opts{.tol = 1e-13};
  double t1 = 0.0, t2_series = 0.0, t2_oracle = 0.0;
  const std::pair<PeriodicCoefficients, double> families[] = {{family_p(), h_cos_p()},
                                                              {family_q(), h_cos_q()}};
  for (const auto& [c, h] : families) {
    for (double lambda : lambdas) {
      t1 = std::max(t1, std::abs(series_terms(c, lambda, 1, opts)[1].t_n));
    }
    const double re_t2 = series_terms(c, 0.0, 2, opts)[2].t_n.real();
    t2_series = std::max(t2_series, std::abs(re_t2 + 3 * h));
    t2_oracle = std::max(t2_oracle, std::abs(t2_real_oracle(c) - re_t2));
  }
  return {t1 <= 1e-9 && t2_series <= 1e-7 && t2_oracle <= 1e-7,
          "max|T1|=" + sci(t1) + " (<=1e-9) |Re T2(0)+3h|=" + sci(t2_series) +
              " |Re T2(0)-Phi oracle|=" + sci(t2_oracle) + " (<=1e-7)"};
}

Outcome ac4() {
  double worst = 0.0;
  int checks = 0;
  for (const auto& c : {family_p(), family_q()}) {
    const double kappa = compute_kappa(c);
    for (double lambda : {-1.0, 0.0, 1.0}) {
      const auto terms = series_terms(c, lambda, 4, {.tol = 1e-13});
      for (double eps : {0.01, 0.05}) {
        const Monodromy m = integrate_monodromy(c, lambda, eps, {.tol = 1e-13});
        ComplexMatrix3 partial = ComplexMatrix3::Zero();
        for (int n = 1; n <= 4; ++n) {
          partial += std::pow(eps, n - 1) * terms[n - 1].m_n;
          const double remainder = spectral_norm(m.m - partial);
          worst = std::max(worst, remainder / truncation_bound(n, eps, kappa, m.z0));
          ++checks;
        }
      }
    }
  }
  return {worst <= 1.0, "checks=" + std::to_string(checks) +
                            " max remainder/bound=" + sci(worst) + " (<=1)"};
}

Outcome ac5() {
  const auto c = family_p();
  const double eps[] = {0.16, 0.08, 0.04, 0.02};
  const auto rows = width_sweep(c, eps);
  bool all_found = true;
  for (const auto& r : rows) all_found = all_found && r.found;
  if (!all_found) return {false, "a sweep row found no band"};
  const FitResult fit = fit_width_law(rows);
  const double want = 4 * std::pow(h_cos_p(), 1.5);
  const double rel = std::abs(fit.constant / want - 1.0);
  return {std::abs(fit.exponent - 3.0) <= 0.15 && rel <= 0.2,
          "exponent=" + sci(fit.exponent) + " (3+-0.15) richardson=" + sci(fit.constant) +
              " vs 4h^1.5=" + sci(want) + " rel=" + sci(rel) + " (<=0.2)"};
}

Outcome ac6() {
  const auto c = family_q();
  bool ok = compute_h(c) < 0.0;
  std::ostringstream d;
  for (double eps : {0.05, 0.1}) {
    const BandReport r = find_band3(c, eps);
    const auto samples = scan_rho(c, eps, -1.0, 1.0, 200, {.tol = 1e-12});
    int ones = 0;
    for (const auto& s : samples) ones += classify_rho(s) == Multiplicity::One ? 1 : 0;
    ok = ok && !r.found && ones == 200;
    d << "eps=" << eps << ": found=" << (r.found ? "true" : "false") << " mult1=" << ones
      << "/200 ";
  }
  return {ok, d.str()};
}

Outcome ac7() {
  const auto c = family_p();
  const cplx grid[] = {cplx(2, 0), cplx(-2, 0), cplx(3, 1), cplx(-1, 2), cplx(0.5, -1.5),
                       cplx(0, 5), cplx(4, -3), cplx(-6, 0)};
  const double d2 = rho_ratio_check(c, 2e-3, grid);
  const double d1 = rho_ratio_check(c, 1e-3, grid);
  const double ratio = d1 / d2;
  return {std::abs(ratio - 0.5) <= 0.3 * 0.5,
          "max|rho/rho0-1|: eps=2e-3 -> " + sci(d2) + ", eps=1e-3 -> " + sci(d1) +
              ", ratio=" + sci(ratio) + " (want 0.5+-30%; T1=0 makes the deviation O(eps^2))"};
}

Outcome ac8() {
  double prev = 0.0;
  double worst_change = 0.0;
  double largest = 0.0;
  for (double mag : {0.01, 0.005, 0.0025}) {
    const double pair[] = {mag, -mag};
    const double r = t0_expansion_check(pair);
    largest = std::max(largest, r);
    if (prev > 0.0) worst_change = std::max(worst_change, std::abs(r / prev - 1.0));
    prev = r;
  }
  return {worst_change <= 0.1 && largest < 1e-3,
          "max remainder/|lambda|^3=" + sci(largest) + " change under halving=" +
              sci(worst_change) + " (<=0.1)"};
}

struct Criterion {
  std::function<Outcome()> run;
  double limit_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, Criterion> criteria = {
      {"AC1", {ac1, 10}}, {"AC2", {ac2, 30}}, {"AC3", {ac3, 30}}, {"AC4", {ac4, 20}},
      {"AC5", {ac5, 180}}, {"AC6", {ac6, 60}}, {"AC7", {ac7, 30}}, {"AC8", {ac8, 5}},
  };
  std::vector<std::string> selected;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) selected.emplace_back(argv[i]);
  } else {
    for (const auto& [name, _] : criteria) selected.push_back(name);
  }

  bool all_pass = true;
  for (const auto& name : selected) {
    const auto it = criteria.find(name);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = it->second.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= it->second.limit_seconds;
    const bool pass = outcome.pass && in_time;
    all_pass = all_pass && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "(%.2fs / limit %.0fs)", seconds,
                  it->second.limit_seconds);
    std::cout << name << (pass ? " PASS " : " FAIL ") << outcome.detail << " " << timing
              << (in_time ? "" : " runtime exceeded") << "\n";
  }
  return all_pass ? 0 : 1;
}
