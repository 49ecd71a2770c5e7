#include "floquet3/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "floquet3/error.hpp"
#include "floquet3/quadrature.hpp"

namespace floquet3 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSymmetryTol = 1e-12;

double wrap_unit(double t) {
  double w = t - std::floor(t);
  return w >= 1.0 ? 0.0 : w;
}

ModeMap complete_modes(const std::vector<FourierMode>& modes, const char* name) {
  ModeMap given;
  for (const auto& m : modes) {
    if (m.n == 0) {
      throw InvalidInput(std::string("mean-zero violated: ") + name +
                         " has an n=0 mode");
    }
    if (!std::isfinite(m.value.real()) || !std::isfinite(m.value.imag())) {
      throw InvalidInput(std::string(name) + " mode " + std::to_string(m.n) +
                         " is not finite");
    }
    if (!given.emplace(m.n, m.value).second) {
      throw InvalidInput(std::string(name) + " mode " + std::to_string(m.n) +
                         " listed twice");
    }
  }
  ModeMap full = given;
  for (const auto& [n, v] : given) {
    auto partner = given.find(-n);
    if (partner == given.end()) {
      full[-n] = std::conj(v);
      continue;
    }
    const double scale = 1.0 + std::abs(v);
    if (std::abs(partner->second - std::conj(v)) > kSymmetryTol * scale) {
      throw InvalidInput(std::string("conjugate-asymmetric ") + name +
                         " modes at n=" + std::to_string(std::abs(n)));
    }
  }
  return full;
}

bool modes_trivial(const ModeMap& modes) {
  return std::all_of(modes.begin(), modes.end(),
                     [](const auto& kv) { return kv.second == cplx{}; });
}

cplx fourier_sum(const ModeMap& modes, double t) {
  cplx s{};
  for (const auto& [n, v] : modes) s += v * std::polar(1.0, kTwoPi * n * t);
  return s;
}

void validate_piecewise(const PiecewiseProfile& pw) {
  const auto& b = pw.breakpoints;
  if (b.empty()) throw InvalidInput("piecewise: no breakpoints");
  if (pw.p_values.size() != b.size() || pw.q_values.size() != b.size()) {
    throw InvalidInput(
        "piecewise: p_values and q_values need one entry per breakpoint");
  }
  if (b.front() != 0.0) {
    throw InvalidInput("piecewise: first breakpoint must be 0");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i]) || b[i] < 0.0 || b[i] >= 1.0) {
      throw InvalidInput("piecewise: breakpoints must lie in [0, 1)");
    }
    if (i > 0 && !(b[i] > b[i - 1])) {
      throw InvalidInput("piecewise: breakpoints must be strictly increasing");
    }
    if (!std::isfinite(pw.p_values[i]) || !std::isfinite(pw.q_values[i])) {
      throw InvalidInput("piecewise: values must be finite");
    }
  }
  auto check_mean = [&](const std::vector<double>& v, const char* name) {
    double mean = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double len = (i + 1 < b.size() ? b[i + 1] : 1.0) - b[i];
      mean += len * v[i];
      mass += len * std::abs(v[i]);
    }
    if (std::abs(mean) > 1e-12 * (1.0 + mass)) {
      throw InvalidInput(std::string("mean-zero violated: piecewise ") + name +
                         " has mean " + std::to_string(mean));
    }
  };
  check_mean(pw.p_values, "p");
  check_mean(pw.q_values, "q");
}

double piece_value(const PiecewiseProfile& pw, const std::vector<double>& values,
                   double t) {
  const double w = wrap_unit(t);
  auto it = std::upper_bound(pw.breakpoints.begin(), pw.breakpoints.end(), w);
  const auto idx = static_cast<std::size_t>(it - pw.breakpoints.begin()) - 1;
  return values[idx];
}

double circular_variation(const std::vector<double>& values) {
  double tv = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    tv += std::abs(values[(i + 1) % values.size()] - values[i]);
  }
  return tv;
}

double mode_variation_bound(const ModeMap& modes) {
  // TV of a trigonometric polynomial is at most sum |2 pi n c_n|.
  double tv = 0.0;
  for (const auto& [n, v] : modes) tv += kTwoPi * std::abs(n) * std::abs(v);
  return tv;
}

}  // namespace

PeriodicCoefficients PeriodicCoefficients::zero() { return {}; }

bool PeriodicCoefficients::is_zero() const noexcept {
  if (piecewise_) {
    auto zero = [](double v) { return v == 0.0; };
    return std::all_of(piecewise_->p_values.begin(), piecewise_->p_values.end(),
                       zero) &&
           std::all_of(piecewise_->q_values.begin(), piecewise_->q_values.end(),
                       zero);
  }
  return modes_trivial(p_modes_) && modes_trivial(q_modes_);
}

double PeriodicCoefficients::p(double t) const {
  if (piecewise_) return piece_value(*piecewise_, piecewise_->p_values, t);
  // Conjugate-symmetric sum: the imaginary part is roundoff and is dropped.
  return p_series(wrap_unit(t)).real();
}

double PeriodicCoefficients::q(double t) const {
  if (piecewise_) return piece_value(*piecewise_, piecewise_->q_values, t);
  return q_series(wrap_unit(t)).real();
}

cplx PeriodicCoefficients::p_series(double t) const {
  return fourier_sum(p_modes_, t);
}

cplx PeriodicCoefficients::q_series(double t) const {
  return fourier_sum(q_modes_, t);
}

std::vector<double> PeriodicCoefficients::breakpoints() const {
  std::vector<double> out;
  if (piecewise_) out = piecewise_->breakpoints;
  if (out.empty() || out.front() != 0.0) out.insert(out.begin(), 0.0);
  out.push_back(1.0);
  return out;
}

double PeriodicCoefficients::total_variation_p() const {
  return piecewise_ ? circular_variation(piecewise_->p_values)
                    : mode_variation_bound(p_modes_);
}

double PeriodicCoefficients::total_variation_q() const {
  return piecewise_ ? circular_variation(piecewise_->q_values)
                    : mode_variation_bound(q_modes_);
}

ModeMap piecewise_modes(const std::vector<double>& breakpoints,
                        const std::vector<double>& values, int n_max) {
  ModeMap out;
  for (int n = 1; n <= n_max; ++n) {
    cplx c{};
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      if (values[i] == 0.0) continue;
      const double lo = breakpoints[i];
      const double hi = i + 1 < breakpoints.size() ? breakpoints[i + 1] : 1.0;
      // int_lo^hi e^{-i 2 pi n t} dt
      const cplx seg = (std::polar(1.0, -kTwoPi * n * lo) -
                        std::polar(1.0, -kTwoPi * n * hi)) /
                       cplx(0.0, kTwoPi * n);
      c += values[i] * seg;
    }
    out[n] = c;
    out[-n] = std::conj(c);
  }
  return out;
}

PeriodicCoefficients make_coefficients(const CoefficientDescription& spec,
                                       int n_modes) {
  PeriodicCoefficients c;
  if (spec.piecewise) {
    if (!spec.p_modes.empty() || !spec.q_modes.empty()) {
      throw InvalidInput("give either Fourier modes or a piecewise profile, not both");
    }
    if (n_modes < 1) throw InvalidInput("piecewise mode cutoff must be >= 1");
    validate_piecewise(*spec.piecewise);
    c.kind_ = ProfileKind::PiecewiseConstant;
    c.piecewise_ = spec.piecewise;
    c.p_modes_ = piecewise_modes(spec.piecewise->breakpoints,
                                 spec.piecewise->p_values, n_modes);
    c.q_modes_ = piecewise_modes(spec.piecewise->breakpoints,
                                 spec.piecewise->q_values, n_modes);
  } else {
    c.kind_ = ProfileKind::FiniteFourier;
    c.p_modes_ = complete_modes(spec.p_modes, "p");
    c.q_modes_ = complete_modes(spec.q_modes, "q");
  }
  if (c.is_zero()) throw InvalidInput("trivial coefficients: p = q = 0");
  return c;
}

double eval_p(const PeriodicCoefficients& c, double t) { return c.p(t); }
double eval_q(const PeriodicCoefficients& c, double t) { return c.q(t); }

double compute_h(const ModeMap& p_modes, const ModeMap& q_modes) {
  double sum = 0.0;
  for (const auto& [n, v] : p_modes) {
    if (n == 0) continue;
    const double k = kTwoPi * n;
    sum += std::norm(v) / (k * k);
  }
  for (const auto& [n, v] : q_modes) {
    if (n == 0) continue;
    const double k2 = (kTwoPi * n) * (kTwoPi * n);
    sum -= 3.0 * std::norm(v) / (k2 * k2);
  }
  return sum / 3.0;
}

double compute_h(const PeriodicCoefficients& c) {
  if (c.kind() == ProfileKind::PiecewiseConstant) {
    return compute_h_truncated(c).value;
  }
  return compute_h(c.p_modes(), c.q_modes());
}

TruncatedH compute_h_truncated(const PeriodicCoefficients& c, int n_max) {
  if (n_max < 1) throw InvalidInput("mode cutoff must be >= 1");
  TruncatedH out;
  out.modes = n_max;
  if (c.kind() == ProfileKind::PiecewiseConstant) {
    const auto& pw = *c.piecewise();
    out.value = compute_h(piecewise_modes(pw.breakpoints, pw.p_values, n_max),
                          piecewise_modes(pw.breakpoints, pw.q_values, n_max));
    // |c_n| <= TV / (2 pi |n|); sum_{n > N} n^-k <= 1 / ((k - 1) N^(k-1)).
    const double vp = c.total_variation_p() / kTwoPi;
    const double vq = c.total_variation_q() / kTwoPi;
    const double n = n_max;
    const double tp = 2.0 * vp * vp / std::pow(kTwoPi, 2) / (3.0 * n * n * n);
    const double tq =
        2.0 * 3.0 * vq * vq / std::pow(kTwoPi, 4) / (5.0 * std::pow(n, 5));
    out.tail_bound = (tp + tq) / 3.0;
    return out;
  }
  ModeMap p;
  ModeMap q;
  for (const auto& [k, v] : c.p_modes()) {
    if (std::abs(k) <= n_max) p.emplace(k, v);
  }
  for (const auto& [k, v] : c.q_modes()) {
    if (std::abs(k) <= n_max) q.emplace(k, v);
  }
  out.value = compute_h(p, q);
  // The discarded modes are known exactly, so the tail is their contribution.
  const double full = compute_h(c.p_modes(), c.q_modes());
  out.tail_bound = std::abs(full - out.value);
  return out;
}

double compute_kappa(const PeriodicCoefficients& c, double quad_tol) {
  if (c.is_zero()) return 0.0;
  const auto splits = c.breakpoints();
  auto integrand = [&c](double t) { return std::abs(c.p(t)) + std::abs(c.q(t)); };
  return integrate_split(integrand, 0.0, 1.0, splits, quad_tol).value;
}

}  // namespace floquet3
