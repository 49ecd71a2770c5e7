#include "floquet3/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include "floquet3/floquet3.hpp"

namespace floquet3::cli {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream& out, const std::string& command,
                  const RunConfig& cfg, const Params& params) {
  out << "# floquet3 " << command << "\n";
  out << "# spec=" << cfg.spec_path << "\n";
  for (const auto& [key, value] : params) out << "# " << key << "=" << value << "\n";
}

const char* case_label(double h) {
  if (h > 0.0) return "case i";
  if (h < 0.0) return "case ii";
  return "case undetermined";
}

IntegratorOptions integrator(const RunConfig& cfg) {
  IntegratorOptions o;
  o.tol = cfg.tol;
  return o;
}

BandOptions band_options(const RunConfig& cfg) {
  BandOptions o;
  o.window = cfg.window;
  o.tol_lambda = cfg.tol_lambda;
  o.integrator.tol = cfg.tol;
  return o;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string(what) + " must be a positive number");
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + " must be finite");
}

std::string list_to_string(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_short(v[i], 6);
  }
  return s;
}

// ---- verify -------------------------------------------------------------

struct CheckOutcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  const char* name;
  std::function<CheckOutcome()> run;
};

CheckOutcome bound_check(double value, double limit) {
  std::ostringstream d;
  d << format_short(value, 3) << " <= " << format_short(limit, 3);
  return {value <= limit, d.str()};
}

std::vector<Check> invariant_suite(const PeriodicCoefficients& c, const RunConfig& cfg) {
  const IntegratorOptions opts = integrator(cfg);
  const double eps = cfg.epsilon;
  std::vector<Check> checks;

  checks.push_back({"coefficients-real", [&c] {
    double worst = 0.0;
    for (int k = 0; k < 257; ++k) {
      const double t = k / 256.0;
      if (c.kind() == ProfileKind::FiniteFourier) {
        worst = std::max({worst, std::abs(c.p_series(t).imag()), std::abs(c.q_series(t).imag())});
      }
    }
    return bound_check(worst, 1e-12);
  }});

  checks.push_back({"h-reflection-symmetry", [&c] {
    ModeMap pr, qr;
    for (const auto& [n, v] : c.p_modes()) pr[-n] = v;
    for (const auto& [n, v] : c.q_modes()) qr[-n] = v;
    const double a = compute_h(c.p_modes(), c.q_modes());
    return bound_check(std::abs(a - compute_h(pr, qr)), 1e-14 * std::max(1.0, std::abs(a)));
  }});

  checks.push_back({"free-discriminant-closed-form", [&c, opts] {
    double worst = 0.0;
    for (double lambda : {-20.0, -3.0, 1.0, 5.0, 30.0}) {
      const DiscriminantSample s = rho_at(c, lambda, 0.0, opts);
      const cplx want = rho0_closed_form(cube_root_branch(lambda));
      worst = std::max(worst, std::abs(s.rho - want) / std::abs(want));
    }
    return bound_check(worst, 1e-8);
  }});

  const std::vector<double> lambdas = {-10.0, -3.0, -0.5, 0.0, 0.5, 3.0, 10.0};

  checks.push_back({"determinant-one", [&c, opts, eps, lambdas] {
    double worst = 0.0;
    for (double lambda : lambdas) {
      for (double e : {-eps, eps}) {
        worst = std::max(worst, integrate_monodromy(c, lambda, e, opts).det_residual);
      }
    }
    return bound_check(worst, 1e-10);
  }});

  checks.push_back({"j-identity", [&c, opts, eps, lambdas] {
    double worst = 0.0;
    for (double lambda : lambdas) {
      for (double e : {-eps, eps}) {
        worst = std::max(worst, integrate_monodromy(c, lambda, e, opts).j_residual);
      }
    }
    return bound_check(worst, 1e-8);
  }});

  checks.push_back({"reciprocal-multipliers", [&c, opts, eps] {
    double worst = 0.0;
    for (double lambda : {-8.0, -2.0, 2.0, 8.0}) {
      const MultiplierSet ms = multipliers_at(c, lambda, eps, opts);
      for (const cplx t : ms.taus) {
        const cplx mirror = 1.0 / std::conj(t);
        double best = 1e300;
        for (const cplx u : ms.taus) best = std::min(best, std::abs(u - mirror));
        worst = std::max(worst, best / std::max(1.0, std::abs(mirror)));
      }
    }
    return bound_check(worst, 1e-8);
  }});

  checks.push_back({"discriminant-trace-vs-roots", [&c, opts, eps] {
    double worst = 0.0;
    for (double lambda : {-6.0, -1.0, 0.25, 4.0}) {
      const Monodromy m = integrate_monodromy(c, lambda, eps, opts);
      const TraceData td = trace_of(m);
      const double rho = discriminant_from_trace(td);
      const cplx roots = discriminant_from_roots(solve_cubic(char_poly(td)));
      worst = std::max(worst, std::abs(roots - rho) / std::max(1.0, discriminant_scale(td)));
    }
    return bound_check(worst, 1e-7);
  }});

  checks.push_back({"first-order-trace-zero", [&c, opts] {
    double worst = 0.0;
    for (double lambda : {-4.0, 0.0, 1.5, 7.0}) {
      worst = std::max(worst, std::abs(series_terms(c, lambda, 1, opts)[1].t_n));
    }
    return bound_check(worst, 1e-9);
  }});

  checks.push_back({"second-order-trace-vs-h", [&c, opts] {
    const TruncatedH h = compute_h_truncated(c);
    const double series = series_terms(c, 0.0, 2, opts)[2].t_n.real();
    const double oracle = t2_real_oracle(c);
    const double dev = std::max(std::abs(series + 3 * h.value), std::abs(oracle + 3 * h.value));
    return bound_check(dev, 1e-7 + 3 * h.tail_bound);
  }});

  checks.push_back({"kernel-identities", [] {
    return bound_check(fourier_kernel_check().max_deviation(), 1e-10);
  }});

  checks.push_back({"truncation-bound", [&c, opts, eps] {
    const double kappa = compute_kappa(c);
    double worst = 0.0;
    for (double lambda : {-1.0, 0.0, 1.0}) {
      const auto terms = series_terms(c, lambda, 4, opts);
      const Monodromy mono = integrate_monodromy(c, lambda, eps, opts);
      ComplexMatrix3 partial = ComplexMatrix3::Zero();
      for (int n = 1; n <= 4; ++n) {
        partial += std::pow(eps, n - 1) * terms[n - 1].m_n;
        const double bound = truncation_bound(n, eps, kappa, mono.z0);
        if (bound > 0.0) worst = std::max(worst, spectral_norm(mono.m - partial) / bound);
      }
    }
    return bound_check(worst, 1.0);
  }});

  checks.push_back({"band-case", [&c, &cfg, eps] {
    const double h = compute_h_truncated(c).value;
    const BandReport r = find_band3(c, eps, band_options(cfg));
    std::ostringstream d;
    d << "h=" << format_short(h) << " found=" << (r.found ? "true" : "false");
    if (h < 0.0) return CheckOutcome{!r.found, d.str()};
    if (!r.found) return CheckOutcome{false, d.str()};
    const double mid = 0.5 * (r.r_minus + r.r_plus);
    const DiscriminantSample s = rho_at(c, mid, eps, band_options(cfg).integrator);
    d << " rho(mid)=" << format_short(s.rho.real());
    return CheckOutcome{s.rho.real() < 0.0, d.str()};
  }});

  return checks;
}

}  // namespace

void parse_lambda_range(const std::string& text, double& lo, double& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InvalidInput("lambda range must look like lo:hi, got \"" + text + "\"");
  }
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
  } catch (const std::logic_error&) {
    throw InvalidInput("lambda range must look like lo:hi, got \"" + text + "\"");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidInput("lambda range needs finite lo < hi, got \"" + text + "\"");
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidInput("not a number in list: \"" + item + "\"");
    }
  }
  if (out.empty()) throw InvalidInput("empty number list");
  return out;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

std::string format_short(double x, int digits) {
  if (x == 0.0) return "0";
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, x);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  const int exponent = std::stoi(s.substr(e + 1));
  return mant + "e" + std::to_string(exponent);
}

int cmd_h(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const PeriodicCoefficients c = load_coefficients(cfg.spec_path);
  const TruncatedH h = compute_h_truncated(c);
  const double kappa = compute_kappa(c, 1e-12);
  Params params{{"kappa_quad_tol", format_short(1e-12, 3)}};
  if (c.kind() == ProfileKind::PiecewiseConstant) {
    params.emplace_back("modes", std::to_string(h.modes));
    params.emplace_back("h_tail_bound", format_short(h.tail_bound, 3));
  }
  write_header(out, "h", cfg, params);
  if (cfg.format == OutputFormat::Csv) {
    out << "h,kappa,case\n";
    out << format_real(h.value) << "," << format_real(kappa) << "," << case_label(h.value) << "\n";
  } else {
    out << "h=" << format_short(h.value) << ", " << case_label(h.value) << "\n";
    out << "kappa=" << format_short(kappa) << "\n";
  }
  return kExitOk;
}

int cmd_rho_scan(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  check_finite(cfg.epsilon, "--eps");
  check_positive(cfg.tol, "--tol");
  if (cfg.points < 2) throw InvalidInput("--points must be at least 2");
  const PeriodicCoefficients c = load_coefficients(cfg.spec_path);
  const auto samples =
      scan_rho(c, cfg.epsilon, cfg.lambda_lo, cfg.lambda_hi, cfg.points, integrator(cfg));
  write_header(out, "rho-scan", cfg,
               {{"eps", format_short(cfg.epsilon, 6)},
                {"lambda_range", format_short(cfg.lambda_lo, 6) + ":" + format_short(cfg.lambda_hi, 6)},
                {"points", std::to_string(cfg.points)},
                {"tol", format_short(cfg.tol, 3)},
                {"rho_zero_rel_tol", format_short(kRhoZeroTol, 3)}});
  const char sep = cfg.format == OutputFormat::Csv ? ',' : ' ';
  out << "lambda" << sep << "rho" << sep << "multiplicity\n";
  for (const auto& s : samples) {
    out << format_real(s.lambda.real()) << sep << format_real(s.rho.real()) << sep
        << to_string(classify_rho(s)) << "\n";
  }
  return kExitOk;
}

int cmd_band(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  check_finite(cfg.epsilon, "--eps");
  check_positive(cfg.window, "--window");
  check_positive(cfg.tol, "--tol");
  check_positive(cfg.tol_lambda, "--tol-lambda");
  const PeriodicCoefficients c = load_coefficients(cfg.spec_path);
  const BandReport r = find_band3(c, cfg.epsilon, band_options(cfg));
  write_header(out, "band", cfg,
               {{"eps", format_short(cfg.epsilon, 6)},
                {"window", format_short(cfg.window, 6)},
                {"tol", format_short(cfg.tol, 3)},
                {"tol_lambda", format_short(cfg.tol_lambda, 3)}});
  if (cfg.format == OutputFormat::Csv) {
    out << "epsilon,h,found,r_minus,r_plus,width,residual_minus,residual_plus\n";
    out << format_real(r.epsilon) << "," << format_real(r.h_value) << ","
        << (r.found ? "true" : "false") << "," << format_real(r.r_minus) << ","
        << format_real(r.r_plus) << "," << format_real(r.width) << ","
        << format_real(r.endpoint_residuals[0]) << "," << format_real(r.endpoint_residuals[1])
        << "\n";
    return kExitOk;
  }
  out << "h=" << format_short(r.h_value) << ", " << case_label(r.h_value) << "\n";
  out << "found=" << (r.found ? "true" : "false") << "\n";
  if (r.found) {
    out << "r_minus=" << format_real(r.r_minus) << "\n";
    out << "r_plus=" << format_real(r.r_plus) << "\n";
    out << "width=" << format_real(r.width) << "\n";
    out << "width/eps^3=" << format_real(r.width / std::pow(std::abs(r.epsilon), 3)) << "\n";
    out << "residual_minus=" << format_real(r.endpoint_residuals[0]) << "\n";
    out << "residual_plus=" << format_real(r.endpoint_residuals[1]) << "\n";
  }
  out << "center=" << format_real(r.center) << "\n";
  out << "evaluations=" << r.evaluations << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  check_positive(cfg.window, "--window");
  check_positive(cfg.tol, "--tol");
  check_positive(cfg.tol_lambda, "--tol-lambda");
  const PeriodicCoefficients c = load_coefficients(cfg.spec_path);
  const auto rows = width_sweep(c, cfg.eps_list, band_options(cfg));
  write_header(out, "sweep", cfg,
               {{"eps_list", list_to_string(cfg.eps_list)},
                {"window", format_short(cfg.window, 6)},
                {"tol", format_short(cfg.tol, 3)},
                {"tol_lambda", format_short(cfg.tol_lambda, 3)}});
  const char sep = cfg.format == OutputFormat::Csv ? ',' : ' ';
  out << "epsilon" << sep << "found" << sep << "r_minus" << sep << "r_plus" << sep << "width"
      << sep << "width_over_eps3\n";
  for (const auto& r : rows) {
    out << format_real(r.epsilon) << sep << (r.found ? "true" : "false") << sep
        << format_real(r.r_minus) << sep << format_real(r.r_plus) << sep << format_real(r.width)
        << sep << format_real(r.width_over_eps3) << "\n";
  }
  std::size_t found = 0;
  for (const auto& r : rows) found += r.found ? 1 : 0;
  if (found < 3) {
    out << "# fit: unavailable (" << found << " rows with a band)\n";
    return kExitOk;
  }
  const FitResult fit = fit_width_law(rows);
  out << "# fit: exponent=" << format_real(fit.exponent) << "\n";
  out << "# fit: constant=" << format_real(fit.constant) << "\n";
  out << "# fit: prefactor=" << format_real(fit.prefactor) << "\n";
  out << "# fit: residual=" << format_real(fit.residual) << "\n";
  out << "# fit: rows_used=" << fit.rows_used << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_finite(cfg.epsilon, "--eps");
  check_positive(cfg.tol, "--tol");
  const PeriodicCoefficients c = load_coefficients(cfg.spec_path);
  write_header(out, "verify", cfg,
               {{"eps", format_short(cfg.epsilon, 6)},
                {"window", format_short(cfg.window, 6)},
                {"tol", format_short(cfg.tol, 3)},
                {"tol_lambda", format_short(cfg.tol_lambda, 3)}});
  std::optional<std::string> first_failure;
  for (const Check& check : invariant_suite(c, cfg)) {
    CheckOutcome outcome;
    try {
      outcome = check.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    out << (outcome.pass ? "PASS " : "FAIL ") << check.name << ": " << outcome.detail << "\n";
    if (!outcome.pass && !first_failure) first_failure = check.name;
  }
  if (first_failure) {
    out << "verify: FAILED (first failing invariant: " << *first_failure << ")\n";
    err << "verify: first failing invariant: " << *first_failure << "\n";
    return kExitVerification;
  }
  out << "verify: all invariants hold\n";
  return kExitOk;
}

int run_guarded(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  Command cmd = nullptr;
  if (name == "h") cmd = cmd_h;
  else if (name == "rho-scan") cmd = cmd_rho_scan;
  else if (name == "band") cmd = cmd_band;
  else if (name == "sweep") cmd = cmd_sweep;
  else if (name == "verify") cmd = cmd_verify;
  if (!cmd) {
    err << "floquet3: unknown command \"" << name << "\"\n";
    return kExitUsage;
  }
  try {
    // Buffer the report so a failing run leaves no partial output file.
    std::ostringstream buffer;
    const int code = cmd(cfg, buffer, err);
    if (cfg.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) {
        err << "floquet3: cannot open output file " << cfg.out_path << "\n";
        return kExitUsage;
      }
      file << buffer.str();
    }
    return code;
  } catch (const SpecParseError& e) {
    err << "floquet3: " << cfg.spec_path;
    if (e.line() > 0) err << ":" << e.line();
    err << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "floquet3: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "floquet3: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace floquet3::cli
