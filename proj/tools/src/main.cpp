#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "floquet3/commands.hpp"

int main(int argc, char** argv) {
  using namespace floquet3::cli;

  CLI::App app{"floquet3: multiplicity bands of a perturbed third-order periodic operator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string eps_list;
  std::string lambda_range;
  std::string format;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "Coefficient spec (JSON)")->required();
    sub->add_option("--tol", cfg.tol, "Integrator tolerance")->capture_default_str();
    sub->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "text"}));
  };

  auto* h = app.add_subcommand("h", "Print h, kappa and the predicted case");
  add_common(h);

  auto* scan = app.add_subcommand("rho-scan", "Tabulate rho and multiplicity on a lambda grid");
  add_common(scan);
  scan->add_option("--eps", cfg.epsilon, "Coupling")->capture_default_str();
  scan->add_option("--lambda-range", lambda_range, "lo:hi (default -1:1)");
  scan->add_option("--points", cfg.points, "Grid points")->capture_default_str();

  auto* band = app.add_subcommand("band", "Locate the multiplicity-3 interval");
  add_common(band);
  band->add_option("--eps", cfg.epsilon, "Coupling")->capture_default_str();
  band->add_option("--window", cfg.window, "Search window [-w, w]")->capture_default_str();
  band->add_option("--tol-lambda", cfg.tol_lambda, "Endpoint bracket length")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Band widths over a list of couplings, with power-law fit");
  add_common(sweep);
  sweep->add_option("--eps-list", eps_list, "Comma-separated couplings (default 0.16,0.08,0.04,0.02)");
  sweep->add_option("--window", cfg.window, "Search window [-w, w]")->capture_default_str();
  sweep->add_option("--tol-lambda", cfg.tol_lambda, "Endpoint bracket length")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on a spec");
  add_common(verify);
  verify->add_option("--eps", cfg.epsilon, "Coupling")->capture_default_str();
  verify->add_option("--window", cfg.window, "Search window [-w, w]")->capture_default_str();
  verify->add_option("--tol-lambda", cfg.tol_lambda, "Endpoint bracket length")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  cfg.format = (format.empty() ? name == "rho-scan" : format == "csv") ? OutputFormat::Csv
                                                                        : OutputFormat::Text;
  try {
    if (!lambda_range.empty()) parse_lambda_range(lambda_range, cfg.lambda_lo, cfg.lambda_hi);
    if (!eps_list.empty()) cfg.eps_list = parse_real_list(eps_list);
  } catch (const std::exception& e) {
    std::cerr << "floquet3: " << e.what() << "\n";
    return kExitUsage;
  }
  return run_guarded(name, cfg, std::cout, std::cerr);
}
