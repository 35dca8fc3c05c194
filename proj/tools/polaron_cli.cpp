#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "polaron/cli.hpp"
#include "polaron/error.hpp"

namespace {

// 0 pass, 1 a check failed, 2 bad configuration or usage, 3 numerical failure.
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-polaron chain with Grassmann-valued open boundaries: identity checks, "
               "spectra and Bethe ansatz"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name = "text", dump_operator;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int grid = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config (model keys and run options)");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", format_name, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s; seed_given = true; },
        "random seed for sampled spectral points");
    sub->add_option("--tol", tol, "override every tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid, "eigencurve grid points")->check(CLI::NonNegativeNumber);
  };
  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Hamiltonian levels and t(u) eigencurves");
  CLI::App* bae = app.add_subcommand("bae", "solve the Bethe equations for every level");
  CLI::App* compare = app.add_subcommand("compare", "exact diagonalization against Bethe energies");
  for (CLI::App* sub : {verify, spectrum, bae, compare}) add_common(sub);
  spectrum->add_option("--dump-operator", dump_operator,
                       "write the explicit Hamiltonian as matrix JSON to this path");

  CLI11_PARSE(app, argc, argv);

  polaron::Report report;
  polaron::Format format;
  try {
    format = polaron::parse_format(format_name);
    polaron::RunConfig config;
    if (!config_path.empty()) config = polaron::load_run_config(config_path);
    if (seed_given) config.seed = seed;
    if (tol > 0.0) config.tol_identity = tol;
    if (grid > 0) config.fourier_grid = grid;
    config.model.validate();

    if (*verify) report = polaron::cmd_verify(config);
    else if (*spectrum) report = polaron::cmd_spectrum(config, dump_operator);
    else if (*bae) report = polaron::cmd_bae(config);
    else report = polaron::cmd_compare(config);
  } catch (const polaron::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool bad_input = e.code() == polaron::ErrorCode::ConfigError ||
                           e.code() == polaron::ErrorCode::SingularCoupling ||
                           e.code() == polaron::ErrorCode::SingularBoundary;
    return bad_input ? kConfigError : kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }

  const std::string text = polaron::render(report, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kConfigError;
    }
    f << text;
  }
  return polaron::exit_code(report);
}
