#include <cmath>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "roughflow/config.hpp"
#include "roughflow/errors.hpp"
#include "roughflow/experiments.hpp"
#include "roughflow/fit.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  roughflow::Config cfg = roughflow::Config::parse_file(config_path);
  if (cfg.has("output")) {
    for (const std::string& p : roughflow::run_experiment_to_files(cfg))
      std::printf("wrote %s\n", p.c_str());
  } else {
    roughflow::ExperimentOutput out = roughflow::run_experiment(cfg);
    std::fputs(out.csv.c_str(), stdout);
    std::fputs(out.summary_json.c_str(), stdout);
  }
  return 0;
}

int cmd_fit(const std::string& csv_path, const std::string& mode) {
  auto points = roughflow::read_xy_csv(csv_path);
  std::sort(points.begin(), points.end());
  roughflow::FitModel model =
      mode == "psi" ? roughflow::FitModel::Psi : roughflow::FitModel::Power;
  roughflow::ScalingFit fit = roughflow::fit_scaling(points, model);
  std::printf("slope = %s\n", roughflow::format_real(fit.slope).c_str());
  std::printf("intercept = %s\n", roughflow::format_real(fit.intercept).c_str());
  std::printf("residual = %s\n", roughflow::format_real(fit.residual).c_str());
  if (model == roughflow::FitModel::Psi) {
    std::printf("ratios =");
    for (double r : fit.psi_ratios) std::printf(" %s", roughflow::format_real(r).c_str());
    std::printf("\nsublinear = %s\n", fit.sublinear ? "yes" : "no");
  }
  return 0;
}

int cmd_field_check(const std::string& grid_path) {
  roughflow::Config cfg = roughflow::Config::parse_string(
      "experiment = field_check\ngrid = " + grid_path + "\n");
  roughflow::ExperimentOutput out = roughflow::run_experiment(cfg);
  std::fputs(out.csv.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical experiments on rough-field particle flows"};
  app.require_subcommand(1);

  std::string config_path, csv_path, grid_path, mode = "power";

  CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "flat key=value config file")->required();

  CLI::App* fit = app.add_subcommand("fit", "least-squares scaling fit of a CSV");
  fit->add_option("csv", csv_path, "CSV with x,y in the first two columns")->required();
  fit->add_option("--mode", mode, "psi or power")
      ->check(CLI::IsMember({"psi", "power"}));

  CLI::App* fc = app.add_subcommand("field-check", "validate a binary grid file");
  fc->add_option("grid", grid_path, "grid file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (fit->parsed()) return cmd_fit(csv_path, mode);
    if (fc->parsed()) return cmd_field_check(grid_path);
  } catch (const roughflow::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    for (const std::string& k : e.keys)
      std::fprintf(stderr, "  offending key: %s\n", k.c_str());
    return 2;
  } catch (const roughflow::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
