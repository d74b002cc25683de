// cvnet: sweeps, figure presets, config validation and the graphene
// device calculator.  Exit codes: 0 success, 2 configuration error,
// 3 computation error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cvnet/config.hpp"
#include "cvnet/device_calc.hpp"
#include "cvnet/errors.hpp"
#include "cvnet/presets.hpp"
#include "cvnet/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

int exit_code_for(const cvnet::Error& e) {
  switch (e.kind()) {
    case cvnet::ErrorKind::ConfigError:
    case cvnet::ErrorKind::UnknownPreset:
      return kExitConfig;
    default:
      return kExitCompute;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable teleportation network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string out_dir = ".";
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: CVNET_THREADS or all cores)");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
  sweep->add_option("--config", config_path, "Run configuration")->required();

  auto* preset = app.add_subcommand("preset", "Write the CSV curves of a figure preset");
  preset->add_option("name", preset_name, "fig3 | fig4 | fig5a | fig5b | figB | fig6")->required();
  preset->add_option("--out", out_dir, "Output directory");

  auto* validate = app.add_subcommand("validate", "Check a run configuration");
  validate->add_option("--config", config_path, "Run configuration")->required();

  auto* device = app.add_subcommand("device-calc", "Graphene conductivity and SPP dispersion");
  device->add_option("--config", config_path, "Device configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep) {
      const auto config = cvnet::cli::load_config_file(config_path);
      const auto rows = cvnet::cli::run_sweep(config, threads);
      cvnet::cli::emit_results(config, rows, std::cout);
    } else if (*preset) {
      for (const auto& path : cvnet::cli::run_preset(preset_name, out_dir, threads)) {
        std::cout << path.string() << '\n';
      }
    } else if (*validate) {
      const auto report = cvnet::cli::validate_config_file(config_path);
      std::cout << report.to_json() << '\n';
      return report.ok() ? 0 : kExitConfig;
    } else if (*device) {
      const auto config = cvnet::cli::load_device_config_file(config_path);
      const auto result = cvnet::cli::run_device_calc(config);
      for (std::size_t k : result.branch_crossings) {
        std::cerr << "warning: interband log argument crosses the branch cut before row " << k
                  << '\n';
      }
      cvnet::cli::emit_device_results(config, result, std::cout);
    }
  } catch (const cvnet::Error& e) {
    std::cerr << "cvnet: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "cvnet: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
