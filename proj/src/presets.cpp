#include "cvnet/presets.hpp"

#include <fstream>

#include "cvnet/errors.hpp"
#include "cvnet/sweep.hpp"

namespace cvnet::cli {

namespace {

constexpr double kOptimalDepth = 0.497;

std::string depth_tag(double depth) { return depth == 0.0 ? "D0" : "D0.497"; }

std::vector<double> mode_counts(int first, int last) {
  std::vector<double> out;
  for (int n = first; n <= last; ++n) out.push_back(n);
  return out;
}

RunConfig curve(telenet::NetworkSpec network, SweepVariable variable, std::vector<double> values) {
  RunConfig cfg;
  cfg.network = std::move(network);
  cfg.sweep = {variable, std::move(values)};
  return cfg;
}

// E_N and F against N for both depths, lossless and lossy panels.
std::vector<PresetCurve> mode_count_panels(const std::string& prefix) {
  std::vector<PresetCurve> curves;
  for (const bool lossy : {false, true}) {
    for (const double depth : {0.0, kOptimalDepth}) {
      telenet::NetworkSpec net = reference_network();
      net.noise.depth = depth;
      if (!lossy) net.channel = lossless_channel();
      curves.push_back({prefix + (lossy ? "_lossy_" : "_lossless_") + depth_tag(depth) + ".csv",
                        curve(net, SweepVariable::NModes, mode_counts(2, 10))});
    }
  }
  return curves;
}

}  // namespace

telenet::NetworkSpec reference_network() {
  telenet::NetworkSpec net;
  net.n_elements = 3;
  net.element = qelement::reference_parameters();
  net.noise = {1.0, kOptimalDepth, 0.0};
  net.channel = {0.005, 0.1, 0.99};
  return net;
}

telenet::Channel lossless_channel() { return {0.0, 0.0, 1.0}; }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig3", "fig4", "fig5a", "fig5b", "figB", "fig6"};
  return names;
}

std::vector<PresetCurve> preset_curves(std::string_view name) {
  if (name == "fig3") return mode_count_panels("fig3");
  if (name == "fig4") return mode_count_panels("fig4");

  std::vector<PresetCurve> curves;
  if (name == "fig5a") {
    for (const auto& [tag, distance] :
         {std::pair{"l0", 0.0}, {"l0.1", 0.1}, {"l1", 1.0}, {"l10", 10.0}}) {
      telenet::NetworkSpec net = reference_network();
      net.channel.distance = distance;
      curves.push_back({std::string("fig5a_") + tag + ".csv",
                        curve(net, SweepVariable::NModes, mode_counts(2, 10))});
    }
  } else if (name == "fig5b") {
    for (const int n : {3, 4, 5}) {
      telenet::NetworkSpec net = reference_network();
      net.n_elements = n;
      curves.push_back({"fig5b_N" + std::to_string(n) + ".csv",
                        curve(net, SweepVariable::Distance, linear_grid(0.0, 25.0, 251))});
    }
  } else if (name == "figB") {
    curves.push_back({"figB.csv", curve(reference_network(), SweepVariable::G3,
                                        linear_grid(0.10, 0.25, 1501))});
  } else if (name == "fig6") {
    for (const int n : {3, 4, 5}) {
      telenet::NetworkSpec net = reference_network();
      net.n_elements = n;
      curves.push_back({"fig6_N" + std::to_string(n) + ".csv",
                        curve(net, SweepVariable::Depth, linear_grid(0.0, kOptimalDepth, 498))});
    }
  } else {
    throw Error(ErrorKind::UnknownPreset, std::string(name));
  }
  return curves;
}

std::vector<std::filesystem::path> run_preset(std::string_view name,
                                              const std::filesystem::path& out_dir,
                                              unsigned threads) {
  const auto curves = preset_curves(name);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& c : curves) {
    const auto rows = run_sweep(c.config, threads);
    const auto path = out_dir / c.file_name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
    write_csv(file, rows);
    written.push_back(path);
  }
  return written;
}

}  // namespace cvnet::cli
