#pragma once

// JSON run configuration.  Units: rates and couplings in ω_m, distance in km,
// attenuation in dB/km.
//
//   {
//     "network": {
//       "n_elements": 3,
//       "element": {"gamma_m": 0.001, "gamma_2": 0.02, "gamma_3": 0.02,
//                   "g2": 0.2, "g3": 0.14},
//       "noise": {"purity": 1.0, "depth": 0.497, "phase": 0.0},
//       "channel": {"alpha": 0.005, "distance": 0.1, "eta0": 0.99},
//       "overrides": [{"index": 0, "element": {...}}]          (optional)
//     },
//     "sweep": {"variable": "n_modes", "values": [2, 3, 4]}
//           or {"variable": "distance", "start": 0, "stop": 20, "count": 21},
//     "outputs": {"path": "out.csv", "format": "csv"},          (optional)
//     "tolerances": {"physicality": 1e-10, ...}                  (optional)
//   }

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvnet/qelement.hpp"
#include "cvnet/telenet.hpp"
#include "cvnet/tolerances.hpp"

namespace cvnet::cli {

enum class SweepVariable { NModes, Distance, Depth, G3 };

const char* to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::NModes;
  std::vector<double> values;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
};

struct RunConfig {
  telenet::NetworkSpec network;
  SweepSpec sweep;
  OutputSpec outputs;
  Tolerances tolerances;
};

struct ConfigIssue {
  std::string path;  // dotted JSON path, e.g. "network.channel.alpha"
  std::string message;
};

struct ValidationReport {
  std::vector<ConfigIssue> issues;
  std::optional<RunConfig> config;
  std::optional<bool> stable;
  std::optional<qelement::StabilityMargins> margins;

  bool ok() const { return issues.empty() && config.has_value(); }
  /// Machine-readable summary: {"ok": ..., "errors": [...], ...}.
  std::string to_json() const;
};

/// Schema, range and stability checks; never throws for bad input.
ValidationReport validate_config_text(std::string_view text);
ValidationReport validate_config_file(const std::string& path);

/// Parses and validates; throws ConfigError listing every issue.
RunConfig load_config_file(const std::string& path);
RunConfig load_config_text(std::string_view text);

/// Linear grid with `count` points from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, int count);

std::string read_text_file(const std::string& path);

}  // namespace cvnet::cli
