#pragma once

// `cvnet device-calc` configuration:
//
//   {
//     "device": {"n0": 1e17, "C": 1e-3, "Ar": 1e-12, "T": 3, "tau": 1e-12, "vF": 1e6},
//     "frequencies": {"values": [1.2e15]}            (angular, rad/s)
//                 or {"start": ..., "stop": ..., "count": ...},
//     "outputs": {"path": "device.csv", "format": "csv"}   (optional)
//   }

#include <iosfwd>
#include <string_view>
#include <vector>

#include "cvnet/config.hpp"
#include "cvnet/gplasmon.hpp"

namespace cvnet::cli {

struct DeviceConfig {
  gplasmon::GrapheneDevice device;
  std::vector<double> omegas;
  OutputSpec outputs;
};

DeviceConfig load_device_config_text(std::string_view text);
DeviceConfig load_device_config_file(const std::string& path);

struct DeviceResult {
  std::vector<gplasmon::DeviceRow> rows;
  /// Indices k where the interband log argument crosses the negative real
  /// axis between rows k-1 and k.
  std::vector<std::size_t> branch_crossings;
};

DeviceResult run_device_calc(const DeviceConfig& config);

void write_device_csv(std::ostream& out, const DeviceResult& result);
void write_device_json(std::ostream& out, const DeviceResult& result);
void emit_device_results(const DeviceConfig& config, const DeviceResult& result,
                         std::ostream& out);

}  // namespace cvnet::cli
