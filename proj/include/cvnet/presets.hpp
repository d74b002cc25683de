#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cvnet/config.hpp"

namespace cvnet::cli {

/// One curve of a figure preset: a sweep plus the file it is written to.
struct PresetCurve {
  std::string file_name;
  RunConfig config;
};

/// fig3, fig4, fig5a, fig5b, figB, fig6.
const std::vector<std::string>& preset_names();

/// Curves of a preset; throws UnknownPreset.
std::vector<PresetCurve> preset_curves(std::string_view name);

/// Reference network: γ_m = 0.001, γ₂ = γ₃ = 0.02, 𝒢₂ = 0.2, 𝒢₃ = 0.14,
/// 𝒟 = 0.497, N = 3, and the free-space channel α = 0.005 dB/km,
/// η₀ = 0.99, l = 0.1 km.
telenet::NetworkSpec reference_network();

/// Channel with η = 1.
telenet::Channel lossless_channel();

/// Runs every curve and writes CSV files into `out_dir`; returns their paths.
std::vector<std::filesystem::path> run_preset(std::string_view name,
                                              const std::filesystem::path& out_dir,
                                              unsigned threads = 0);

}  // namespace cvnet::cli
