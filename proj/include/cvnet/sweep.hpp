#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvnet/config.hpp"

namespace cvnet::cli {

struct ResultRow {
  SweepVariable variable;
  double value;
  double eta;                       // channel transmissivity
  std::optional<double> eta_minus;  // 1-vs-rest PT symplectic minimum
  std::optional<double> E_N;        // Bob pair (0, 1)
  std::optional<double> F;
  bool stable;
  double S1, S2, S3;
};

/// Network with one sweep value applied.
telenet::NetworkSpec apply_sweep_value(const telenet::NetworkSpec& base, SweepVariable variable,
                                       double value);

/// Evaluates one sweep point: element CM -> Bell conditioning -> loss ->
/// E_N and F, with a physicality check after each stage.
ResultRow evaluate_point(const telenet::NetworkSpec& base, SweepVariable variable, double value,
                         const Tolerances& tol = {});

/// Rows in sweep order.  Points run on up to `threads` workers (0: use
/// CVNET_THREADS or the hardware concurrency).  Throws ComputeError naming
/// the first failing sweep value.
std::vector<ResultRow> run_sweep(const RunConfig& config, unsigned threads = 0);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);

/// Writes to config.outputs.path (or `out` when the path is empty).
void emit_results(const RunConfig& config, const std::vector<ResultRow>& rows, std::ostream& out);

/// Thread count from CVNET_THREADS, capped at the hardware concurrency.
unsigned default_thread_count();

}  // namespace cvnet::cli
