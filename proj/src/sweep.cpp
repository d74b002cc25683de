#include "cvnet/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cvnet/errors.hpp"

namespace cvnet::cli {

namespace {

using sympgauss::CovMatrix;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string value_label(SweepVariable variable, double value) {
  return std::string(to_string(variable)) + " = " + format_number(value);
}

void require_physical(const CovMatrix& v, const char* stage, SweepVariable variable, double value,
                      const Tolerances& tol) {
  const auto report = sympgauss::is_physical(v, tol);
  if (!report.physical) {
    throw Error(ErrorKind::ComputeError, std::string(stage) + " state is unphysical at " +
                                             value_label(variable, value) + " (margin " +
                                             format_number(report.margin) + ")");
  }
}

}  // namespace

telenet::NetworkSpec apply_sweep_value(const telenet::NetworkSpec& base, SweepVariable variable,
                                       double value) {
  telenet::NetworkSpec spec = base;
  switch (variable) {
    case SweepVariable::NModes:
      spec.n_elements = static_cast<int>(std::lround(value));
      break;
    case SweepVariable::Distance:
      spec.channel.distance = value;
      break;
    case SweepVariable::Depth:
      spec.noise.depth = value;
      break;
    case SweepVariable::G3:
      spec.element.g3 = value;
      break;
  }
  return spec;
}

ResultRow evaluate_point(const telenet::NetworkSpec& base, SweepVariable variable, double value,
                         const Tolerances& tol) {
  const telenet::NetworkSpec spec = apply_sweep_value(base, variable, value);
  spec.validate();

  ResultRow row{};
  row.variable = variable;
  row.value = value;
  row.eta = telenet::network_transmissivity(spec.channel);
  const auto margins = qelement::stability_margins(spec.element);
  row.S1 = margins.s1;
  row.S2 = margins.s2;
  row.S3 = margins.s3;

  row.stable = qelement::is_stable(spec.element);
  for (const auto& [index, params] : spec.overrides) {
    row.stable = row.stable && qelement::is_stable(params);
  }
  if (!row.stable) return row;

  const int n = spec.n_elements;
  std::vector<CovMatrix> pairs;
  pairs.reserve(n);
  for (int j = 0; j < n; ++j) {
    pairs.push_back(qelement::output_pair_cm(spec.element_at(j), spec.noise, tol));
    require_physical(pairs.back(), "element output", variable, value, tol);
  }
  const CovMatrix bob = telenet::bell_condition(pairs, tol);
  require_physical(bob, "conditional Bob", variable, value, tol);

  const CovMatrix lossy = telenet::apply_network_loss(bob, spec);
  require_physical(lossy, "post-channel", variable, value, tol);

  row.eta_minus = telenet::one_vs_rest_eta(lossy, tol);
  row.F = sympgauss::fidelity_from_eig(*row.eta_minus);
  row.E_N = telenet::pair_entanglement(lossy, 0, 1, tol);
  return row;
}

unsigned default_thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CVNET_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

std::vector<ResultRow> run_sweep(const RunConfig& config, unsigned threads) {
  const auto& values = config.sweep.values;
  const std::size_t count = values.size();
  std::vector<ResultRow> rows(count);
  std::vector<std::exception_ptr> failures(count);

  const auto work = [&](std::size_t k) {
    try {
      rows[k] = evaluate_point(config.network, config.sweep.variable, values[k],
                               config.tolerances);
    } catch (...) {
      failures[k] = std::current_exception();
    }
  };

  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) work(k);
      });
    }
  }

  for (std::size_t k = 0; k < count; ++k) {
    if (!failures[k]) continue;
    const std::string where = value_label(config.sweep.variable, values[k]);
    try {
      std::rethrow_exception(failures[k]);
    } catch (const Error& e) {
      throw Error(ErrorKind::ComputeError, "sweep point " + where + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorKind::ComputeError, "sweep point " + where + ": " + e.what());
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "sweep_var,value,eta,eta_minus,E_N,F,stable,S1,S2,S3\n";
  for (const auto& r : rows) {
    out << to_string(r.variable) << ',' << format_number(r.value) << ',' << format_number(r.eta)
        << ',' << format_optional(r.eta_minus) << ',' << format_optional(r.E_N) << ','
        << format_optional(r.F) << ',' << (r.stable ? "true" : "false") << ','
        << format_number(r.S1) << ',' << format_number(r.S2) << ',' << format_number(r.S3) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  using nlohmann::ordered_json;
  const auto opt = [](const std::optional<double>& v) -> ordered_json {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  ordered_json doc = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["sweep_var"] = to_string(r.variable);
    row["value"] = r.value;
    row["eta"] = r.eta;
    row["eta_minus"] = opt(r.eta_minus);
    row["E_N"] = opt(r.E_N);
    row["F"] = opt(r.F);
    row["stable"] = r.stable;
    row["S1"] = r.S1;
    row["S2"] = r.S2;
    row["S3"] = r.S3;
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

void emit_results(const RunConfig& config, const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto write = [&](std::ostream& sink) {
    if (config.outputs.format == OutputFormat::Json) {
      write_json(sink, rows);
    } else {
      write_csv(sink, rows);
    }
  };
  if (config.outputs.path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(config.outputs.path, std::ios::binary);
  if (!file) throw Error(ErrorKind::ConfigError, "cannot write " + config.outputs.path);
  write(file);
}

}  // namespace cvnet::cli
