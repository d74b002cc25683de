#include "cvnet/device_calc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "cvnet/errors.hpp"

namespace cvnet::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double positive_field(const json& node, const char* key, std::vector<std::string>& issues) {
  const std::string path = std::string("device.") + key;
  if (!node.contains(key)) {
    issues.push_back(path + ": missing");
    return 0.0;
  }
  if (!node.at(key).is_number() || !(node.at(key).get<double>() > 0.0)) {
    issues.push_back(path + ": must be a positive number");
    return 0.0;
  }
  return node.at(key).get<double>();
}

}  // namespace

DeviceConfig load_device_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  std::vector<std::string> issues;
  DeviceConfig cfg;
  if (!doc.is_object() || !doc.contains("device") || !doc.at("device").is_object()) {
    issues.push_back("device: missing");
  } else {
    const json& d = doc.at("device");
    cfg.device = {positive_field(d, "n0", issues), positive_field(d, "C", issues),
                  positive_field(d, "Ar", issues), positive_field(d, "T", issues),
                  positive_field(d, "tau", issues), positive_field(d, "vF", issues)};
  }
  if (!doc.is_object() || !doc.contains("frequencies") || !doc.at("frequencies").is_object()) {
    issues.push_back("frequencies: missing");
  } else {
    const json& f = doc.at("frequencies");
    if (f.contains("values") && f.at("values").is_array()) {
      for (const auto& v : f.at("values")) {
        if (!v.is_number()) {
          issues.push_back("frequencies.values: entries must be numbers");
          break;
        }
        cfg.omegas.push_back(v.get<double>());
      }
    } else if (f.contains("start") && f.contains("stop") && f.contains("count") &&
               f.at("start").is_number() && f.at("stop").is_number() &&
               f.at("count").is_number_integer() && f.at("count").get<int>() >= 1) {
      cfg.omegas = linear_grid(f.at("start").get<double>(), f.at("stop").get<double>(),
                               f.at("count").get<int>());
    } else {
      issues.push_back("frequencies: need \"values\" or \"start\"/\"stop\"/\"count\"");
    }
    for (double w : cfg.omegas) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        issues.push_back("frequencies: angular frequencies must be positive");
        break;
      }
    }
    if (cfg.omegas.empty() && issues.empty()) issues.push_back("frequencies: empty");
  }
  if (doc.is_object() && doc.contains("outputs") && doc.at("outputs").is_object()) {
    const json& o = doc.at("outputs");
    if (o.contains("path") && o.at("path").is_string()) cfg.outputs.path = o.at("path");
    if (o.contains("format")) {
      if (o.at("format") == "json") {
        cfg.outputs.format = OutputFormat::Json;
      } else if (o.at("format") != "csv") {
        issues.push_back("outputs.format: must be \"csv\" or \"json\"");
      }
    }
  }
  if (!issues.empty()) {
    std::string message = "invalid device configuration:";
    for (const auto& i : issues) message += " [" + i + "]";
    throw Error(ErrorKind::ConfigError, message);
  }
  return cfg;
}

DeviceConfig load_device_config_file(const std::string& path) {
  return load_device_config_text(read_text_file(path));
}

DeviceResult run_device_calc(const DeviceConfig& config) {
  DeviceResult result;
  for (double w : config.omegas) {
    result.rows.push_back(gplasmon::evaluate_device(config.device, w));
    const std::size_t k = result.rows.size() - 1;
    if (k == 0) continue;
    const auto prev = result.rows[k - 1].conductivity.log_argument;
    const auto cur = result.rows[k].conductivity.log_argument;
    const bool left_half = prev.real() < 0.0 && cur.real() < 0.0;
    if (left_half && std::signbit(prev.imag()) != std::signbit(cur.imag())) {
      result.branch_crossings.push_back(k);
    }
  }
  return result;
}

void write_device_csv(std::ostream& out, const DeviceResult& result) {
  out << "omega,mu1,mu2,sigma1_re,sigma1_im,sigma2_re,sigma2_im,beta1_re,beta1_im,"
         "beta2_re,beta2_im,eps1_re,eps1_im,eps2_re,eps2_im,branch_warning\n";
  std::size_t next_crossing = 0;
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const auto& r = result.rows[k];
    bool warn = r.conductivity.near_branch_cut;
    if (next_crossing < result.branch_crossings.size() && result.branch_crossings[next_crossing] == k) {
      warn = true;
      ++next_crossing;
    }
    const auto& s = r.conductivity.sigma;
    out << num(r.omega) << ',' << num(r.mu.zeroth.real()) << ',' << num(r.mu.first.real()) << ','
        << num(s.zeroth.real()) << ',' << num(s.zeroth.imag()) << ',' << num(s.first.real()) << ','
        << num(s.first.imag()) << ',' << num(r.beta1.real()) << ',' << num(r.beta1.imag()) << ','
        << num(r.beta2.real()) << ',' << num(r.beta2.imag()) << ',' << num(r.eps.zeroth.real())
        << ',' << num(r.eps.zeroth.imag()) << ',' << num(r.eps.first.real()) << ','
        << num(r.eps.first.imag()) << ',' << (warn ? "true" : "false") << '\n';
  }
}

void write_device_json(std::ostream& out, const DeviceResult& result) {
  const auto cx = [](std::complex<double> z) { return ordered_json::array({z.real(), z.imag()}); };
  ordered_json doc;
  doc["rows"] = ordered_json::array();
  for (const auto& r : result.rows) {
    ordered_json row;
    row["omega"] = r.omega;
    row["mu1"] = r.mu.zeroth.real();
    row["mu2"] = r.mu.first.real();
    row["sigma1"] = cx(r.conductivity.sigma.zeroth);
    row["sigma2"] = cx(r.conductivity.sigma.first);
    row["beta1"] = cx(r.beta1);
    row["beta2"] = cx(r.beta2);
    row["eps1"] = cx(r.eps.zeroth);
    row["eps2"] = cx(r.eps.first);
    row["near_branch_cut"] = r.conductivity.near_branch_cut;
    doc["rows"].push_back(std::move(row));
  }
  doc["branch_crossings"] = result.branch_crossings;
  out << doc.dump(2) << '\n';
}

void emit_device_results(const DeviceConfig& config, const DeviceResult& result,
                         std::ostream& out) {
  const auto write = [&](std::ostream& sink) {
    if (config.outputs.format == OutputFormat::Json) {
      write_device_json(sink, result);
    } else {
      write_device_csv(sink, result);
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
