#include "cvnet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cvnet/errors.hpp"

namespace cvnet::cli {

using nlohmann::json;

namespace {

// Walks a JSON document and records every problem instead of stopping at
// the first one.
class Reader {
 public:
  explicit Reader(std::vector<ConfigIssue>& issues) : issues_(issues) {}

  void issue(const std::string& path, const std::string& message) {
    issues_.push_back({path, message});
  }

  const json* object(const json& parent, const std::string& key, const std::string& path,
                     bool required = true) {
    if (!parent.contains(key)) {
      if (required) issue(path, "missing");
      return nullptr;
    }
    const json& node = parent.at(key);
    if (!node.is_object()) {
      issue(path, "must be an object");
      return nullptr;
    }
    return &node;
  }

  std::optional<double> number(const json& parent, const std::string& key,
                               const std::string& path, bool required = true) {
    if (!parent.contains(key)) {
      if (required) issue(path, "missing");
      return std::nullopt;
    }
    const json& node = parent.at(key);
    if (!node.is_number()) {
      issue(path, "must be a number");
      return std::nullopt;
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) {
      issue(path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<int> integer(const json& parent, const std::string& key, const std::string& path,
                             bool required = true) {
    if (!parent.contains(key)) {
      if (required) issue(path, "missing");
      return std::nullopt;
    }
    const json& node = parent.at(key);
    if (!node.is_number_integer()) {
      issue(path, "must be an integer");
      return std::nullopt;
    }
    return node.get<int>();
  }

  // Range helpers return the value only if it satisfies the predicate.
  template <typename Pred>
  void require(const std::optional<double>& v, const std::string& path, Pred pred,
               const std::string& message) {
    if (v && !pred(*v)) issue(path, message);
  }

 private:
  std::vector<ConfigIssue>& issues_;
};

void read_element(Reader& r, const json& node, const std::string& path,
                  qelement::ElementParams& out) {
  const auto positive = [](double v) { return v > 0.0; };
  const auto gm = r.number(node, "gamma_m", path + ".gamma_m");
  const auto g2r = r.number(node, "gamma_2", path + ".gamma_2");
  const auto g3r = r.number(node, "gamma_3", path + ".gamma_3");
  const auto g2 = r.number(node, "g2", path + ".g2");
  const auto g3 = r.number(node, "g3", path + ".g3");
  r.require(gm, path + ".gamma_m", positive, "decay rate must be > 0");
  r.require(g2r, path + ".gamma_2", positive, "decay rate must be > 0");
  r.require(g3r, path + ".gamma_3", positive, "decay rate must be > 0");
  out = {gm.value_or(0.0), g2r.value_or(0.0), g3r.value_or(0.0), g2.value_or(0.0),
         g3.value_or(0.0)};
}

void read_noise(Reader& r, const json& node, qelement::MicrowaveNoise& out) {
  const auto purity = r.number(node, "purity", "network.noise.purity", false);
  const auto depth = r.number(node, "depth", "network.noise.depth");
  const auto phase = r.number(node, "phase", "network.noise.phase", false);
  r.require(purity, "network.noise.purity", [](double v) { return v > 0.0 && v <= 1.0; },
            "purity must lie in (0, 1]");
  r.require(depth, "network.noise.depth", [](double v) { return v >= 0.0 && v < 0.5; },
            "nonclassicality depth must lie in [0, 0.5)");
  out.purity = purity.value_or(1.0);
  out.depth = depth.value_or(0.0);
  out.phase = phase.value_or(0.0);
}

void read_channel(Reader& r, const json& node, telenet::Channel& out) {
  const auto alpha = r.number(node, "alpha", "network.channel.alpha");
  const auto distance = r.number(node, "distance", "network.channel.distance");
  const auto eta0 = r.number(node, "eta0", "network.channel.eta0");
  r.require(alpha, "network.channel.alpha", [](double v) { return v >= 0.0; },
            "attenuation must be >= 0 dB/km");
  r.require(distance, "network.channel.distance", [](double v) { return v >= 0.0; },
            "distance must be >= 0 km");
  r.require(eta0, "network.channel.eta0", [](double v) { return v > 0.0 && v <= 1.0; },
            "eta0 must lie in (0, 1]");
  out = {alpha.value_or(0.0), distance.value_or(0.0), eta0.value_or(1.0)};
}

void read_sweep(Reader& r, const json& node, SweepSpec& out) {
  if (!node.contains("variable") || !node.at("variable").is_string()) {
    r.issue("sweep.variable", "missing or not a string");
    return;
  }
  const auto variable = parse_sweep_variable(node.at("variable").get<std::string>());
  if (!variable) {
    r.issue("sweep.variable", "must be one of n_modes, distance, depth, g3");
    return;
  }
  out.variable = *variable;

  if (node.contains("values")) {
    const json& values = node.at("values");
    if (!values.is_array() || values.empty()) {
      r.issue("sweep.values", "must be a non-empty array");
      return;
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
      const std::string path = "sweep.values[" + std::to_string(k) + "]";
      if (!values[k].is_number() || !std::isfinite(values[k].get<double>())) {
        r.issue(path, "must be a finite number");
        continue;
      }
      out.values.push_back(values[k].get<double>());
    }
  } else {
    const auto start = r.number(node, "start", "sweep.start");
    const auto stop = r.number(node, "stop", "sweep.stop");
    const auto count = r.integer(node, "count", "sweep.count");
    if (count && *count < 1) r.issue("sweep.count", "must be >= 1");
    if (start && stop && count && *count >= 1) out.values = linear_grid(*start, *stop, *count);
  }

  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double v = out.values[k];
    const std::string path = "sweep.values[" + std::to_string(k) + "]";
    switch (out.variable) {
      case SweepVariable::NModes:
        if (v < 2.0 || v != std::floor(v)) r.issue(path, "n_modes must be an integer >= 2");
        break;
      case SweepVariable::Distance:
        if (v < 0.0) r.issue(path, "distance must be >= 0 km");
        break;
      case SweepVariable::Depth:
        if (v < 0.0 || v >= 0.5) r.issue(path, "nonclassicality depth must lie in [0, 0.5)");
        break;
      case SweepVariable::G3:
        break;
    }
  }
}

void read_outputs(Reader& r, const json& node, OutputSpec& out) {
  if (node.contains("path")) {
    if (!node.at("path").is_string()) {
      r.issue("outputs.path", "must be a string");
    } else {
      out.path = node.at("path").get<std::string>();
    }
  }
  if (node.contains("format")) {
    const json& f = node.at("format");
    if (f == "csv") {
      out.format = OutputFormat::Csv;
    } else if (f == "json") {
      out.format = OutputFormat::Json;
    } else {
      r.issue("outputs.format", "must be \"csv\" or \"json\"");
    }
  }
}

void read_tolerances(Reader& r, const json& node, Tolerances& out) {
  const std::pair<const char*, double*> fields[] = {
      {"symmetry", &out.symmetry},
      {"physicality", &out.physicality},
      {"positive_definite", &out.positive_definite},
      {"pairing", &out.pairing},
      {"pseudo_inverse", &out.pseudo_inverse},
      {"symplectic_check", &out.symplectic_check},
      {"moments_physicality", &out.moments_physicality},
      {"alice_condition", &out.alice_condition},
      {"dispersion_denominator", &out.dispersion_denominator},
  };
  for (const auto& [key, slot] : fields) {
    const std::string path = std::string("tolerances.") + key;
    const auto v = r.number(node, key, path, false);
    r.require(v, path, [](double x) { return x > 0.0; }, "tolerance must be > 0");
    if (v && *v > 0.0) *slot = *v;
  }
  for (const auto& item : node.items()) {
    bool known = false;
    for (const auto& [key, slot] : fields) known = known || item.key() == key;
    if (!known) r.issue("tolerances." + item.key(), "unknown tolerance");
  }
}

}  // namespace

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::NModes: return "n_modes";
    case SweepVariable::Distance: return "distance";
    case SweepVariable::Depth: return "depth";
    case SweepVariable::G3: return "g3";
  }
  return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  if (name == "n_modes") return SweepVariable::NModes;
  if (name == "distance") return SweepVariable::Distance;
  if (name == "depth") return SweepVariable::Depth;
  if (name == "g3") return SweepVariable::G3;
  return std::nullopt;
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw Error(ErrorKind::ConfigError, "grid count must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  for (int k = 0; k < count; ++k) {
    grid[k] = start + (stop - start) * static_cast<double>(k) / (count - 1);
  }
  grid.back() = stop;
  return grid;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ValidationReport::to_json() const {
  json out;
  out["ok"] = ok();
  out["errors"] = json::array();
  for (const auto& i : issues) out["errors"].push_back({{"path", i.path}, {"message", i.message}});
  if (stable) out["stable"] = *stable;
  if (margins) out["margins"] = {{"S1", margins->s1}, {"S2", margins->s2}, {"S3", margins->s3}};
  return out.dump(2);
}

ValidationReport validate_config_text(std::string_view text) {
  ValidationReport report;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    report.issues.push_back({"", std::string("invalid JSON: ") + e.what()});
    return report;
  }
  if (!doc.is_object()) {
    report.issues.push_back({"", "configuration must be a JSON object"});
    return report;
  }

  Reader r(report.issues);
  RunConfig cfg;
  if (const json* network = r.object(doc, "network", "network")) {
    const auto n = r.integer(*network, "n_elements", "network.n_elements");
    if (n && *n < 2) r.issue("network.n_elements", "must be >= 2");
    cfg.network.n_elements = n.value_or(2);
    if (const json* element = r.object(*network, "element", "network.element")) {
      read_element(r, *element, "network.element", cfg.network.element);
    }
    if (const json* noise = r.object(*network, "noise", "network.noise")) {
      read_noise(r, *noise, cfg.network.noise);
    }
    if (const json* channel = r.object(*network, "channel", "network.channel")) {
      read_channel(r, *channel, cfg.network.channel);
    }
    if (network->contains("overrides")) {
      const json& overrides = network->at("overrides");
      if (!overrides.is_array()) {
        r.issue("network.overrides", "must be an array");
      } else {
        for (std::size_t k = 0; k < overrides.size(); ++k) {
          const std::string path = "network.overrides[" + std::to_string(k) + "]";
          if (!overrides[k].is_object()) {
            r.issue(path, "must be an object");
            continue;
          }
          const auto index = r.integer(overrides[k], "index", path + ".index");
          qelement::ElementParams params;
          if (const json* element = r.object(overrides[k], "element", path + ".element")) {
            read_element(r, *element, path + ".element", params);
          }
          if (index && (*index < 0 || *index >= cfg.network.n_elements)) {
            r.issue(path + ".index", "element index out of range");
          } else if (index) {
            cfg.network.overrides[*index] = params;
          }
        }
      }
    }
  }
  if (const json* sweep = r.object(doc, "sweep", "sweep")) read_sweep(r, *sweep, cfg.sweep);
  if (const json* outputs = r.object(doc, "outputs", "outputs", false)) {
    read_outputs(r, *outputs, cfg.outputs);
  }
  if (const json* tolerances = r.object(doc, "tolerances", "tolerances", false)) {
    read_tolerances(r, *tolerances, cfg.tolerances);
  }

  if (!report.issues.empty()) return report;

  // Stability pre-check on the configured element(s).  A g3 sweep is allowed
  // to cross the boundary: those points become stable=false rows.
  try {
    report.margins = qelement::stability_margins(cfg.network.element);
    bool stable = qelement::is_stable(cfg.network.element);
    for (const auto& [index, params] : cfg.network.overrides) {
      stable = stable && qelement::is_stable(params);
    }
    report.stable = stable;
    if (!stable && cfg.sweep.variable != SweepVariable::G3) {
      r.issue("network.element", "element has no stable steady state");
    }
  } catch (const Error& e) {
    r.issue("network.element", e.what());
  }
  if (report.issues.empty()) report.config = std::move(cfg);
  return report;
}

ValidationReport validate_config_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    ValidationReport report;
    report.issues.push_back({"", e.what()});
    return report;
  }
  return validate_config_text(text);
}

namespace {
RunConfig unwrap(ValidationReport report) {
  if (report.ok()) return std::move(*report.config);
  std::string message = "invalid configuration:";
  for (const auto& i : report.issues) message += " [" + i.path + ": " + i.message + "]";
  throw Error(ErrorKind::ConfigError, message);
}
}  // namespace

RunConfig load_config_text(std::string_view text) { return unwrap(validate_config_text(text)); }

RunConfig load_config_file(const std::string& path) { return unwrap(validate_config_file(path)); }

}  // namespace cvnet::cli
