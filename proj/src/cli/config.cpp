#include "qie/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qie/errors.hpp"

namespace qie::cli {
namespace {

int line_of(const YAML::Node& node) { return node.Mark().is_null() ? 0 : node.Mark().line + 1; }

[[noreturn]] void fail(const std::string& field, const YAML::Node& node, const std::string& msg) {
  throw ConfigError(field, line_of(node), msg);
}

template <class T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(field, node, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(field, node, "cannot read '" + node.Scalar() + "'");
  }
}

void require_keys(const YAML::Node& map, const std::string& where,
                  std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where + "." + key, kv.first, "unknown key");
    }
  }
}

std::vector<int> parse_n(const YAML::Node& node) {
  std::vector<int> out;
  if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(scalar<int>(item, "sweep.n"));
  } else if (node.IsMap()) {
    require_keys(node, "sweep.n", {"from", "to", "step"});
    if (!node["from"] || !node["to"]) fail("sweep.n", node, "range needs 'from' and 'to'");
    const int from = scalar<int>(node["from"], "sweep.n.from");
    const int to = scalar<int>(node["to"], "sweep.n.to");
    const int step = node["step"] ? scalar<int>(node["step"], "sweep.n.step") : 1;
    if (step < 1) fail("sweep.n.step", node["step"], "step must be >= 1");
    if (to < from) fail("sweep.n", node, "'to' is below 'from'");
    for (int n = from; n <= to; n += step) out.push_back(n);
  } else {
    out.push_back(scalar<int>(node, "sweep.n"));
  }
  for (const int n : out) {
    if (n < 1) fail("sweep.n", node, "qubit counts must be >= 1");
  }
  return out;
}

std::vector<double> parse_beta(const YAML::Node& node) {
  std::vector<double> out;
  if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(scalar<double>(item, "sweep.beta"));
  } else if (node.IsMap()) {
    require_keys(node, "sweep.beta", {"from", "to", "count", "spacing", "include_zero"});
    if (!node["from"] || !node["to"] || !node["count"]) {
      fail("sweep.beta", node, "range needs 'from', 'to' and 'count'");
    }
    const double from = scalar<double>(node["from"], "sweep.beta.from");
    const double to = scalar<double>(node["to"], "sweep.beta.to");
    const int count = scalar<int>(node["count"], "sweep.beta.count");
    const std::string spacing =
        node["spacing"] ? scalar<std::string>(node["spacing"], "sweep.beta.spacing") : "log";
    if (spacing != "log" && spacing != "linear") {
      fail("sweep.beta.spacing", node["spacing"], "expected 'log' or 'linear'");
    }
    if (count < 1) fail("sweep.beta.count", node["count"], "count must be >= 1");
    if (!(to >= from) || !std::isfinite(to) || !(from >= 0.0)) {
      fail("sweep.beta", node, "need 0 <= from <= to < inf");
    }
    if (spacing == "log" && !(from > 0.0)) fail("sweep.beta.from", node["from"], "log spacing needs from > 0");
    out = spaced_grid(from, to, count, spacing == "log");
    if (node["include_zero"] && scalar<bool>(node["include_zero"], "sweep.beta.include_zero")) {
      out.push_back(0.0);
    }
  } else {
    out.push_back(scalar<double>(node, "sweep.beta"));
  }
  for (const double b : out) {
    if (!(b >= 0.0)) fail("sweep.beta", node, "inverse temperatures must be >= 0");
  }
  return out;
}

SweepOutput parse_output(const YAML::Node& node) {
  const auto text = scalar<std::string>(node, "sweep.outputs");
  for (auto o : {SweepOutput::mean_work, SweepOutput::variance, SweepOutput::nsr,
                 SweepOutput::lambda_w, SweepOutput::sigma, SweepOutput::tur_q,
                 SweepOutput::ratio_Rm}) {
    if (text == to_string(o)) return o;
  }
  fail("sweep.outputs", node, "unknown output '" + text + "'");
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string_view to_string(SweepPath path) {
  switch (path) {
    case SweepPath::direct: return "direct";
    case SweepPath::closed_form: return "closed_form";
    case SweepPath::both: return "both";
  }
  return "?";
}

std::string_view to_string(SweepOutput output) {
  switch (output) {
    case SweepOutput::mean_work: return "mean_work";
    case SweepOutput::variance: return "variance";
    case SweepOutput::nsr: return "nsr";
    case SweepOutput::lambda_w: return "lambda_w";
    case SweepOutput::sigma: return "sigma";
    case SweepOutput::tur_q: return "tur_q";
    case SweepOutput::ratio_Rm: return "ratio_Rm";
  }
  return "?";
}

ConfigError::ConfigError(const std::string& field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         field + ": " + message),
      field_(field),
      message_(message),
      line_(line) {}

bool SweepConfig::wants(SweepOutput output) const {
  return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

void SweepConfig::validate() const {
  if (n_values.empty()) throw ConfigError("sweep.n", 0, "grid is empty");
  if (beta_values.empty()) throw ConfigError("sweep.beta", 0, "grid is empty");
  if (modes.empty()) throw ConfigError("sweep.modes", 0, "no coupling modes");
  if (outputs.empty()) throw ConfigError("sweep.outputs", 0, "no outputs");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("sweep.omega", 0, "omega must be finite and > 0");
  }
  if (!(erasure_entropy >= kMinimalErasureEntropy)) {
    throw ConfigError("sweep.erasure_entropy", 0, "erasure entropy must be >= ln 2");
  }
  for (const int n : n_values) {
    if (n < 1) throw ConfigError("sweep.n", 0, "qubit counts must be >= 1");
  }
  for (const double b : beta_values) {
    if (!(b >= 0.0)) throw ConfigError("sweep.beta", 0, "inverse temperatures must be >= 0");
  }
}

SweepConfig parse_sweep_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<yaml>", e.mark.line + 1, e.msg);
  }
  if (!root.IsMap() || !root["sweep"]) throw ConfigError("sweep", 0, "missing top-level 'sweep' map");
  const YAML::Node s = root["sweep"];
  if (!s.IsMap()) fail("sweep", s, "expected a map");
  require_keys(s, "sweep",
               {"n", "beta", "omega", "modes", "erasure_entropy", "outputs", "ratio_m", "path"});

  SweepConfig cfg;
  if (!s["n"]) fail("sweep.n", s, "required");
  if (!s["beta"]) fail("sweep.beta", s, "required");
  cfg.n_values = parse_n(s["n"]);
  cfg.beta_values = parse_beta(s["beta"]);
  if (s["omega"]) cfg.omega = scalar<double>(s["omega"], "sweep.omega");
  if (s["erasure_entropy"]) {
    cfg.erasure_entropy = scalar<double>(s["erasure_entropy"], "sweep.erasure_entropy");
  }
  if (const auto modes = s["modes"]) {
    if (!modes.IsSequence()) fail("sweep.modes", modes, "expected a list");
    cfg.modes.clear();
    for (const auto& item : modes) {
      try {
        cfg.modes.push_back(parse_coupling_mode(scalar<std::string>(item, "sweep.modes")));
      } catch (const DomainError& e) {
        fail("sweep.modes", item, e.what());
      }
    }
    sort_unique(cfg.modes);
  }
  if (const auto outputs = s["outputs"]) {
    if (!outputs.IsSequence()) fail("sweep.outputs", outputs, "expected a list");
    cfg.outputs.clear();
    for (const auto& item : outputs) cfg.outputs.push_back(parse_output(item));
    sort_unique(cfg.outputs);
  }
  if (const auto ratio = s["ratio_m"]) {
    if (!ratio.IsSequence()) fail("sweep.ratio_m", ratio, "expected a list");
    cfg.ratio_twice_m.clear();
    for (const auto& item : ratio) {
      const double m = scalar<double>(item, "sweep.ratio_m");
      const double twice = 2.0 * m;
      if (!(m > 0.0) || twice != std::round(twice)) {
        fail("sweep.ratio_m", item, "m must be a positive integer or half-integer");
      }
      cfg.ratio_twice_m.push_back(static_cast<int>(twice));
    }
    sort_unique(cfg.ratio_twice_m);
  }
  if (const auto path = s["path"]) {
    const auto text = scalar<std::string>(path, "sweep.path");
    if (text == "direct") {
      cfg.path = SweepPath::direct;
    } else if (text == "closed_form") {
      cfg.path = SweepPath::closed_form;
    } else if (text == "both") {
      cfg.path = SweepPath::both;
    } else {
      fail("sweep.path", path, "expected direct, closed_form or both");
    }
  }
  sort_unique(cfg.n_values);
  sort_unique(cfg.beta_values);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    const auto key = e.field().substr(e.field().find('.') + 1);
    const YAML::Node at = s[key] ? s[key] : s;
    throw ConfigError(e.field(), line_of(at), e.message());
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", 0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

std::vector<double> spaced_grid(double from, double to, int count, bool log_spacing) {
  std::vector<double> out;
  if (count < 1) return out;
  if (count == 1) return {from};
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(log_spacing ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                              : from + t * (to - from));
  }
  // Pin the endpoints against rounding in exp/log.
  out.front() = from;
  out.back() = to;
  return out;
}

}  // namespace qie::cli
