// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qthermo/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace qthermo::cli {

namespace {

int line_of(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  return m.line >= 0 ? m.line + 1 : 0;
}

std::string format_message(const std::string& source, int line, const std::string& msg) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line;
  os << ": " << msg;
  return os.str();
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    throw ConfigError(source_, line_of(n), msg);
  }

  void require_map(const YAML::Node& n, const std::string& what) const {
    if (!n.IsMap()) fail(n, what + " must be a table");
  }

  // Every key must be in `allowed`.
  void check_keys(const YAML::Node& table, const std::set<std::string>& allowed,
                  const std::string& where) const {
    for (const auto& kv : table) {
      const std::string key = kv.first.as<std::string>();
      if (allowed.count(key) == 0) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail(kv.first, "unknown key '" + key + "' in " + where + " (expected one of: " + list + ")");
      }
    }
  }

  double real(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "'" + key + "' must be a number");
    double v = 0.0;
    try {
      v = n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, "'" + key + "' must be a number, got '" + n.Scalar() + "'");
    }
    if (!std::isfinite(v)) fail(n, "'" + key + "' must be finite");
    return v;
  }

  std::string text(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, "'" + key + "' must be a string");
    return n.Scalar();
  }

  std::uint64_t unsigned_int(const YAML::Node& n, const std::string& key) const {
    const std::string s = text(n, key);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      fail(n, "'" + key + "' must be a non-negative integer, got '" + s + "'");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      fail(n, "'" + key + "' is out of range");
    }
  }

 private:
  std::string source_;
};

Scenario parse_scenario(const Reader& r, const YAML::Node& n) {
  const std::string s = r.text(n, "scenario");
  if (s == "two-level-decoherence") return Scenario::TwoLevelDecoherence;
  if (s == "device-steady") return Scenario::DeviceSteady;
  if (s == "device-trajectory") return Scenario::DeviceTrajectory;
  if (s == "gamma-sweep") return Scenario::GammaSweep;
  r.fail(n, "unknown scenario '" + s +
                "' (expected two-level-decoherence, device-steady, device-trajectory or gamma-sweep)");
}

void parse_two_level(const Reader& r, const YAML::Node& params, TwoLevelDecoherenceParams& p) {
  r.check_keys(params, {"gamma", "e_level", "x", "z"}, "params");
  for (const auto& kv : params) {
    const std::string key = kv.first.as<std::string>();
    const double v = r.real(kv.second, key);
    if (key == "gamma") p.gamma = v;
    else if (key == "e_level") p.e_level = v;
    else if (key == "x") p.x = v;
    else p.z = v;
  }
}

void parse_device(const Reader& r, const YAML::Node& params, Scenario scenario, RunConfig& cfg) {
  std::set<std::string> allowed{"e_l", "e_r", "v", "n_l", "n_r"};
  if (scenario == Scenario::GammaSweep) {
    allowed.insert("gammas");
  } else {
    allowed.insert("gamma");
  }
  if (scenario == Scenario::DeviceTrajectory) allowed.insert("init");
  r.check_keys(params, allowed, "params");

  DeviceParams& p = cfg.device;
  for (const auto& kv : params) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "gammas") {
      if (!v.IsSequence() || v.size() == 0) r.fail(v, "'gammas' must be a non-empty list");
      for (const auto& g : v) {
        const double x = r.real(g, "gammas");
        if (x < 0.0) r.fail(g, "'gammas' entries must be non-negative");
        if (!cfg.gammas.empty() && x <= cfg.gammas.back()) {
          r.fail(g, "'gammas' must be strictly ascending");
        }
        cfg.gammas.push_back(x);
      }
    } else if (key == "init") {
      const std::string s = r.text(v, "init");
      if (s == "mixed") cfg.init = DeviceInit::Mixed;
      else if (s == "ground") cfg.init = DeviceInit::Ground;
      else if (s == "random") cfg.init = DeviceInit::Random;
      else r.fail(v, "unknown init '" + s + "' (expected mixed, ground or random)");
    } else {
      const double x = r.real(v, key);
      if (key == "e_l") p.e_l = x;
      else if (key == "e_r") p.e_r = x;
      else if (key == "v") p.v = x;
      else if (key == "n_l") p.n_l = x;
      else if (key == "n_r") p.n_r = x;
      else p.gamma = x;
    }
  }
  if (scenario == Scenario::GammaSweep && cfg.gammas.empty()) {
    r.fail(params, "gamma-sweep needs a 'gammas' list in params");
  }
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::TwoLevelDecoherence: return "two-level-decoherence";
    case Scenario::DeviceSteady: return "device-steady";
    case Scenario::DeviceTrajectory: return "device-trajectory";
    case Scenario::GammaSweep: return "gamma-sweep";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

ConfigError::ConfigError(const std::string& source, int line, const std::string& msg)
    : std::runtime_error(format_message(source, line, msg)), line_(line) {}

RunConfig parse_config(const std::string& text, const std::string& source) {
  const Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source, 0, "top level must be a table");
  r.check_keys(root, {"scenario", "seed", "onsager_c", "output", "integrator", "params"},
               "the top level");

  RunConfig cfg;
  if (!root["scenario"]) throw ConfigError(source, 0, "missing required key 'scenario'");
  cfg.scenario = parse_scenario(r, root["scenario"]);

  if (const YAML::Node n = root["seed"]) cfg.seed = r.unsigned_int(n, "seed");
  if (const YAML::Node n = root["onsager_c"]) {
    cfg.onsager_c = r.real(n, "onsager_c");
    if (!(cfg.onsager_c > 0.0)) r.fail(n, "'onsager_c' must be positive");
  }

  if (const YAML::Node out = root["output"]) {
    r.require_map(out, "output");
    r.check_keys(out, {"format", "path"}, "output");
    if (const YAML::Node f = out["format"]) {
      const std::string s = r.text(f, "format");
      if (s == "csv") cfg.format = OutputFormat::Csv;
      else if (s == "json") cfg.format = OutputFormat::Json;
      else r.fail(f, "unknown format '" + s + "' (expected csv or json)");
    }
    if (const YAML::Node p = out["path"]) cfg.output_path = r.text(p, "path");
  }

  if (const YAML::Node integ = root["integrator"]) {
    r.require_map(integ, "integrator");
    r.check_keys(integ, {"dt", "t_max"}, "integrator");
    if (!integ["t_max"]) r.fail(integ, "integrator needs 't_max'");
    IntegratorConfig ic{std::nullopt, r.real(integ["t_max"], "t_max")};
    if (!(ic.t_max > 0.0)) r.fail(integ["t_max"], "'t_max' must be positive");
    if (const YAML::Node dt = integ["dt"]) {
      ic.dt = r.real(dt, "dt");
      if (!(*ic.dt > 0.0) || *ic.dt >= ic.t_max) r.fail(dt, "'dt' must lie in (0, t_max)");
    }
    cfg.integrator = ic;
  }
  if (cfg.scenario == Scenario::DeviceTrajectory && !cfg.integrator) {
    throw ConfigError(source, 0, "device-trajectory needs an 'integrator' table with 't_max'");
  }
  if ((cfg.scenario == Scenario::DeviceSteady || cfg.scenario == Scenario::GammaSweep) &&
      cfg.integrator) {
    r.fail(root["integrator"], "'integrator' is not used by " + to_string(cfg.scenario));
  }

  const YAML::Node params = root["params"];
  if (params) r.require_map(params, "params");
  const YAML::Node anchor = params ? params : root;
  try {
    if (cfg.scenario == Scenario::TwoLevelDecoherence) {
      if (params) parse_two_level(r, params, cfg.two_level);
      validate(cfg.two_level);
    } else {
      if (params) {
        parse_device(r, params, cfg.scenario, cfg);
      } else if (cfg.scenario == Scenario::GammaSweep) {
        r.fail(root, "gamma-sweep needs a 'gammas' list in params");
      }
      validate(cfg.device);
    }
  } catch (const Error& e) {
    r.fail(anchor, std::string("invalid params: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file '" + path + "'");
  return parse_config(buf.str(), path);
}

}  // namespace qthermo::cli
