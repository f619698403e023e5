#include "egtsec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "egtsec/error.hpp"
#include "egtsec/format.hpp"

namespace egtsec {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    v.push_back(lo);
    return v;
  }
  for (int k = 0; k < count; ++k) {
    v.push_back(k == count - 1 ? hi : lo + (hi - lo) * k / (count - 1));
  }
  return v;
}

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw ConfigError("expected a finite number, got '" + std::string(s) + "'");
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> parse_grid(std::string_view s) {
  s = trim(s);
  if (s.find(':') != std::string_view::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("range grid must be lo:hi:count");
    const int count = parse_int<int>(parts[2]);
    if (count < 1) throw ConfigError("grid count must be at least 1");
    return linspace(parse_double(parts[0]), parse_double(parts[1]), count);
  }
  std::vector<double> out;
  for (auto tok : split(s, ',')) out.push_back(parse_double(tok));
  return out;
}

std::vector<int> parse_int_grid(std::string_view s) {
  std::vector<int> out;
  for (double v : parse_grid(s)) {
    if (v != std::round(v)) throw ConfigError("expected integer grid values");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<Scenario> parse_scenarios(std::string_view s) {
  std::vector<Scenario> out;
  for (auto tok : split(s, ',')) {
    Scenario sc;
    if (!tok.empty() && tok.back() == 's') {
      sc.subsidised = true;
      tok.remove_suffix(1);
    }
    sc.z = parse_int<int>(tok);
    out.push_back(sc);
  }
  return out;
}

Model parse_model(std::string_view s) {
  s = trim(s);
  if (s == "baseline") return Model::Baseline;
  if (s == "differential") return Model::Differential;
  throw ConfigError("model.type must be baseline or differential, got '" + std::string(s) + "'");
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + format_g17(v[k]);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + std::to_string(v[k]);
  return out;
}

struct KeyDef {
  std::string key;
  std::function<void(Config&, std::string_view)> parse;
  std::function<std::string(const Config&)> emit;
};

template <class Field>
KeyDef number_key(std::string key, Field field) {
  return {std::move(key), [field](Config& c, std::string_view v) { field(c) = parse_double(v); },
          [field](const Config& c) { return format_g17(field(const_cast<Config&>(c))); }};
}

std::vector<KeyDef> build_keys() {
  std::vector<KeyDef> keys;
  keys.push_back({"model.type", [](Config& c, std::string_view v) { c.model = parse_model(v); },
                  [](const Config& c) { return std::string(model_name(c.model)); }});
  for (const auto& name : parameter_names(Model::Baseline)) {
    keys.push_back(
        {"base." + name,
         [name](Config& c, std::string_view v) { set_parameter(c.baseline, name, parse_double(v)); },
         [name](const Config& c) { return format_g17(get_parameter(c.baseline, name)); }});
  }
  for (const auto& name : parameter_names(Model::Differential)) {
    keys.push_back(
        {"diff." + name,
         [name](Config& c, std::string_view v) { set_parameter(c.diff, name, parse_double(v)); },
         [name](const Config& c) { return format_g17(get_parameter(c.diff, name)); }});
  }
  keys.push_back({"pop.N", [](Config& c, std::string_view v) { c.pop.N = parse_int<int>(v); },
                  [](const Config& c) { return std::to_string(c.pop.N); }});
  keys.push_back({"pop.z", [](Config& c, std::string_view v) { c.pop.z = parse_int<int>(v); },
                  [](const Config& c) { return std::to_string(c.pop.z); }});
  keys.push_back(number_key("pop.beta", [](Config& c) -> double& { return c.pop.beta; }));
  keys.push_back(
      {"pop.subsidised", [](Config& c, std::string_view v) { c.pop.subsidised = parse_bool(v); },
       [](const Config& c) { return std::string(c.pop.subsidised ? "true" : "false"); }});

  keys.push_back({"sweep.param",
                  [](Config& c, std::string_view v) { c.sweep_param = std::string(trim(v)); },
                  [](const Config& c) { return c.sweep_param; }});
  keys.push_back({"sweep.grid",
                  [](Config& c, std::string_view v) { c.sweep_grid = parse_grid(v); },
                  [](const Config& c) { return join_doubles(c.sweep_grid); }});

  keys.push_back({"heatmap.z",
                  [](Config& c, std::string_view v) { c.heatmap_z = parse_int_grid(v); },
                  [](const Config& c) { return join_ints(c.heatmap_z); }});
  keys.push_back({"heatmap.beta",
                  [](Config& c, std::string_view v) { c.heatmap_beta = parse_grid(v); },
                  [](const Config& c) { return join_doubles(c.heatmap_beta); }});
  keys.push_back(
      {"heatmap.subsidised",
       [](Config& c, std::string_view v) { c.heatmap_subsidised = parse_bool(v); },
       [](const Config& c) { return std::string(c.heatmap_subsidised ? "true" : "false"); }});

  keys.push_back(
      {"random.n", [](Config& c, std::string_view v) { c.random_n = parse_int<std::size_t>(v); },
       [](const Config& c) { return std::to_string(c.random_n); }});
  keys.push_back({"random.scenarios",
                  [](Config& c, std::string_view v) { c.random_scenarios = parse_scenarios(v); },
                  [](const Config& c) {
                    std::string out;
                    for (std::size_t k = 0; k < c.random_scenarios.size(); ++k) {
                      const auto& s = c.random_scenarios[k];
                      out += (k ? ", " : "") + std::to_string(s.z) + (s.subsidised ? "s" : "");
                    }
                    return out;
                  }});
  keys.push_back(number_key("random.beta", [](Config& c) -> double& { return c.random_beta; }));

  for (Model m : {Model::Baseline, Model::Differential}) {
    for (const auto& name : parameter_names(m)) {
      keys.push_back({"range." + name,
                      [name](Config& c, std::string_view v) {
                        const auto parts = split(v, ',');
                        if (parts.size() != 2) throw ConfigError("range must be 'lo, hi'");
                        c.ranges[name] = Range{parse_double(parts[0]), parse_double(parts[1])};
                      },
                      [name](const Config& c) {
                        const Range& r = c.ranges.find(name)->second;
                        return format_g17(r.lo) + ", " + format_g17(r.hi);
                      }});
    }
  }

  keys.push_back({"robustness.param",
                  [](Config& c, std::string_view v) { c.robustness_param = std::string(trim(v)); },
                  [](const Config& c) { return c.resolved_robustness_param(); }});
  keys.push_back({"robustness.grid",
                  [](Config& c, std::string_view v) { c.robustness_grid = parse_grid(v); },
                  [](const Config& c) { return join_doubles(c.robustness_grid); }});
  keys.push_back({"robustness.n",
                  [](Config& c, std::string_view v) { c.robustness_n = parse_int<std::size_t>(v); },
                  [](const Config& c) { return std::to_string(c.robustness_n); }});

  keys.push_back({"welfare.z",
                  [](Config& c, std::string_view v) { c.welfare_z = parse_int_grid(v); },
                  [](const Config& c) { return join_ints(c.welfare_z); }});

  keys.push_back(number_key("sim.mu", [](Config& c) -> double& { return c.sim_mu; }));
  keys.push_back(
      {"sim.steps",
       [](Config& c, std::string_view v) { c.sim_steps = parse_int<std::uint64_t>(v); },
       [](const Config& c) { return std::to_string(c.sim_steps); }});
  keys.push_back(
      {"sim.burn_in",
       [](Config& c, std::string_view v) { c.sim_burn_in = parse_int<std::uint64_t>(v); },
       [](const Config& c) { return std::to_string(c.sim_burn_in); }});
  keys.push_back({"sim.replicas",
                  [](Config& c, std::string_view v) { c.sim_replicas = parse_int<int>(v); },
                  [](const Config& c) { return std::to_string(c.sim_replicas); }});
  return keys;
}

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> keys = build_keys();
  return keys;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string unknown_key_message(std::string_view key) {
  std::string msg = "unknown key '" + std::string(key) + "'";
  const auto dot = key.find('.');
  if (dot == std::string_view::npos) return msg;
  const std::string_view section = key.substr(0, dot + 1);
  const std::string_view name = key.substr(dot + 1);
  std::string best;
  std::size_t best_d = 3;  // suggest only within edit distance 2
  for (const auto& def : key_table()) {
    const std::string_view k = def.key;
    if (k.substr(0, section.size()) != section) continue;
    const std::string_view cand = k.substr(section.size());
    const std::size_t d = edit_distance(name, cand);
    if (d < best_d) {
      best_d = d;
      best = std::string(cand);
    }
  }
  if (!best.empty()) msg += " (did you mean " + best + ")";
  return msg;
}

}  // namespace

Config::Config()
    : sweep_grid(linspace(0.0, 10.0, 101)),
      heatmap_z(int_range(0, 20)),
      heatmap_beta(linspace(0.0, 5.0, 51)),
      robustness_grid(linspace(0.05, 1.0, 20)),
      welfare_z(int_range(0, 20)) {
  for (Model m : {Model::Baseline, Model::Differential}) {
    for (const auto& [k, r] : default_ranges(m)) ranges[k] = r;
  }
}

Ranges Config::model_ranges(Model m) const {
  Ranges out;
  for (const auto& name : parameter_names(m)) out[name] = ranges.find(name)->second;
  return out;
}

std::string Config::resolved_robustness_param() const {
  if (!robustness_param.empty()) return robustness_param;
  return model == Model::Baseline ? "p_d" : "p_dH";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> v;
    for (const auto& def : key_table()) v.push_back(def.key);
    return v;
  }();
  return keys;
}

Config parse_config(std::string_view text) {
  Config cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'section.key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    if (value.empty()) throw ConfigError(where + "missing value for '" + std::string(key) + "'");

    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const KeyDef& d) { return d.key == key; });
    if (it == table.end()) throw ConfigError(where + unknown_key_message(key));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->parse(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + std::string(key) + ": " + e.what());
    }
  }

  validate_population(cfg.pop);
  if (cfg.model == Model::Baseline) {
    validate_baseline(cfg.baseline);
  } else {
    validate_diff(cfg.diff);
  }
  // the serializer writes the resolved name; keep the default as empty
  if (cfg.robustness_param == (cfg.model == Model::Baseline ? "p_d" : "p_dH")) {
    cfg.robustness_param.clear();
  }
  return cfg;
}

std::string serialize_config(const Config& cfg) {
  std::string out;
  for (const auto& def : key_table()) out += def.key + " = " + def.emit(cfg) + "\n";
  return out;
}

}  // namespace egtsec
