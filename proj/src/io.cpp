#include "egtsec/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <json.hpp>

#include "egtsec/abm.hpp"
#include "egtsec/error.hpp"
#include "egtsec/experiments.hpp"
#include "egtsec/format.hpp"
#include "egtsec/markov.hpp"
#include "egtsec/rng.hpp"
#include "egtsec/welfare.hpp"

namespace egtsec {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["artifact_version"] = m.artifact_version;
  j["generator_version"] = m.generator_version;
  j["config"] = m.config;
  auto outputs = nlohmann::ordered_json::array();
  for (const auto& f : m.outputs) {
    outputs.push_back({{"file", f.file}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  j["outputs"] = outputs;
  j["warnings"] = m.warnings;
  return j.dump(2) + "\n";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string state_id(Model m, std::size_t state) {
  const std::string_view label = m == Model::Baseline ? kBaselineLabels.at(state)
                                                      : kDiffLabels.at(state);
  std::string out;
  for (char ch : label) {
    if (ch == ',') out.push_back('_');
    else if (ch != '(' && ch != ')') out.push_back(ch);
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"stationary", "sweep",    "heatmap",
                                                 "random-games", "robustness", "welfare",
                                                 "simulate",   "export-chain"};
  return names;
}

namespace {

// Accumulates rows; every line ends with LF.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) text_.push_back(',');
      text_ += csv_field(fields[k]);
    }
    text_.push_back('\n');
  }

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::string g(double v) { return format_g17(v); }
std::string b(bool v) { return v ? "true" : "false"; }

std::vector<std::string> pi_header(Model m) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < 4; ++k) out.push_back("pi_" + state_id(m, k));
  return out;
}

void append(std::vector<std::string>& row, const StationaryDist& d) {
  for (double v : d.pi) row.push_back(g(v));
}

template <class... Parts>
std::vector<std::string> concat(std::vector<std::string> first, const Parts&... rest) {
  (first.insert(first.end(), rest.begin(), rest.end()), ...);
  return first;
}

class Writer {
 public:
  Writer(std::filesystem::path dir, RunManifest& manifest)
      : dir_(std::move(dir)), manifest_(manifest) {}

  void write(const std::string& name, const std::string& contents) {
    write_raw(name, contents);
    manifest_.outputs.push_back({name, sha256_hex(contents), contents.size()});
  }

  void write_raw(const std::string& name, const std::string& contents) const {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw Error("cannot write " + path.string());
  }

 private:
  std::filesystem::path dir_;
  RunManifest& manifest_;
};

EmbeddedChain chain_for(const Config& cfg) {
  return cfg.model == Model::Baseline ? build_baseline_chain(cfg.baseline, cfg.pop.N, cfg.pop.beta)
                                      : build_diff_chain(cfg.diff, cfg.pop);
}

RiskDominance risk_for(const Config& cfg) {
  return cfg.model == Model::Baseline ? risk_dominance_baseline(cfg.baseline)
                                      : risk_dominance_diff(cfg.diff);
}

void require_differential(const Config& cfg, std::string_view command) {
  if (cfg.model != Model::Differential) {
    throw ConfigError(std::string(command) + " needs model.type = differential");
  }
}

void check_z_grid(const std::vector<int>& grid, int N, std::string_view key) {
  if (grid.empty()) throw ConfigError(std::string(key) + " is empty");
  for (int z : grid) {
    if (z < 0 || z > N) {
      throw ConfigError(std::string(key) + " value " + std::to_string(z) + " outside [0, N]");
    }
  }
}

void cmd_stationary(const Config& cfg, Writer& w) {
  const auto chain = chain_for(cfg);
  const auto pi = stationary(chain);
  Csv st({"state", "pi"});
  for (std::size_t k = 0; k < 4; ++k) st.row({state_id(cfg.model, k), g(pi.pi[k])});
  w.write("stationary.csv", st.text());

  Csv tr({"from", "to", "probability", "fixation"});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      tr.row({state_id(cfg.model, i), state_id(cfg.model, j), g(chain.matrix[i][j]),
              g(chain.fixation[i][j])});
    }
  }
  w.write("transitions.csv", tr.text());
}

void cmd_sweep(const Config& cfg, Writer& w, int threads) {
  SweepSpec spec;
  spec.model = cfg.model;
  spec.parameter = cfg.sweep_param;
  spec.grid = cfg.sweep_grid;
  spec.baseline = cfg.baseline;
  spec.diff = cfg.diff;
  spec.pop = cfg.pop;
  const auto rows = sweep_1d(spec, threads);
  Csv csv(concat({cfg.sweep_param}, pi_header(cfg.model),
                 std::vector<std::string>{"argmax", "valid", "violation"}));
  for (const auto& r : rows) {
    std::vector<std::string> row{g(r.value)};
    append(row, r.pi);
    row.push_back(state_id(cfg.model, argmax(r.pi)));
    row.push_back(b(r.valid));
    row.push_back(r.violation);
    csv.row(row);
  }
  w.write("sweep.csv", csv.text());
}

void cmd_heatmap(const Config& cfg, Writer& w, int threads) {
  require_differential(cfg, "heatmap");
  check_z_grid(cfg.heatmap_z, cfg.pop.N, "heatmap.z");
  const auto rows = heatmap_zbeta(cfg.diff, cfg.pop.N, cfg.heatmap_z, cfg.heatmap_beta,
                                  cfg.heatmap_subsidised, threads);
  Csv csv(concat({"z", "beta"}, pi_header(Model::Differential), std::vector<std::string>{"pi_H"}));
  for (const auto& r : rows) {
    std::vector<std::string> row{std::to_string(r.z), g(r.beta)};
    append(row, r.pi);
    row.push_back(g(r.pi_H));
    csv.row(row);
  }
  w.write("heatmap.csv", csv.text());
}

void cmd_random_games(const Config& cfg, Writer& w, std::uint64_t seed, int threads) {
  require_differential(cfg, "random-games");
  RandomGamesSpec spec;
  spec.n = cfg.random_n;
  spec.scenarios = cfg.random_scenarios;
  spec.beta = cfg.random_beta;
  spec.N = cfg.pop.N;
  spec.seed = seed;
  spec.ranges = cfg.model_ranges(Model::Differential);
  for (const auto& s : spec.scenarios) {
    if (s.z < 0 || s.z > spec.N) throw ConfigError("random.scenarios z outside [0, N]");
  }
  const auto result = random_games(spec, threads);

  const auto& names = parameter_names(Model::Differential);
  Csv csv(concat({"game", "scenario"}, names, pi_header(Model::Differential),
                 std::vector<std::string>{"attack", "high_defence", "success", "sw_defender",
                                          "sw_attacker", "sw_total", "filtered"}));
  for (const auto& r : result.records) {
    std::vector<std::string> row{std::to_string(r.game), scenario_tag(r.scenario)};
    for (const auto& name : names) row.push_back(g(get_parameter(r.params, name)));
    append(row, r.pi);
    for (Metric m : kMetrics) row.push_back(g(metric_value(r, m)));
    row.push_back(b(r.filtered));
    csv.row(row);
  }
  w.write("random_games.csv", csv.text());

  Csv sum({"scenario", "subset", "metric", "mean", "sd", "count"});
  for (const auto& s : result.summaries) {
    const std::string subset = s.filtered_only ? "filtered" : "all";
    if (s.stats.empty()) {
      sum.row({scenario_tag(s.scenario), subset, "", "", "", "0"});
      continue;
    }
    for (Metric m : kMetrics) {
      const auto& st = s.stats.at(m);
      sum.row({scenario_tag(s.scenario), subset, std::string(metric_name(m)), g(st.mean),
               g(st.sd), std::to_string(st.count)});
    }
  }
  w.write("random_games_summary.csv", sum.text());
}

void cmd_robustness(const Config& cfg, Writer& w, std::uint64_t seed, int threads) {
  RobustnessSpec spec;
  spec.model = cfg.model;
  spec.parameter = cfg.resolved_robustness_param();
  spec.grid = cfg.robustness_grid;
  spec.n = cfg.robustness_n;
  spec.pop = cfg.pop;
  spec.seed = seed;
  spec.ranges = cfg.model_ranges(cfg.model);
  const auto rows = robustness_sweep(spec, threads);
  std::vector<std::string> header{spec.parameter, "count", "violation_fraction"};
  for (std::size_t k = 0; k < 4; ++k) header.push_back("mean_" + state_id(cfg.model, k));
  for (std::size_t k = 0; k < 4; ++k) header.push_back("sd_" + state_id(cfg.model, k));
  Csv csv(header);
  for (const auto& r : rows) {
    std::vector<std::string> row{g(r.value), std::to_string(r.count), g(r.violation_fraction)};
    for (double v : r.mean) row.push_back(g(v));
    for (double v : r.sd) row.push_back(g(v));
    csv.row(row);
  }
  w.write("robustness.csv", csv.text());
}

void cmd_welfare(const Config& cfg, Writer& w) {
  require_differential(cfg, "welfare");
  check_z_grid(cfg.welfare_z, cfg.pop.N, "welfare.z");
  Csv csv(concat({"z", "subsidised", "sw_defender", "sw_attacker", "sw_total", "success"},
                 pi_header(Model::Differential)));
  for (int z : cfg.welfare_z) {
    for (bool sub : {false, true}) {
      PopulationConfig pop = cfg.pop;
      pop.z = z;
      pop.subsidised = sub;
      const auto pi = stationary(build_diff_chain(cfg.diff, pop));
      const auto rep = social_welfare(pi, cfg.diff, pop);
      std::vector<std::string> row{std::to_string(z), b(sub), g(rep.sw_defender),
                                   g(rep.sw_attacker), g(rep.sw_total), g(rep.pi_succ)};
      append(row, pi);
      csv.row(row);
    }
  }
  w.write("welfare.csv", csv.text());
}

void cmd_simulate(const Config& cfg, Writer& w, std::uint64_t seed, int threads,
                  RunManifest& manifest) {
  SimConfig sim;
  sim.model = cfg.model;
  sim.baseline = cfg.baseline;
  sim.diff = cfg.diff;
  sim.pop = cfg.pop;
  sim.mu = cfg.sim_mu;
  sim.steps = cfg.sim_steps;
  sim.burn_in = cfg.sim_burn_in;
  sim.seed = seed;
  const auto est = simulate_replicas(sim, cfg.sim_replicas, threads);
  const auto pi = stationary(chain_for(cfg));
  const auto rep = compare(est, pi, cfg.model);

  Csv occ({"state", "occupancy", "pi"});
  for (std::size_t k = 0; k < 4; ++k) {
    occ.row({state_id(cfg.model, k), g(est.occupancy[k]), g(pi.pi[k])});
  }
  w.write("occupancy.csv", occ.text());

  Csv sum({"key", "value"});
  sum.row({"replicas", std::to_string(cfg.sim_replicas)});
  sum.row({"samples", std::to_string(est.samples)});
  sum.row({"residual", g(est.residual)});
  sum.row({"l1", g(rep.l1)});
  sum.row({"mu_too_large", b(rep.mu_too_large)});
  sum.row({"committed_final", std::to_string(est.committed_final)});
  w.write("simulate_summary.csv", sum.text());
  manifest.warnings.insert(manifest.warnings.end(), rep.warnings.begin(), rep.warnings.end());
}

void cmd_export_chain(const Config& cfg, Writer& w) {
  const auto chain = chain_for(cfg);
  w.write("chain.dot", export_chain(chain, stationary(chain), risk_for(cfg)));
}

}  // namespace

RunManifest run_command(std::string_view name, const Config& cfg, std::uint64_t seed,
                        const std::filesystem::path& out_dir, int threads) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown command '" + std::string(name) + "'");
  }
  if (threads < 1) throw ConfigError("threads must be at least 1");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());

  RunManifest manifest;
  manifest.command = std::string(name);
  manifest.config = serialize_config(cfg);
  manifest.seed = seed;
  manifest.generator_version = std::string(kGeneratorVersion);
  Writer w(out_dir, manifest);

  if (name == "stationary") cmd_stationary(cfg, w);
  else if (name == "sweep") cmd_sweep(cfg, w, threads);
  else if (name == "heatmap") cmd_heatmap(cfg, w, threads);
  else if (name == "random-games") cmd_random_games(cfg, w, seed, threads);
  else if (name == "robustness") cmd_robustness(cfg, w, seed, threads);
  else if (name == "welfare") cmd_welfare(cfg, w);
  else if (name == "simulate") cmd_simulate(cfg, w, seed, threads, manifest);
  else cmd_export_chain(cfg, w);

  w.write_raw("manifest.json", manifest_json(manifest));
  return manifest;
}

}  // namespace egtsec
