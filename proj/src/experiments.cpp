#include "egtsec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "egtsec/error.hpp"
#include "egtsec/parallel.hpp"

namespace egtsec {

namespace {

using BaselineField = double BaselineParams::*;
using DiffField = double DiffParams::*;

const std::vector<std::pair<std::string, BaselineField>>& baseline_fields() {
  static const std::vector<std::pair<std::string, BaselineField>> f = {
      {"w", &BaselineParams::w},     {"c_a", &BaselineParams::c_a}, {"c_d", &BaselineParams::c_d},
      {"b_a", &BaselineParams::b_a}, {"b_d", &BaselineParams::b_d}, {"p_d", &BaselineParams::p_d},
  };
  return f;
}

const std::vector<std::pair<std::string, DiffField>>& diff_fields() {
  static const std::vector<std::pair<std::string, DiffField>> f = {
      {"c_aH", &DiffParams::c_aH}, {"c_aL", &DiffParams::c_aL}, {"b_aH", &DiffParams::b_aH},
      {"b_aL", &DiffParams::b_aL}, {"p_dH", &DiffParams::p_dH}, {"p_dL", &DiffParams::p_dL},
      {"B_H", &DiffParams::B_H},   {"B_L", &DiffParams::B_L},   {"C_H", &DiffParams::C_H},
      {"C_L", &DiffParams::C_L},   {"W_H", &DiffParams::W_H},   {"W_L", &DiffParams::W_L},
  };
  return f;
}

template <class Fields>
auto find_field(const Fields& fields, std::string_view name) {
  for (const auto& [n, f] : fields) {
    if (n == name) return f;
  }
  throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

// lhs < rhs (strict) or lhs <= rhs, between two parameters of one model.
struct Ordering {
  std::string_view lhs;
  std::string_view rhs;
  bool strict;
};

const std::vector<Ordering>& orderings(Model m) {
  static const std::vector<Ordering> baseline = {
      {"c_a", "w", true}, {"c_d", "w", true}, {"c_a", "b_a", true},
      {"c_d", "b_d", true}, {"b_d", "w", false},
  };
  static const std::vector<Ordering> diff = {
      {"C_L", "C_H", true},   {"B_L", "B_H", true},   {"W_L", "W_H", true},
      {"p_dL", "p_dH", true}, {"b_aL", "b_aH", true}, {"c_aL", "c_aH", true},
  };
  return m == Model::Baseline ? baseline : diff;
}

void check_ranges(Model m, const Ranges& ranges) {
  for (const auto& name : parameter_names(m)) {
    const auto it = ranges.find(name);
    if (it == ranges.end()) throw ConfigError("missing sampling range for '" + name + "'");
    const Range& r = it->second;
    if (!(r.lo >= 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.hi)) {
      throw ConfigError("sampling range for '" + name + "' must satisfy 0 <= lo <= hi");
    }
  }
}

// Redraw until orderings not touching `pinned` hold. Every parameter is drawn
// on each attempt, including the pinned one, so the stream layout does not
// depend on which parameter is pinned.
template <class Params>
Params sample_params(Model m, Rng& rng, const Ranges& ranges,
                     std::optional<std::pair<std::string_view, double>> pinned) {
  check_ranges(m, ranges);
  const auto& names = parameter_names(m);
  for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
    Params p;
    for (const auto& name : names) {
      const Range& r = ranges.find(name)->second;
      set_parameter(p, name, rng.uniform_open_closed(r.lo, r.hi));
    }
    if (pinned) set_parameter(p, pinned->first, pinned->second);
    bool ok = true;
    for (const auto& o : orderings(m)) {
      if (pinned && (o.lhs == pinned->first || o.rhs == pinned->first)) continue;
      const double a = get_parameter(p, o.lhs);
      const double b = get_parameter(p, o.rhs);
      if (o.strict ? !(a < b) : !(a <= b)) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  throw InfeasibleRanges("no parameter set satisfying the " + std::string(model_name(m)) +
                         " constraints after " + std::to_string(kMaxRejections) + " draws");
}

std::optional<std::string> violation(const BaselineParams& p) { return baseline_violation(p); }
std::optional<std::string> violation(const DiffParams& p) { return diff_violation(p); }

}  // namespace

const std::vector<std::string>& parameter_names(Model m) {
  static const std::vector<std::string> baseline = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : baseline_fields()) v.push_back(n);
    return v;
  }();
  static const std::vector<std::string> diff = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : diff_fields()) v.push_back(n);
    return v;
  }();
  return m == Model::Baseline ? baseline : diff;
}

bool has_parameter(Model m, std::string_view name) {
  const auto& names = parameter_names(m);
  return std::find(names.begin(), names.end(), name) != names.end();
}

double get_parameter(const BaselineParams& p, std::string_view name) {
  return p.*find_field(baseline_fields(), name);
}
double get_parameter(const DiffParams& p, std::string_view name) {
  return p.*find_field(diff_fields(), name);
}
void set_parameter(BaselineParams& p, std::string_view name, double value) {
  p.*find_field(baseline_fields(), name) = value;
}
void set_parameter(DiffParams& p, std::string_view name, double value) {
  p.*find_field(diff_fields(), name) = value;
}

void check_sweep_spec(const SweepSpec& spec) {
  if (spec.parameter != "beta" && !has_parameter(spec.model, spec.parameter)) {
    throw ConfigError("unknown parameter '" + spec.parameter + "' for the " +
                      std::string(model_name(spec.model)) + " model");
  }
  if (spec.grid.empty()) throw ConfigError("sweep grid is empty");
  for (std::size_t k = 1; k < spec.grid.size(); ++k) {
    if (!(spec.grid[k - 1] < spec.grid[k])) {
      throw ConfigError("sweep grid must be strictly increasing");
    }
  }
  if (spec.parameter == "beta" && !(spec.grid.front() >= 0.0)) {
    throw ConfigError("beta grid must be non-negative");
  }
}

std::vector<SweepRow> sweep_1d(const SweepSpec& spec, int threads) {
  check_sweep_spec(spec);
  validate_population(spec.pop);
  std::vector<SweepRow> rows(spec.grid.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    SweepRow& row = rows[k];
    row.value = spec.grid[k];
    PopulationConfig pop = spec.pop;
    const bool is_beta = spec.parameter == "beta";
    if (is_beta) pop.beta = row.value;
    std::optional<std::string> v;
    if (spec.model == Model::Baseline) {
      BaselineParams p = spec.baseline;
      if (!is_beta) set_parameter(p, spec.parameter, row.value);
      v = baseline_violation(p);
      row.pi = stationary(build_baseline_chain(p, pop.N, pop.beta));
    } else {
      DiffParams p = spec.diff;
      if (!is_beta) set_parameter(p, spec.parameter, row.value);
      v = diff_violation(p);
      row.pi = stationary(build_diff_chain(p, pop));
    }
    row.valid = !v.has_value();
    if (v) row.violation = *v;
  });
  return rows;
}

std::vector<HeatmapRow> heatmap_zbeta(const DiffParams& p, int N, const std::vector<int>& z_grid,
                                      const std::vector<double>& beta_grid, bool subsidised,
                                      int threads) {
  for (int z : z_grid) {
    if (z < 0 || z > N) throw ConfigError("heatmap z value " + std::to_string(z) + " outside [0, N]");
  }
  for (double b : beta_grid) {
    if (!(b >= 0.0)) throw ConfigError("heatmap beta values must be non-negative");
  }
  std::vector<HeatmapRow> rows(z_grid.size() * beta_grid.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    HeatmapRow& row = rows[k];
    row.z = z_grid[k / beta_grid.size()];
    row.beta = beta_grid[k % beta_grid.size()];
    const PopulationConfig cfg{N, row.z, row.beta, subsidised};
    row.pi = stationary(build_diff_chain(p, cfg));
    row.pi_H = 1.0 - (row.pi.pi[index(DiffState::A_L)] + row.pi.pi[index(DiffState::NA_L)]);
  });
  return rows;
}

Ranges default_ranges(Model m) {
  Ranges r;
  for (const auto& name : parameter_names(m)) r[name] = Range{0.0, 1.0};
  if (m == Model::Differential) {
    r["b_aH"] = Range{0.0, 2.0};
    r["b_aL"] = Range{0.0, 2.0};
  }
  return r;
}

DiffParams sample_random_game(Rng& rng, const Ranges& ranges) {
  return sample_params<DiffParams>(Model::Differential, rng, ranges, std::nullopt);
}

BaselineParams sample_random_baseline(Rng& rng, const Ranges& ranges) {
  return sample_params<BaselineParams>(Model::Baseline, rng, ranges, std::nullopt);
}

std::string scenario_tag(const Scenario& s) {
  return "z=" + std::to_string(s.z) + (s.subsidised ? "s" : "");
}

GameRecord make_record(std::size_t game, const Scenario& s, const DiffParams& p, int N,
                       double beta) {
  const PopulationConfig cfg{N, s.z, beta, s.subsidised};
  GameRecord r;
  r.game = game;
  r.scenario = s;
  r.params = p;
  r.pi = stationary(build_diff_chain(p, cfg));
  r.attack_frequency = r.pi.pi[index(DiffState::A_H)] + r.pi.pi[index(DiffState::A_L)];
  // Complement of the L mass: exactly 1 when the L states are transient.
  r.high_defence_frequency =
      1.0 - (r.pi.pi[index(DiffState::A_L)] + r.pi.pi[index(DiffState::NA_L)]);
  const auto w = social_welfare(r.pi, p, cfg);
  r.success_rate = w.pi_succ;
  r.sw_defender = w.sw_defender;
  r.sw_attacker = w.sw_attacker;
  r.sw_total = w.sw_total;
  const auto att = diff_attacker_payoffs(p);
  r.filtered = att.A_vs_H < att.A_vs_L;
  return r;
}

namespace {

// Neumaier's compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw Error("cannot summarize an empty record set");
  const double shift = values.front();
  CompensatedSum s1;
  CompensatedSum s2;
  for (double v : values) {
    const double d = v - shift;
    s1.add(d);
    s2.add(d * d);
  }
  const double n = static_cast<double>(values.size());
  const double m1 = s1.value() / n;
  const double var = std::max(0.0, s2.value() / n - m1 * m1);
  return {shift + m1, std::sqrt(var), values.size()};
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::Attack:
      return "attack_frequency";
    case Metric::HighDefence:
      return "high_defence_frequency";
    case Metric::Success:
      return "success_rate";
    case Metric::SwDefender:
      return "sw_defender";
    case Metric::SwAttacker:
      return "sw_attacker";
    case Metric::SwTotal:
      break;
  }
  return "sw_total";
}

double metric_value(const GameRecord& r, Metric m) {
  switch (m) {
    case Metric::Attack:
      return r.attack_frequency;
    case Metric::HighDefence:
      return r.high_defence_frequency;
    case Metric::Success:
      return r.success_rate;
    case Metric::SwDefender:
      return r.sw_defender;
    case Metric::SwAttacker:
      return r.sw_attacker;
    case Metric::SwTotal:
      break;
  }
  return r.sw_total;
}

SummaryStats summarize(std::span<const GameRecord> records, Metric m) {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(metric_value(r, m));
  return summarize(v);
}

RandomGamesResult random_games(const RandomGamesSpec& spec, int threads) {
  if (spec.n < 1) throw ConfigError("random games need n >= 1");
  if (spec.scenarios.empty()) throw ConfigError("random games need at least one scenario");
  for (const auto& s : spec.scenarios) {
    validate_population({spec.N, s.z, spec.beta, s.subsidised});
  }
  check_ranges(Model::Differential, spec.ranges);

  const std::size_t S = spec.scenarios.size();
  RandomGamesResult out;
  out.records.resize(spec.n * S);
  parallel_for(spec.n, threads, [&](std::size_t g) {
    Rng rng(derive_seed(spec.seed, 0, g));
    const DiffParams p = sample_random_game(rng, spec.ranges);
    for (std::size_t s = 0; s < S; ++s) {
      out.records[g * S + s] = make_record(g, spec.scenarios[s], p, spec.N, spec.beta);
    }
  });

  for (std::size_t s = 0; s < S; ++s) {
    for (bool filtered_only : {false, true}) {
      std::vector<GameRecord> subset;
      for (std::size_t g = 0; g < spec.n; ++g) {
        const auto& r = out.records[g * S + s];
        if (!filtered_only || r.filtered) subset.push_back(r);
      }
      ScenarioSummary sum;
      sum.scenario = spec.scenarios[s];
      sum.filtered_only = filtered_only;
      sum.count = subset.size();
      if (!subset.empty()) {
        for (Metric m : kMetrics) sum.stats[m] = summarize(subset, m);
      }
      out.summaries.push_back(std::move(sum));
    }
  }
  return out;
}

std::vector<RobustnessRow> robustness_sweep(const RobustnessSpec& spec, int threads) {
  if (!has_parameter(spec.model, spec.parameter)) {
    throw ConfigError("unknown parameter '" + spec.parameter + "' for the " +
                      std::string(model_name(spec.model)) + " model");
  }
  if (spec.grid.empty()) throw ConfigError("robustness grid is empty");
  for (std::size_t k = 1; k < spec.grid.size(); ++k) {
    if (!(spec.grid[k - 1] < spec.grid[k])) {
      throw ConfigError("robustness grid must be strictly increasing");
    }
  }
  if (spec.n < 2) throw ConfigError("robustness sweep needs n >= 2 samples per point");
  validate_population(spec.pop);
  const Ranges ranges = spec.ranges ? *spec.ranges : default_ranges(spec.model);
  check_ranges(spec.model, ranges);

  const std::size_t G = spec.grid.size();
  const std::size_t n = spec.n;
  std::vector<StationaryDist> dists(G * n);
  std::vector<char> broken(G * n, 0);
  parallel_for(G * n, threads, [&](std::size_t k) {
    const std::size_t g = k / n;
    const std::size_t s = k % n;
    Rng rng(derive_seed(spec.seed, 1 + g, s));
    const std::pair<std::string_view, double> pin{spec.parameter, spec.grid[g]};
    if (spec.model == Model::Baseline) {
      const auto p = sample_params<BaselineParams>(Model::Baseline, rng, ranges, pin);
      broken[k] = violation(p).has_value();
      dists[k] = stationary(build_baseline_chain(p, spec.pop.N, spec.pop.beta));
    } else {
      const auto p = sample_params<DiffParams>(Model::Differential, rng, ranges, pin);
      broken[k] = violation(p).has_value();
      dists[k] = stationary(build_diff_chain(p, spec.pop));
    }
  });

  std::vector<RobustnessRow> rows(G);
  for (std::size_t g = 0; g < G; ++g) {
    RobustnessRow& row = rows[g];
    row.value = spec.grid[g];
    row.count = n;
    std::size_t nbroken = 0;
    for (std::size_t s = 0; s < n; ++s) nbroken += broken[g * n + s] ? 1 : 0;
    row.violation_fraction = static_cast<double>(nbroken) / static_cast<double>(n);
    for (std::size_t st = 0; st < 4; ++st) {
      std::vector<double> v(n);
      for (std::size_t s = 0; s < n; ++s) v[s] = dists[g * n + s].pi[st];
      const auto stats = summarize(v);
      row.mean[st] = stats.mean;
      row.sd[st] = stats.sd;
    }
  }
  return rows;
}

}  // namespace egtsec
