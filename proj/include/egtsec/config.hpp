#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "egtsec/experiments.hpp"
#include "egtsec/markov.hpp"
#include "egtsec/model.hpp"

namespace egtsec {

// Fully resolved run configuration. Every field has a default, so an empty
// file is a valid configuration.
//
// Text grammar, one entry per line:
//
//   # comment
//   section.key = value
//
// Numbers use '.' as decimal separator (exponents allowed). Lists are
// comma-separated; a numeric list may also be written lo:hi:count for
// `count` evenly spaced points including both ends. Scenario lists use
// "6" for z = 6 and "6s" for z = 6 with subsidy. Sampling ranges are
// `range.<parameter> = lo, hi` and mean the interval (lo, hi].
//
// Unknown keys, duplicate keys, and malformed values are errors carrying the
// line number.
struct Config {
  Model model = Model::Differential;
  BaselineParams baseline;  // defaults: attack-and-defend set
  DiffParams diff;          // defaults: the H/L reference set
  PopulationConfig pop;

  // sweep: "beta" or a game parameter of `model`
  std::string sweep_param = "beta";
  std::vector<double> sweep_grid;

  std::vector<int> heatmap_z;
  std::vector<double> heatmap_beta;
  bool heatmap_subsidised = false;

  std::size_t random_n = 10'000;
  std::vector<Scenario> random_scenarios = {{0, false}, {6, false}, {100, false}, {6, true}};
  double random_beta = 1.0;

  // Ranges for both models; parameter names do not overlap.
  Ranges ranges;

  std::string robustness_param;  // empty: p_d (baseline) or p_dH (differential)
  std::vector<double> robustness_grid;
  std::size_t robustness_n = 1000;

  std::vector<int> welfare_z;

  double sim_mu = 1e-3;
  std::uint64_t sim_steps = 10'000'000;
  std::uint64_t sim_burn_in = 100'000;
  int sim_replicas = 1;

  Config();

  // Ranges restricted to one model's parameters.
  Ranges model_ranges(Model m) const;
  std::string resolved_robustness_param() const;

  friend bool operator==(const Config&, const Config&) = default;
};

// Throws ConfigError ("line N: ...") for syntax problems and unknown keys,
// ConstraintViolation for parameter sets that break the active model's
// constraints.
Config parse_config(std::string_view text);

// Every key, fixed order, 17 significant digits. parse_config() of the
// result compares equal to the input.
std::string serialize_config(const Config& cfg);

// Documented key list, "section.key" form.
const std::vector<std::string>& config_keys();

}  // namespace egtsec
