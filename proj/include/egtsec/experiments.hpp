#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egtsec/markov.hpp"
#include "egtsec/model.hpp"
#include "egtsec/rng.hpp"
#include "egtsec/welfare.hpp"

namespace egtsec {

// ---------------------------------------------------------------------------
// Parameter access by name
// ---------------------------------------------------------------------------

const std::vector<std::string>& parameter_names(Model m);
bool has_parameter(Model m, std::string_view name);

double get_parameter(const BaselineParams& p, std::string_view name);
double get_parameter(const DiffParams& p, std::string_view name);
void set_parameter(BaselineParams& p, std::string_view name, double value);
void set_parameter(DiffParams& p, std::string_view name, double value);

// ---------------------------------------------------------------------------
// Deterministic sweeps
// ---------------------------------------------------------------------------

// `parameter` is a game parameter of `model` or "beta".
struct SweepSpec {
  Model model = Model::Baseline;
  std::string parameter;
  std::vector<double> grid;
  BaselineParams baseline;
  DiffParams diff;
  PopulationConfig pop;
};

struct SweepRow {
  double value = 0.0;
  StationaryDist pi;
  bool valid = true;       // all model constraints hold at this point
  std::string violation;   // first violated constraint when !valid
};

// Throws ConfigError for an unknown parameter or a grid that is empty or not
// strictly increasing.
void check_sweep_spec(const SweepSpec& spec);

std::vector<SweepRow> sweep_1d(const SweepSpec& spec, int threads = 1);

struct HeatmapRow {
  int z = 0;
  double beta = 0.0;
  StationaryDist pi;
  double pi_H = 0.0;  // pi(A,H) + pi(NA,H), as 1 - L mass
};

// Rows ordered z-major. Every z must lie in [0, N].
std::vector<HeatmapRow> heatmap_zbeta(const DiffParams& p, int N, const std::vector<int>& z_grid,
                                      const std::vector<double>& beta_grid, bool subsidised,
                                      int threads = 1);

// ---------------------------------------------------------------------------
// Random games
// ---------------------------------------------------------------------------

// Sampling interval (lo, hi]; lo == hi pins the value.
struct Range {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const Range&, const Range&) = default;
};

// One range per parameter name of the model.
using Ranges = std::map<std::string, Range, std::less<>>;

// (0, 1] everywhere, except b_aH and b_aL in (0, 2].
Ranges default_ranges(Model m);

inline constexpr long kMaxRejections = 1'000'000;

// Uniform draw per parameter (in parameter_names() order), redrawn until every
// ordering constraint of the model holds. Throws InfeasibleRanges after
// kMaxRejections rejected draws.
DiffParams sample_random_game(Rng& rng, const Ranges& ranges);
BaselineParams sample_random_baseline(Rng& rng, const Ranges& ranges);

struct Scenario {
  int z = 0;
  bool subsidised = false;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// "z=6" or "z=6s" (subsidised).
std::string scenario_tag(const Scenario& s);

struct GameRecord {
  std::size_t game = 0;
  Scenario scenario;
  DiffParams params;
  StationaryDist pi;
  double attack_frequency = 0.0;        // pi(A,H) + pi(A,L)
  double high_defence_frequency = 0.0;  // pi(A,H) + pi(NA,H), as 1 - L mass
  double success_rate = 0.0;
  double sw_defender = 0.0;
  double sw_attacker = 0.0;
  double sw_total = 0.0;
  bool filtered = false;  // f_A^H < f_A^L
};

GameRecord make_record(std::size_t game, const Scenario& s, const DiffParams& p, int N,
                       double beta);

struct SummaryStats {
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
  std::size_t count = 0;
};

// One pass, shifted by the first value and accumulated with compensated
// sums. Throws Error on empty input.
SummaryStats summarize(std::span<const double> values);

enum class Metric { Attack, HighDefence, Success, SwDefender, SwAttacker, SwTotal };
inline constexpr std::array<Metric, 6> kMetrics = {Metric::Attack,     Metric::HighDefence,
                                                   Metric::Success,    Metric::SwDefender,
                                                   Metric::SwAttacker, Metric::SwTotal};
std::string_view metric_name(Metric m);
double metric_value(const GameRecord& r, Metric m);

SummaryStats summarize(std::span<const GameRecord> records, Metric m);

struct ScenarioSummary {
  Scenario scenario;
  bool filtered_only = false;
  std::map<Metric, SummaryStats> stats;  // empty when no record qualifies
  std::size_t count = 0;
};

struct RandomGamesSpec {
  std::size_t n = 10'000;
  std::vector<Scenario> scenarios = {{0, false}, {6, false}, {100, false}, {6, true}};
  double beta = 1.0;
  int N = 100;
  std::uint64_t seed = 1;
  Ranges ranges = default_ranges(Model::Differential);
};

struct RandomGamesResult {
  // Game-major: records[g * scenarios.size() + s].
  std::vector<GameRecord> records;
  // For each scenario: all records, then the filtered subset.
  std::vector<ScenarioSummary> summaries;
};

// Each game is sampled once from stream (seed, 0, g) and evaluated under
// every scenario.
RandomGamesResult random_games(const RandomGamesSpec& spec, int threads = 1);

struct RobustnessSpec {
  Model model = Model::Baseline;
  std::string parameter;
  std::vector<double> grid;
  std::size_t n = 1000;  // samples per grid point, >= 2
  PopulationConfig pop;
  std::uint64_t seed = 1;
  std::optional<Ranges> ranges;  // default_ranges(model) when empty
};

struct RobustnessRow {
  double value = 0.0;
  std::array<double, 4> mean{};
  std::array<double, 4> sd{};
  std::size_t count = 0;
  // Share of samples where the fixed value breaks a constraint against the
  // redrawn parameters.
  double violation_fraction = 0.0;
};

// At each grid value the swept parameter is pinned and every other game
// parameter is redrawn n times (stream (seed, 1 + grid index, sample)).
// Constraints between redrawn parameters are enforced; constraints that
// involve the pinned value are only counted.
std::vector<RobustnessRow> robustness_sweep(const RobustnessSpec& spec, int threads = 1);

}  // namespace egtsec
