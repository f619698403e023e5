#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "egtsec/markov.hpp"
#include "egtsec/model.hpp"

namespace egtsec {

// Explicit two-population imitation process with mutation, used to check the
// rare-mutation chain from the outside.
//
// Per step: pick the attacker or defender population with probability 1/2,
// then a revising agent uniformly among that population's non-committed
// members. With probability `mu` the agent takes a uniformly random strategy
// of its population; otherwise it looks at a uniformly random role model
// from the whole population (committed agents included) and copies the
// model's strategy with the Fermi probability on current average payoffs.
struct SimConfig {
  Model model = Model::Differential;
  BaselineParams baseline;
  DiffParams diff;
  PopulationConfig pop;  // z and subsidised only apply to the differential model
  double mu = 1e-3;
  std::uint64_t steps = 10'000'000;
  std::uint64_t burn_in = 100'000;
  std::uint64_t seed = 1;
  // Initial counts of A attackers and of ordinary first-strategy (D or H)
  // defenders; the default starts in the first canonical state.
  int initial_attackers = -1;  // -1: all attack
  int initial_defenders = -1;  // -1: all D / all ordinary H
};

// Throws ConfigError for mu outside (0, 1), steps <= burn_in, or z != 0 in
// the baseline model.
void validate_sim(const SimConfig& cfg);

// Post-burn-in share of steps spent in each monomorphic state (canonical
// order of the model); `residual` covers steps with a mixed population.
struct OccupancyEstimate {
  Model model = Model::Differential;
  std::array<double, 4> occupancy{};
  double residual = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t committed_final = 0;  // committed defenders at the end of the run
};

// `replica` selects an independent random stream for the same seed.
OccupancyEstimate simulate(const SimConfig& cfg, std::uint64_t replica = 0);

// Replicas 0..replicas-1 of simulate(), pooled with equal weight.
// committed_final is summed over replicas. Output does not depend on
// `threads`.
OccupancyEstimate simulate_replicas(const SimConfig& cfg, int replicas, int threads = 1);

struct ComparisonReport {
  double l1 = 0.0;
  double residual = 0.0;
  bool mu_too_large = false;  // residual > kMaxResidual
  std::vector<std::string> warnings;
};

inline constexpr double kMaxResidual = 0.2;

// L1 distance between the occupancy (renormalised without the mixed share)
// and the analytic distribution. Throws ConfigError if the estimate and the
// chain describe different models.
ComparisonReport compare(const OccupancyEstimate& est, const StationaryDist& pi,
                         Model analytic_model);

}  // namespace egtsec
