#pragma once

#include <array>
#include <string>
#include <string_view>

#include "egtsec/model.hpp"

namespace egtsec {

enum class Model { Baseline, Differential };

std::string_view model_name(Model m);

using Matrix4 = std::array<std::array<double, 4>, 4>;

// Markov chain over the four monomorphic strategy pairs in the rare-mutation
// limit. Row i holds the probabilities of leaving state i; each allowed
// off-diagonal entry is one half of the fixation probability of the
// corresponding single-population mutant. States differing in both
// populations are never connected.
struct EmbeddedChain {
  Model model = Model::Baseline;
  std::array<std::string_view, 4> labels{};
  Matrix4 matrix{};
  // fixation[i][j]: fixation probability behind matrix[i][j]; 0 where the
  // transition is structurally impossible.
  Matrix4 fixation{};
};

// True when states i and j differ in exactly one population. In both
// canonical orders each population owns one bit of the state index.
constexpr bool adjacent(std::size_t i, std::size_t j) {
  const std::size_t d = i ^ j;
  return d == 1 || d == 2;
}

EmbeddedChain build_baseline_chain(const BaselineParams& p, int N, double beta);

// With z == N every defender is committed: the chain keeps only attacker
// moves between H states, and the L states drain into the H state with the
// same attacker strategy.
EmbeddedChain build_diff_chain(const DiffParams& p, const PopulationConfig& cfg);

struct StationaryDist {
  std::array<double, 4> pi{};
};

// Left fixed point of the chain. Throws ReducibleChain when the chain has
// more than one closed class (the message lists them). Transient states get
// probability exactly 0.
StationaryDist stationary(const EmbeddedChain& chain);

// max_j |(pi M)_j - pi_j|
double stationary_residual(const EmbeddedChain& chain, const StationaryDist& d);

std::size_t argmax(const StationaryDist& d);

// One row of the risk-dominance table: the transition from -> to is favoured
// by payoffs when `holds`. `tie` marks exact equality of the two sides.
struct RiskRow {
  int number = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  bool holds = false;
  bool tie = false;
};

struct RiskDominance {
  Model model = Model::Baseline;
  std::array<RiskRow, 4> rows{};
};

RiskDominance risk_dominance_baseline(const BaselineParams& p);
RiskDominance risk_dominance_diff(const DiffParams& p);

enum class Direction { Forward, Reverse, None };
enum class Agreement { Agree, Disagree, NoDominantDirection };

std::string_view agreement_name(Agreement a);

struct PairConsistency {
  RiskRow row;
  double rho_forward = 0.0;  // fixation probability from -> to
  double rho_reverse = 0.0;  // fixation probability to -> from
  Direction payoff_direction = Direction::None;
  Direction chain_direction = Direction::None;
  Agreement agreement = Agreement::NoDominantDirection;
};

struct ConsistencyReport {
  std::array<PairConsistency, 4> pairs{};

  bool all_agree() const;
  bool all_tied() const;
};

ConsistencyReport dominance_consistency(const EmbeddedChain& chain, const RiskDominance& rd);

// Graphviz DOT text. Nodes carry pi to 3 decimals and the argmax node is
// filled; an edge i -> j is drawn only when rho(i -> j) > rho(j -> i), with
// rho in scientific notation to 3 decimals. Risk-dominance rows follow as
// `//` comment lines. LF line endings, no locale dependence.
std::string export_chain(const EmbeddedChain& chain, const StationaryDist& pi,
                         const RiskDominance& rd);

}  // namespace egtsec
