#include "egtsec/abm.hpp"

#include <cmath>
#include <string>

#include "egtsec/error.hpp"
#include "egtsec/fixation.hpp"
#include "egtsec/format.hpp"
#include "egtsec/parallel.hpp"
#include "egtsec/rng.hpp"

namespace egtsec {

void validate_sim(const SimConfig& cfg) {
  validate_population(cfg.pop);
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) throw ConfigError("mutation rate must lie in (0, 1)");
  if (cfg.steps <= cfg.burn_in) throw ConfigError("steps must exceed burn_in");
  if (cfg.model == Model::Baseline && cfg.pop.z != 0) {
    throw ConfigError("the baseline model has no committed defenders (z must be 0)");
  }
  const int free_defenders = cfg.pop.N - cfg.pop.z;
  if (cfg.initial_attackers < -1 || cfg.initial_attackers > cfg.pop.N) {
    throw ConfigError("initial attacker count outside [0, N]");
  }
  if (cfg.initial_defenders < -1 || cfg.initial_defenders > free_defenders) {
    throw ConfigError("initial defender count outside [0, N - z]");
  }
}

namespace {

// Strategy 0 is A / D / H, strategy 1 is NA / ND / L.
constexpr std::uint8_t kFirst = 0;
constexpr std::uint8_t kSecond = 1;

// Payoff of each strategy against a single opponent of each type:
// table[own][opponent].
struct PayoffTables {
  double attacker[2][2]{};
  double defender[2][2]{};
};

PayoffTables tables_for(const SimConfig& cfg) {
  PayoffTables t;
  if (cfg.model == Model::Baseline) {
    const auto& p = cfg.baseline;
    const DefenderMove dm[2] = {DefenderMove::Defend, DefenderMove::NoDefend};
    const AttackerMove am[2] = {AttackerMove::Attack, AttackerMove::NoAttack};
    for (int a = 0; a < 2; ++a) {
      for (int d = 0; d < 2; ++d) {
        const auto cell = baseline_payoffs(dm[d], am[a], p);
        t.attacker[a][d] = cell.attacker;
        t.defender[d][a] = cell.defender;
      }
    }
  } else {
    const auto att = diff_attacker_payoffs(cfg.diff);
    const auto def = effective_defender_payoffs(cfg.diff, cfg.pop);
    t.attacker[0][0] = att.A_vs_H;
    t.attacker[0][1] = att.A_vs_L;
    t.attacker[1][0] = att.NA_vs_H;
    t.attacker[1][1] = att.NA_vs_L;
    t.defender[0][0] = def.H_vs_A;
    t.defender[0][1] = def.H_vs_NA;
    t.defender[1][0] = def.L_vs_A;
    t.defender[1][1] = def.L_vs_NA;
  }
  return t;
}

}  // namespace

OccupancyEstimate simulate(const SimConfig& cfg, std::uint64_t replica) {
  validate_sim(cfg);
  const int N = cfg.pop.N;
  const int z = cfg.model == Model::Differential ? cfg.pop.z : 0;
  const int free_defenders = N - z;
  const double beta = cfg.pop.beta;
  const PayoffTables pay = tables_for(cfg);

  const int init_a = cfg.initial_attackers < 0 ? N : cfg.initial_attackers;
  const int init_d = cfg.initial_defenders < 0 ? free_defenders : cfg.initial_defenders;

  // Committed defenders occupy slots [0, z) and always play the first
  // strategy (H).
  std::vector<std::uint8_t> attackers(static_cast<std::size_t>(N), kSecond);
  std::vector<std::uint8_t> defenders(static_cast<std::size_t>(N), kSecond);
  for (int i = 0; i < init_a; ++i) attackers[static_cast<std::size_t>(i)] = kFirst;
  for (int i = 0; i < z + init_d; ++i) defenders[static_cast<std::size_t>(i)] = kFirst;
  int n_att_first = init_a;       // attackers playing A
  int n_def_first = z + init_d;   // defenders playing D/H, committed included

  Rng rng(derive_seed(cfg.seed, 0x5eed, replica));
  const double inv_n = 1.0 / static_cast<double>(N);

  // Average payoff of `own` strategy given the share of first-strategy
  // opponents.
  auto att_payoff = [&](int own) {
    const double share = n_def_first * inv_n;
    return share * pay.attacker[own][0] + (1.0 - share) * pay.attacker[own][1];
  };
  auto def_payoff = [&](int own) {
    const double share = n_att_first * inv_n;
    return share * pay.defender[own][0] + (1.0 - share) * pay.defender[own][1];
  };

  OccupancyEstimate est;
  est.model = cfg.model;
  std::array<std::uint64_t, 4> tally{};
  std::uint64_t mixed = 0;

  for (std::uint64_t step = 0; step < cfg.steps; ++step) {
    const bool attacker_side = rng.next() >> 63;
    if (attacker_side) {
      auto& self = attackers[rng.index(static_cast<std::uint64_t>(N))];
      std::uint8_t next = self;
      if (rng.bernoulli(cfg.mu)) {
        next = static_cast<std::uint8_t>(rng.next() >> 63);
      } else {
        const std::uint8_t model = attackers[rng.index(static_cast<std::uint64_t>(N))];
        if (model != self && rng.bernoulli(fermi(beta, att_payoff(model), att_payoff(self)))) {
          next = model;
        }
      }
      if (next != self) {
        n_att_first += next == kFirst ? 1 : -1;
        self = next;
      }
    } else if (free_defenders > 0) {
      auto& self = defenders[static_cast<std::size_t>(z) +
                             rng.index(static_cast<std::uint64_t>(free_defenders))];
      std::uint8_t next = self;
      if (rng.bernoulli(cfg.mu)) {
        next = static_cast<std::uint8_t>(rng.next() >> 63);
      } else {
        const std::uint8_t model = defenders[rng.index(static_cast<std::uint64_t>(N))];
        if (model != self && rng.bernoulli(fermi(beta, def_payoff(model), def_payoff(self)))) {
          next = model;
        }
      }
      if (next != self) {
        n_def_first += next == kFirst ? 1 : -1;
        self = next;
      }
    }

    if (step < cfg.burn_in) continue;
    const int ordinary_first = n_def_first - z;
    const bool att_mono = n_att_first == 0 || n_att_first == N;
    const bool def_mono = ordinary_first == 0 || ordinary_first == free_defenders;
    if (!att_mono || !def_mono) {
      ++mixed;
      continue;
    }
    const int att_bit = n_att_first == N ? 0 : 1;
    const int def_bit = ordinary_first == free_defenders ? 0 : 1;
    const int state = cfg.model == Model::Baseline ? att_bit + 2 * def_bit : def_bit + 2 * att_bit;
    ++tally[static_cast<std::size_t>(state)];
  }

  est.samples = cfg.steps - cfg.burn_in;
  const double total = static_cast<double>(est.samples);
  for (std::size_t k = 0; k < 4; ++k) est.occupancy[k] = static_cast<double>(tally[k]) / total;
  est.residual = static_cast<double>(mixed) / total;
  for (int i = 0; i < z; ++i) est.committed_final += defenders[static_cast<std::size_t>(i)] == kFirst;
  return est;
}

OccupancyEstimate simulate_replicas(const SimConfig& cfg, int replicas, int threads) {
  if (replicas < 1) throw ConfigError("replicas must be at least 1");
  validate_sim(cfg);
  std::vector<OccupancyEstimate> runs(static_cast<std::size_t>(replicas));
  parallel_for(runs.size(), threads,
               [&](std::size_t r) { runs[r] = simulate(cfg, static_cast<std::uint64_t>(r)); });
  OccupancyEstimate pooled;
  pooled.model = cfg.model;
  const double w = 1.0 / static_cast<double>(replicas);
  for (const auto& e : runs) {
    for (std::size_t k = 0; k < 4; ++k) pooled.occupancy[k] += w * e.occupancy[k];
    pooled.residual += w * e.residual;
    pooled.samples += e.samples;
    pooled.committed_final += e.committed_final;
  }
  return pooled;
}

ComparisonReport compare(const OccupancyEstimate& est, const StationaryDist& pi,
                         Model analytic_model) {
  if (est.model != analytic_model) {
    throw ConfigError("occupancy is for the " + std::string(model_name(est.model)) +
                      " model, analytic distribution for the " +
                      std::string(model_name(analytic_model)) + " model");
  }
  ComparisonReport rep;
  rep.residual = est.residual;
  double mono = 0.0;
  for (double v : est.occupancy) mono += v;
  for (std::size_t k = 0; k < 4; ++k) {
    const double q = mono > 0.0 ? est.occupancy[k] / mono : 0.0;
    rep.l1 += std::abs(q - pi.pi[k]);
  }
  if (mono == 0.0) rep.warnings.push_back("no monomorphic time observed");
  if (est.residual > kMaxResidual) {
    rep.mu_too_large = true;
    rep.warnings.push_back("mixed-state share " + format_fixed(est.residual, 3) + " exceeds " +
                           format_fixed(kMaxResidual, 1) + "; mutation rate too large");
  }
  return rep;
}

}  // namespace egtsec
