#pragma once

#include <array>

#include "egtsec/markov.hpp"
#include "egtsec/model.hpp"

namespace egtsec {

// pi(A,H) (1 - p_dH) + pi(A,L) (1 - p_dL): long-run chance that an attack
// happens and the defence fails.
double success_rate(const StationaryDist& pi, const DiffParams& p);

// Attacker plus defender payoff in each differential state, canonical order.
std::array<double, 4> per_state_welfare(const DiffParams& p);

struct WelfareReport {
  double sw_total = 0.0;
  double sw_defender = 0.0;
  double sw_attacker = 0.0;
  double pi_succ = 0.0;
  std::array<double, 4> per_state{};  // defender + attacker payoff per state
};

// Stationary expectation of the per-state payoffs. Under subsidy the
// defender payoff in the H states carries the (z/N) C_H transfer; who pays
// for it is outside the sum.
WelfareReport social_welfare(const StationaryDist& pi, const DiffParams& p,
                             const PopulationConfig& cfg);

// Largest z with z * C_H <= budget. Throws ConstraintViolation when
// C_H <= 0 or budget < 0.
int max_subsidised(double budget, double C_H);

}  // namespace egtsec
