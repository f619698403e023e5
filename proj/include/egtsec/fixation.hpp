#pragma once

#include <functional>

namespace egtsec {

// Probability that an agent with payoff f_self copies a role model with
// payoff f_target: 1 / (1 + exp(-beta * (f_target - f_self))). Saturates to
// exactly 0 or 1 instead of overflowing.
double fermi(double beta, double f_target, double f_self);

// One-step birth-death probabilities for the count of a focal strategy.
struct TransitionRates {
  double t_plus = 0.0;
  double t_minus = 0.0;
};

// i focal agents out of N, delta = f_focal - f_other.
TransitionRates rates_baseline(int i, double delta, int N, double beta);

// Defender population with z committed H agents. n_H counts the ordinary
// agents playing H, delta = Pi_H - Pi_L. Committed agents are role models but
// never revise. Throws OutOfRange when z >= N or n_H is outside [0, N - z].
TransitionRates rates_defenders_zealots(int n_H, double delta, int N, int z, double beta);

// Attacker population, delta = Pi_A - Pi_NA.
TransitionRates rates_attackers(int n_A, double delta, int N, double beta);

// log(T-(j) / T+(j)) for the zealot process, computed analytically so it
// stays finite when the rates themselves underflow.
double log_rate_ratio_zealots(int n_H, double delta, int z, double beta);

// Probability that a single mutant takes over:
//
//   rho = 1 / (1 + sum_{k=1..steps} prod_{j=1..k} T-(j)/T+(j))
//
// `log_rate_ratio(j)` returns log(T-(j)/T+(j)) for j = 1..steps. Partial
// products are kept as running log sums and combined with a max shift, so
// |log| terms in the thousands are fine. steps == 0 gives 1.
double fixation_probability(const std::function<double(int)>& log_rate_ratio, int steps);

// Product-form fixation of one mutant among n free agents when the payoff
// advantage of the mutant, delta, does not depend on composition.
double constant_payoff_fixation(double beta, double delta, int n);

// Analytic value of the same quantity:
//   (1 - e^{-beta delta}) / (1 - e^{-n beta delta}),  or 1/n when |beta delta| <= 1e-12.
double closed_form_fixation(double beta, double delta, int n);

// Fixation of one ordinary H mutant among N - z - 1 ordinary L defenders,
// with z committed H defenders present. delta = Pi_H - Pi_L.
double h_invasion_fixation(double delta, int N, int z, double beta);

// Fixation of one L mutant among the ordinary defenders when the other
// N - z - 1 ordinary defenders play H. "Fixation" means all ordinary agents
// play L; the committed agents keep playing H.
double l_invasion_fixation(double delta, int N, int z, double beta);

}  // namespace egtsec
