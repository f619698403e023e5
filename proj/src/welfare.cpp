#include "egtsec/welfare.hpp"

#include <cmath>

#include "egtsec/error.hpp"

namespace egtsec {

double success_rate(const StationaryDist& pi, const DiffParams& p) {
  return pi.pi[index(DiffState::A_H)] * (1.0 - p.p_dH) +
         pi.pi[index(DiffState::A_L)] * (1.0 - p.p_dL);
}

namespace {

struct StatePayoffs {
  std::array<double, 4> defender{};
  std::array<double, 4> attacker{};
};

StatePayoffs state_payoffs(const DiffDefenderPayoffs& d, const DiffAttackerPayoffs& a) {
  StatePayoffs s;
  s.defender = {d.H_vs_A, d.L_vs_A, d.H_vs_NA, d.L_vs_NA};
  s.attacker = {a.A_vs_H, a.A_vs_L, a.NA_vs_H, a.NA_vs_L};
  return s;
}

}  // namespace

std::array<double, 4> per_state_welfare(const DiffParams& p) {
  const auto s = state_payoffs(diff_defender_payoffs(p), diff_attacker_payoffs(p));
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = s.attacker[k] + s.defender[k];
  return out;
}

WelfareReport social_welfare(const StationaryDist& pi, const DiffParams& p,
                             const PopulationConfig& cfg) {
  const auto s = state_payoffs(effective_defender_payoffs(p, cfg), diff_attacker_payoffs(p));
  WelfareReport r;
  for (std::size_t k = 0; k < 4; ++k) {
    r.per_state[k] = s.defender[k] + s.attacker[k];
    r.sw_defender += pi.pi[k] * s.defender[k];
    r.sw_attacker += pi.pi[k] * s.attacker[k];
    r.sw_total += pi.pi[k] * r.per_state[k];
  }
  r.pi_succ = success_rate(pi, p);
  return r;
}

int max_subsidised(double budget, double C_H) {
  if (!(C_H > 0.0)) throw ConstraintViolation("C_H > 0 violated");
  if (!(budget >= 0.0)) throw ConstraintViolation("budget >= 0 violated");
  // The rounded quotient can sit one off the true floor.
  // relative slack so 3 x 0.1 fits a 0.3 budget
  const double cap = budget * (1.0 + 1e-12);
  auto z = static_cast<int>(std::floor(budget / C_H));
  while ((z + 1) * C_H <= cap) ++z;
  while (z > 0 && z * C_H > cap) --z;
  return z;
}

}  // namespace egtsec
