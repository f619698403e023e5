#include "egtsec/model.hpp"

#include <cmath>
#include <string>

#include "egtsec/error.hpp"

namespace egtsec {

namespace {

struct Check {
  bool ok;
  const char* text;
};

template <std::size_t K>
std::optional<std::string> first_failure(const std::array<Check, K>& checks) {
  for (const auto& c : checks) {
    if (!c.ok) return std::string(c.text) + " violated";
  }
  return std::nullopt;
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> baseline_violation(const BaselineParams& p) {
  if (!finite_all({p.w, p.c_a, p.c_d, p.b_a, p.b_d, p.p_d})) {
    return std::string("all parameters finite violated");
  }
  return first_failure(std::array<Check, 11>{{
      {0.0 < p.w, "0 < w"},
      {p.w <= 1.0, "w <= 1"},
      {0.0 < p.c_a, "0 < c_a"},
      {p.c_a < p.w, "c_a < w"},
      {0.0 < p.c_d, "0 < c_d"},
      {p.c_d < p.w, "c_d < w"},
      {p.c_a < p.b_a, "c_a < b_a"},
      {p.c_d < p.b_d, "c_d < b_d"},
      {p.b_d <= p.w, "b_d <= w"},
      {0.0 < p.p_d, "0 < p_d"},
      {p.p_d <= 1.0, "p_d <= 1"},
  }});
}

std::optional<std::string> diff_violation(const DiffParams& p) {
  if (!finite_all({p.c_aH, p.c_aL, p.b_aH, p.b_aL, p.p_dH, p.p_dL, p.B_H, p.B_L, p.C_H, p.C_L,
                   p.W_H, p.W_L})) {
    return std::string("all parameters finite violated");
  }
  return first_failure(std::array<Check, 18>{{
      {0.0 < p.c_aH, "0 < c_aH"},
      {0.0 < p.c_aL, "0 < c_aL"},
      {0.0 < p.b_aH, "0 < b_aH"},
      {0.0 < p.b_aL, "0 < b_aL"},
      {0.0 < p.p_dH && p.p_dH <= 1.0, "0 < p_dH <= 1"},
      {0.0 < p.p_dL && p.p_dL <= 1.0, "0 < p_dL <= 1"},
      {0.0 < p.B_H, "0 < B_H"},
      {0.0 < p.B_L, "0 < B_L"},
      {0.0 < p.C_H, "0 < C_H"},
      {0.0 < p.C_L, "0 < C_L"},
      {0.0 < p.W_H, "0 < W_H"},
      {0.0 < p.W_L, "0 < W_L"},
      {p.C_L < p.C_H, "C_L < C_H"},
      {p.B_L < p.B_H, "B_L < B_H"},
      {p.W_L < p.W_H, "W_L < W_H"},
      {p.p_dL < p.p_dH, "p_dL < p_dH"},
      {p.b_aL < p.b_aH, "b_aL < b_aH"},
      {p.c_aL < p.c_aH, "c_aL < c_aH"},
  }});
}

std::optional<std::string> population_violation(const PopulationConfig& cfg) {
  if (cfg.N < 2) return std::string("N >= 2 violated");
  if (cfg.z < 0 || cfg.z > cfg.N) return std::string("0 <= z <= N violated");
  if (!(cfg.beta >= 0.0)) return std::string("beta >= 0 violated");
  return std::nullopt;
}

const BaselineParams& validate_baseline(const BaselineParams& p) {
  if (auto v = baseline_violation(p)) throw ConstraintViolation(*v);
  return p;
}

const DiffParams& validate_diff(const DiffParams& p) {
  if (auto v = diff_violation(p)) throw ConstraintViolation(*v);
  return p;
}

const PopulationConfig& validate_population(const PopulationConfig& cfg) {
  if (auto v = population_violation(cfg)) throw ConstraintViolation(*v);
  return cfg;
}

std::string_view label(BaselineState s) { return kBaselineLabels[index(s)]; }
std::string_view label(DiffState s) { return kDiffLabels[index(s)]; }

PayoffPair baseline_payoffs(DefenderMove d, AttackerMove a, const BaselineParams& p) {
  const bool defend = d == DefenderMove::Defend;
  const bool attack = a == AttackerMove::Attack;
  if (!defend && !attack) return {0.0, 0.0};
  if (!defend && attack) return {-p.w, -p.c_a + p.b_a};
  if (defend && !attack) return {-p.c_d + p.b_d, 0.0};
  return {-p.c_d + p.p_d * p.b_d - p.w * (1.0 - p.p_d), -p.c_a + p.b_a * (1.0 - p.p_d)};
}

AttackerPayoffs attacker_payoffs_against(DefenderMove defenders, const BaselineParams& p) {
  return {baseline_payoffs(defenders, AttackerMove::Attack, p).attacker,
          baseline_payoffs(defenders, AttackerMove::NoAttack, p).attacker};
}

DefenderPayoffs defender_payoffs_against(AttackerMove attackers, const BaselineParams& p) {
  return {baseline_payoffs(DefenderMove::Defend, attackers, p).defender,
          baseline_payoffs(DefenderMove::NoDefend, attackers, p).defender};
}

DiffAttackerPayoffs diff_attacker_payoffs(const DiffParams& p) {
  return {-p.c_aH + p.b_aH * (1.0 - p.p_dH), -p.c_aL + p.b_aL * (1.0 - p.p_dL), 0.0, 0.0};
}

DiffDefenderPayoffs diff_defender_payoffs(const DiffParams& p) {
  return {p.p_dH * p.B_H - p.C_H - (1.0 - p.p_dH) * p.W_H,
          p.p_dL * p.B_L - p.C_L - (1.0 - p.p_dL) * p.W_L, p.B_H - p.C_H, p.B_L - p.C_L};
}

double subsidy_adjustment(const DiffParams& p, const PopulationConfig& cfg) {
  if (!cfg.subsidised) return 0.0;
  return static_cast<double>(cfg.z) / static_cast<double>(cfg.N) * p.C_H;
}

SubsidisedHPayoffs subsidised_h_payoffs(const DiffParams& p, const PopulationConfig& cfg) {
  const auto d = diff_defender_payoffs(p);
  const double adj = subsidy_adjustment(p, cfg);
  return {d.H_vs_A + adj, d.H_vs_NA + adj};
}

DiffDefenderPayoffs effective_defender_payoffs(const DiffParams& p, const PopulationConfig& cfg) {
  auto d = diff_defender_payoffs(p);
  if (cfg.subsidised) {
    const auto h = subsidised_h_payoffs(p, cfg);
    d.H_vs_A = h.H_vs_A;
    d.H_vs_NA = h.H_vs_NA;
  }
  return d;
}

AveragePayoffs avg_payoffs_with_zealots(int m_A, int m_H, const DiffParams& p,
                                        const PopulationConfig& cfg) {
  const int N = cfg.N;
  const int z = cfg.z;
  if (m_A < 0 || m_A > N) {
    throw OutOfRange("attacker count " + std::to_string(m_A) + " outside [0, " +
                     std::to_string(N) + "]");
  }
  if (z < 0 || z > N || m_H < 0 || m_H > N - z) {
    throw OutOfRange("ordinary H count " + std::to_string(m_H) + " outside [0, " +
                     std::to_string(N - z) + "]");
  }
  const auto att = diff_attacker_payoffs(p);
  const auto def = effective_defender_payoffs(p, cfg);
  const double n = static_cast<double>(N);
  AveragePayoffs out;
  out.H = (m_A * def.H_vs_A + (N - m_A) * def.H_vs_NA) / n;
  out.L = (m_A * def.L_vs_A + (N - m_A) * def.L_vs_NA) / n;
  out.A = ((m_H + z) * att.A_vs_H + (N - z - m_H) * att.A_vs_L) / n;
  out.NA = 0.0;
  return out;
}

}  // namespace egtsec
