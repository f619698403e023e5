#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace egtsec {

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

// Attack/defence game with a single defence level.
//   w   asset value lost by the defender on a successful attack
//   c_a attack cost,  b_a attacker benefit
//   c_d defence cost, b_d defender benefit
//   p_d probability that a defence succeeds
//
// Constructing one does not check anything; call validate_baseline() for the
// strict path. Sweeps deliberately cross the constraint boundaries and use
// baseline_violation() to flag points instead.
struct BaselineParams {
  double w = 0.98;
  double c_a = 0.41;
  double c_d = 0.20;
  double b_a = 0.90;
  double b_d = 0.79;
  double p_d = 0.26;

  friend bool operator==(const BaselineParams&, const BaselineParams&) = default;
};

// Differential-access game: defenders choose high (H) or low (L) defence.
// Attacker cost and benefit depend on the defence type being attacked.
struct DiffParams {
  double c_aH = 0.85;
  double c_aL = 0.10;
  double b_aH = 1.90;
  double b_aL = 1.60;
  double p_dH = 0.82;
  double p_dL = 0.75;
  double B_H = 0.75;
  double B_L = 0.55;
  double C_H = 0.41;
  double C_L = 0.20;
  double W_H = 0.22;
  double W_L = 0.10;

  friend bool operator==(const DiffParams&, const DiffParams&) = default;
};

// N agents per population, z of the defenders are committed to H.
struct PopulationConfig {
  int N = 100;
  int z = 0;
  double beta = 0.1;
  bool subsidised = false;

  friend bool operator==(const PopulationConfig&, const PopulationConfig&) = default;
};

// First violated constraint as "<lhs> <op> <rhs> violated", or nullopt.
std::optional<std::string> baseline_violation(const BaselineParams& p);
std::optional<std::string> diff_violation(const DiffParams& p);
std::optional<std::string> population_violation(const PopulationConfig& cfg);

// Throw ConstraintViolation naming the first broken inequality; otherwise
// return the argument unchanged.
const BaselineParams& validate_baseline(const BaselineParams& p);
const DiffParams& validate_diff(const DiffParams& p);
const PopulationConfig& validate_population(const PopulationConfig& cfg);

// ---------------------------------------------------------------------------
// Strategies and monomorphic states
// ---------------------------------------------------------------------------

enum class AttackerMove { Attack, NoAttack };
enum class DefenderMove { Defend, NoDefend };

// Canonical order: (A,D), (NA,D), (A,ND), (NA,ND).
enum class BaselineState { A_D = 0, NA_D = 1, A_ND = 2, NA_ND = 3 };
// Canonical order: (A,H), (A,L), (NA,H), (NA,L).
enum class DiffState { A_H = 0, A_L = 1, NA_H = 2, NA_L = 3 };

inline constexpr std::array<BaselineState, 4> kBaselineStates = {
    BaselineState::A_D, BaselineState::NA_D, BaselineState::A_ND, BaselineState::NA_ND};
inline constexpr std::array<DiffState, 4> kDiffStates = {
    DiffState::A_H, DiffState::A_L, DiffState::NA_H, DiffState::NA_L};

inline constexpr std::array<std::string_view, 4> kBaselineLabels = {"(A,D)", "(NA,D)", "(A,ND)",
                                                                    "(NA,ND)"};
inline constexpr std::array<std::string_view, 4> kDiffLabels = {"(A,H)", "(A,L)", "(NA,H)",
                                                                "(NA,L)"};

std::string_view label(BaselineState s);
std::string_view label(DiffState s);

constexpr std::size_t index(BaselineState s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index(DiffState s) { return static_cast<std::size_t>(s); }

// ---------------------------------------------------------------------------
// Payoffs
// ---------------------------------------------------------------------------

struct PayoffPair {
  double defender = 0.0;
  double attacker = 0.0;
};

// One cell of the pairwise attack/defence payoff table.
PayoffPair baseline_payoffs(DefenderMove d, AttackerMove a, const BaselineParams& p);

// Per-capita payoffs of the two attacker strategies when the defender
// population is monomorphic in `defenders` (and vice versa). They do not
// depend on the focal population's own composition.
struct AttackerPayoffs {
  double attack = 0.0;
  double no_attack = 0.0;
};
struct DefenderPayoffs {
  double defend = 0.0;
  double no_defend = 0.0;
};
AttackerPayoffs attacker_payoffs_against(DefenderMove defenders, const BaselineParams& p);
DefenderPayoffs defender_payoffs_against(AttackerMove attackers, const BaselineParams& p);

struct DiffAttackerPayoffs {
  double A_vs_H = 0.0;
  double A_vs_L = 0.0;
  double NA_vs_H = 0.0;
  double NA_vs_L = 0.0;
};
struct DiffDefenderPayoffs {
  double H_vs_A = 0.0;
  double L_vs_A = 0.0;
  double H_vs_NA = 0.0;
  double L_vs_NA = 0.0;
};

DiffAttackerPayoffs diff_attacker_payoffs(const DiffParams& p);
DiffDefenderPayoffs diff_defender_payoffs(const DiffParams& p);

// (z/N)*C_H when the committed defenders are subsidised, 0 otherwise.
double subsidy_adjustment(const DiffParams& p, const PopulationConfig& cfg);

struct SubsidisedHPayoffs {
  double H_vs_A = 0.0;
  double H_vs_NA = 0.0;
};
// H payoffs raised by subsidy_adjustment(). With cfg.subsidised == false the
// unadjusted values come back.
SubsidisedHPayoffs subsidised_h_payoffs(const DiffParams& p, const PopulationConfig& cfg);

// Defender payoffs as seen by imitating defenders: H entries carry the
// subsidy adjustment, L entries never do.
DiffDefenderPayoffs effective_defender_payoffs(const DiffParams& p, const PopulationConfig& cfg);

struct AveragePayoffs {
  double H = 0.0;
  double L = 0.0;
  double A = 0.0;
  double NA = 0.0;
};

// Population-average payoffs with m_A attackers and m_H ordinary H
// defenders next to z committed ones. Throws OutOfRange on bad counts.
AveragePayoffs avg_payoffs_with_zealots(int m_A, int m_H, const DiffParams& p,
                                        const PopulationConfig& cfg);

}  // namespace egtsec
