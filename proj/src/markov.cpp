#include "egtsec/markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "egtsec/error.hpp"
#include "egtsec/fixation.hpp"
#include "egtsec/format.hpp"

namespace egtsec {

std::string_view model_name(Model m) {
  return m == Model::Baseline ? "baseline" : "differential";
}

namespace {

void set_transition(EmbeddedChain& c, std::size_t from, std::size_t to, double rho) {
  c.fixation[from][to] = rho;
  c.matrix[from][to] = 0.5 * rho;
}

void fill_diagonal(EmbeddedChain& c) {
  for (std::size_t i = 0; i < 4; ++i) {
    double out = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i) out += c.matrix[i][j];
    }
    c.matrix[i][i] = 1.0 - out;
  }
}

}  // namespace

EmbeddedChain build_baseline_chain(const BaselineParams& p, int N, double beta) {
  if (N < 2) throw OutOfRange("population size must be at least 2");
  EmbeddedChain c;
  c.model = Model::Baseline;
  for (std::size_t i = 0; i < 4; ++i) c.labels[i] = kBaselineLabels[i];

  const auto att_vs_D = attacker_payoffs_against(DefenderMove::Defend, p);
  const auto att_vs_ND = attacker_payoffs_against(DefenderMove::NoDefend, p);
  const auto def_vs_A = defender_payoffs_against(AttackerMove::Attack, p);
  const auto def_vs_NA = defender_payoffs_against(AttackerMove::NoAttack, p);

  // delta is always mutant payoff minus resident payoff.
  auto rho = [&](double delta) { return constant_payoff_fixation(beta, delta, N); };
  const auto AD = index(BaselineState::A_D);
  const auto NAD = index(BaselineState::NA_D);
  const auto AND = index(BaselineState::A_ND);
  const auto NAND = index(BaselineState::NA_ND);

  set_transition(c, AD, NAD, rho(att_vs_D.no_attack - att_vs_D.attack));
  set_transition(c, AD, AND, rho(def_vs_A.no_defend - def_vs_A.defend));
  set_transition(c, NAD, AD, rho(att_vs_D.attack - att_vs_D.no_attack));
  set_transition(c, NAD, NAND, rho(def_vs_NA.no_defend - def_vs_NA.defend));
  set_transition(c, AND, AD, rho(def_vs_A.defend - def_vs_A.no_defend));
  set_transition(c, AND, NAND, rho(att_vs_ND.no_attack - att_vs_ND.attack));
  set_transition(c, NAND, NAD, rho(def_vs_NA.defend - def_vs_NA.no_defend));
  set_transition(c, NAND, AND, rho(att_vs_ND.attack - att_vs_ND.no_attack));
  fill_diagonal(c);
  return c;
}

EmbeddedChain build_diff_chain(const DiffParams& p, const PopulationConfig& cfg) {
  validate_population(cfg);
  const int N = cfg.N;
  const int z = cfg.z;
  const double beta = cfg.beta;

  EmbeddedChain c;
  c.model = Model::Differential;
  for (std::size_t i = 0; i < 4; ++i) c.labels[i] = kDiffLabels[i];

  const auto AH = index(DiffState::A_H);
  const auto AL = index(DiffState::A_L);
  const auto NAH = index(DiffState::NA_H);
  const auto NAL = index(DiffState::NA_L);

  // Attackers facing a monomorphic defender state also meet the committed
  // defenders, so "all L" means z H agents plus N - z L agents.
  const double attack_vs_H = avg_payoffs_with_zealots(N, N - z, p, cfg).A;
  const double attack_vs_L = avg_payoffs_with_zealots(N, 0, p, cfg).A;
  auto rho_att = [&](double delta) { return constant_payoff_fixation(beta, delta, N); };
  set_transition(c, AH, NAH, rho_att(-attack_vs_H));
  set_transition(c, NAH, AH, rho_att(attack_vs_H));
  set_transition(c, AL, NAL, rho_att(-attack_vs_L));
  set_transition(c, NAL, AL, rho_att(attack_vs_L));

  if (z == N) {
    set_transition(c, AH, AL, 0.0);
    set_transition(c, NAH, NAL, 0.0);
    set_transition(c, AL, AH, 1.0);
    set_transition(c, NAL, NAH, 1.0);
  } else {
    const auto vs_all_A = avg_payoffs_with_zealots(N, 0, p, cfg);
    const auto vs_all_NA = avg_payoffs_with_zealots(0, 0, p, cfg);
    const double delta_A = vs_all_A.H - vs_all_A.L;
    const double delta_NA = vs_all_NA.H - vs_all_NA.L;
    set_transition(c, AH, AL, l_invasion_fixation(delta_A, N, z, beta));
    set_transition(c, AL, AH, h_invasion_fixation(delta_A, N, z, beta));
    set_transition(c, NAH, NAL, l_invasion_fixation(delta_NA, N, z, beta));
    set_transition(c, NAL, NAH, h_invasion_fixation(delta_NA, N, z, beta));
  }
  fill_diagonal(c);
  return c;
}

namespace {

using Reach = std::array<std::array<bool, 4>, 4>;

Reach reachability(const Matrix4& m) {
  Reach r{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) r[i][j] = (i == j) || m[i][j] > 0.0;
  }
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
    }
  }
  return r;
}

// Closed communicating classes, each as a sorted list of state indices.
std::vector<std::vector<std::size_t>> closed_classes(const Matrix4& m) {
  const Reach r = reachability(m);
  std::vector<std::vector<std::size_t>> out;
  std::array<bool, 4> seen{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = 0; j < 4; ++j) {
      if (r[i][j] && r[j][i]) cls.push_back(j);
    }
    for (auto j : cls) seen[j] = true;
    bool closed = true;
    for (auto a : cls) {
      for (std::size_t b = 0; b < 4; ++b) {
        if (r[a][b] && !(r[b][a])) closed = false;
      }
    }
    if (closed) out.push_back(std::move(cls));
  }
  return out;
}

// Stationary vector of the chain restricted to `states` by GTH elimination:
// states are censored out one at a time, and the diagonal is never formed
// as 1 - (row sum), so no step subtracts. Small components come out with
// full relative accuracy even when the dominant state is within 1e-16 of 1.
std::vector<double> solve_closed_class(const Matrix4& m, const std::vector<std::size_t>& states) {
  const std::size_t n = states.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r != c) a[r][c] = m[states[r]][states[c]];
    }
  }
  for (std::size_t k = n; k-- > 1;) {
    double out = 0.0;
    for (std::size_t j = 0; j < k; ++j) out += a[k][j];
    if (out == 0.0) throw ReducibleChain("stationary system is singular");
    for (std::size_t i = 0; i < k; ++i) a[i][k] /= out;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j) a[i][j] += a[i][k] * a[k][j];
      }
    }
  }
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  double total = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) x[j] += x[i] * a[i][j];
    total += x[j];
  }
  for (auto& v : x) v /= total;
  return x;
}

}  // namespace

StationaryDist stationary(const EmbeddedChain& chain) {
  const auto classes = closed_classes(chain.matrix);
  if (classes.size() != 1) {
    std::ostringstream msg;
    msg << "chain has " << classes.size() << " closed classes:";
    for (const auto& cls : classes) {
      msg << " {";
      for (std::size_t k = 0; k < cls.size(); ++k) {
        msg << (k ? "," : "") << chain.labels[cls[k]];
      }
      msg << "}";
    }
    throw ReducibleChain(msg.str());
  }
  const auto& cls = classes.front();
  const auto x = solve_closed_class(chain.matrix, cls);

  StationaryDist d;
  for (std::size_t k = 0; k < cls.size(); ++k) d.pi[cls[k]] = x[k];
  return d;
}

double stationary_residual(const EmbeddedChain& chain, const StationaryDist& d) {
  double worst = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += d.pi[i] * chain.matrix[i][j];
    worst = std::max(worst, std::abs(s - d.pi[j]));
  }
  return worst;
}

std::size_t argmax(const StationaryDist& d) {
  return static_cast<std::size_t>(std::max_element(d.pi.begin(), d.pi.end()) - d.pi.begin());
}

namespace {

RiskRow make_row(int number, std::size_t from, std::size_t to, double lhs, double rhs) {
  // Row holds when lhs > rhs.
  return {number, from, to, lhs > rhs, lhs == rhs};
}

}  // namespace

RiskDominance risk_dominance_baseline(const BaselineParams& p) {
  RiskDominance rd;
  rd.model = Model::Baseline;
  const auto AD = index(BaselineState::A_D);
  const auto NAD = index(BaselineState::NA_D);
  const auto AND = index(BaselineState::A_ND);
  const auto NAND = index(BaselineState::NA_ND);
  rd.rows[0] = make_row(1, AD, NAD, p.c_a, p.b_a * (1.0 - p.p_d));
  rd.rows[1] = make_row(2, AND, NAND, p.c_a, p.b_a);
  rd.rows[2] = make_row(3, AD, AND, p.c_d, p.p_d * (p.b_d + p.w));
  rd.rows[3] = make_row(4, NAD, NAND, p.c_d, p.b_d);
  return rd;
}

RiskDominance risk_dominance_diff(const DiffParams& p) {
  RiskDominance rd;
  rd.model = Model::Differential;
  const auto AH = index(DiffState::A_H);
  const auto AL = index(DiffState::A_L);
  const auto NAH = index(DiffState::NA_H);
  const auto NAL = index(DiffState::NA_L);
  const auto def = diff_defender_payoffs(p);
  rd.rows[0] = make_row(1, AH, NAH, p.c_aH, p.b_aH * (1.0 - p.p_dH));
  rd.rows[1] = make_row(2, AL, NAL, p.c_aL, p.b_aL * (1.0 - p.p_dL));
  rd.rows[2] = make_row(3, AH, AL, def.L_vs_A, def.H_vs_A);
  rd.rows[3] = make_row(4, NAH, NAL, def.L_vs_NA, def.H_vs_NA);
  return rd;
}

std::string_view agreement_name(Agreement a) {
  switch (a) {
    case Agreement::Agree:
      return "agree";
    case Agreement::Disagree:
      return "disagree";
    case Agreement::NoDominantDirection:
      break;
  }
  return "no dominant direction";
}

bool ConsistencyReport::all_agree() const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [](const PairConsistency& p) { return p.agreement == Agreement::Agree; });
}

bool ConsistencyReport::all_tied() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairConsistency& p) {
    return p.chain_direction == Direction::None;
  });
}

ConsistencyReport dominance_consistency(const EmbeddedChain& chain, const RiskDominance& rd) {
  ConsistencyReport rep;
  for (std::size_t k = 0; k < 4; ++k) {
    auto& pc = rep.pairs[k];
    pc.row = rd.rows[k];
    pc.rho_forward = chain.fixation[pc.row.from][pc.row.to];
    pc.rho_reverse = chain.fixation[pc.row.to][pc.row.from];
    pc.payoff_direction = pc.row.tie     ? Direction::None
                          : pc.row.holds ? Direction::Forward
                                         : Direction::Reverse;
    pc.chain_direction = pc.rho_forward > pc.rho_reverse   ? Direction::Forward
                         : pc.rho_forward < pc.rho_reverse ? Direction::Reverse
                                                           : Direction::None;
    if (pc.payoff_direction == Direction::None || pc.chain_direction == Direction::None) {
      pc.agreement = Agreement::NoDominantDirection;
    } else {
      pc.agreement =
          pc.payoff_direction == pc.chain_direction ? Agreement::Agree : Agreement::Disagree;
    }
  }
  return rep;
}

namespace {

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

}  // namespace

std::string export_chain(const EmbeddedChain& chain, const StationaryDist& pi,
                         const RiskDominance& rd) {
  std::string out;
  out += "digraph embedded_chain {\n";
  out += "  // model: " + std::string(model_name(chain.model)) + "\n";
  out += "  node [shape=ellipse];\n";
  const std::size_t top = argmax(pi);
  for (std::size_t i = 0; i < 4; ++i) {
    out += "  " + quoted(chain.labels[i]) + " [label=\"" + std::string(chain.labels[i]) +
           "\\npi=" + format_fixed(pi.pi[i], 3) + "\"";
    if (i == top) out += ", style=filled, fillcolor=\"#b39ddb\"";
    out += "];\n";
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j || !adjacent(i, j)) continue;
      if (!(chain.fixation[i][j] > chain.fixation[j][i])) continue;
      out += "  " + quoted(chain.labels[i]) + " -> " + quoted(chain.labels[j]) +
             " [label=\"rho=" + format_sci(chain.fixation[i][j], 3) + "\"];\n";
    }
  }
  for (const auto& row : rd.rows) {
    out += "  // risk-dominance " + std::to_string(row.number) + " " +
           std::string(chain.labels[row.from]) + " -> " + std::string(chain.labels[row.to]) +
           ": " + (row.tie ? "tie" : row.holds ? "holds" : "fails") + "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace egtsec
