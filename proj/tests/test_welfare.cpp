#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "egtsec/error.hpp"
#include "egtsec/experiments.hpp"
#include "egtsec/markov.hpp"
#include "egtsec/rng.hpp"
#include "egtsec/welfare.hpp"
#include "oracles.hpp"

using namespace egtsec;
using doctest::Approx;

namespace {

WelfareReport welfare_at(int z, bool sub, double beta) {
  const DiffParams p;
  const PopulationConfig pop{.z = z, .beta = beta, .subsidised = sub};
  return social_welfare(stationary(build_diff_chain(p, pop)), p, pop);
}

void check_welfare(const WelfareReport& w, const oracle::Welfare& ref) {
  CHECK(w.sw_defender == Approx(ref.d).epsilon(1e-12));
  CHECK(w.sw_attacker == Approx(ref.a).epsilon(1e-10));
  CHECK(w.sw_total == Approx(ref.total).epsilon(1e-12));
}

}  // namespace

TEST_CASE("success rate") {
  const DiffParams p;
  CHECK(success_rate(StationaryDist{{1, 0, 0, 0}}, p) == Approx(0.18));
  CHECK(success_rate(StationaryDist{{0, 0, 0.5, 0.5}}, p) == 0.0);
  CHECK(success_rate(StationaryDist{{0.2, 0.3, 0.25, 0.25}}, p) == Approx(0.111));
}

TEST_CASE("per-state welfare") {
  const DiffParams p;
  const auto w = per_state_welfare(p);
  CHECK(w[index(DiffState::A_H)] == Approx(-0.3426).epsilon(1e-12));
  CHECK(w[index(DiffState::NA_H)] == Approx(p.B_H - p.C_H));
  CHECK(w[index(DiffState::NA_L)] == Approx(0.35));
}

TEST_CASE("degenerate distribution at (NA,L)") {
  const DiffParams p;
  const auto w = social_welfare(StationaryDist{{0, 0, 0, 1}}, p, PopulationConfig{});
  CHECK(w.sw_total == Approx(p.B_L - p.C_L));
  CHECK(w.sw_attacker == 0.0);
  CHECK(w.pi_succ == 0.0);
}

TEST_CASE("welfare invariants on random inputs") {
  Rng rng(derive_seed(31, 0, 0));
  for (int k = 0; k < 500; ++k) {
    const auto p = sample_random_game(rng, default_ranges(Model::Differential));
    const PopulationConfig pop{.z = static_cast<int>(rng.index(30)), .beta = 2.0 * rng.uniform01(),
                               .subsidised = rng.bernoulli(0.5)};
    const auto pi = stationary(build_diff_chain(p, pop));
    const auto w = social_welfare(pi, p, pop);
    CHECK(std::abs(w.sw_total - (w.sw_defender + w.sw_attacker)) <= 1e-12);
    CHECK(w.pi_succ >= 0.0);
    CHECK(w.pi_succ <= std::max(1.0 - p.p_dH, 1.0 - p.p_dL) + 1e-15);

    PopulationConfig plain = pop;
    plain.subsidised = false;
    PopulationConfig plain_z0 = plain;
    plain_z0.z = 0;
    // no subsidy: the z used for the adjustment plays no role
    const auto a = social_welfare(pi, p, plain);
    const auto b = social_welfare(pi, p, plain_z0);
    CHECK(a.sw_defender == b.sw_defender);
    CHECK(a.sw_total == b.sw_total);
  }
}

TEST_CASE("welfare values match the independent oracle") {
  check_welfare(welfare_at(0, false, 0.1), oracle::kWelfareB01Z0);
  check_welfare(welfare_at(10, false, 0.1), oracle::kWelfareB01Z10);
  check_welfare(welfare_at(10, true, 0.1), oracle::kWelfareB01Z10s);
  check_welfare(welfare_at(0, false, 0.01), oracle::kWelfareB001Z0);
  check_welfare(welfare_at(10, false, 0.01), oracle::kWelfareB001Z10);
  check_welfare(welfare_at(10, true, 0.01), oracle::kWelfareB001Z10s);
}

TEST_CASE("subsidy raises defender welfare") {
  for (double beta : {0.01, 0.1, 1.0}) {
    for (int z = 1; z <= 20; ++z) {
      CHECK(welfare_at(z, true, beta).sw_defender > welfare_at(z, false, beta).sw_defender);
    }
  }
}

TEST_CASE("attacker welfare against committed defenders") {
  // The sharp drop: every z >= 1 sits well below z = 0.
  const double at0 = welfare_at(0, false, 0.1).sw_attacker;
  double lo = 1.0;
  double hi = -1.0;
  for (int z = 1; z <= 20; ++z) {
    const double v = welfare_at(z, false, 0.1).sw_attacker;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(at0 > 0.09);
  CHECK(hi < 0.0);
  CHECK(hi - lo < 3e-3);

  // Not monotone, though: one committed defender leaves more (A,H) mass
  // than two, and attacking H is a loss for the attacker.
  const auto z1 = welfare_at(1, false, 0.1);
  const auto z2 = welfare_at(2, false, 0.1);
  CHECK(z1.sw_attacker == Approx(-0.005626480507944761).epsilon(1e-10));
  CHECK(z2.sw_attacker == Approx(-0.003361598128487137).epsilon(1e-10));
  CHECK(z2.sw_attacker > z1.sw_attacker);
}

TEST_CASE("largest affordable commitment") {
  CHECK(max_subsidised(4.1, 0.41) == 10);
  CHECK(max_subsidised(0.0, 0.41) == 0);
  CHECK(max_subsidised(2.5, 0.41) == 6);
  CHECK(max_subsidised(0.4, 0.41) == 0);
  CHECK(max_subsidised(0.3, 0.1) == 3);
  CHECK_THROWS_AS(max_subsidised(1.0, 0.0), ConstraintViolation);
  CHECK_THROWS_AS(max_subsidised(-1.0, 0.41), ConstraintViolation);
}
