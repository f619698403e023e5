#include "egtsec/fixation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "egtsec/error.hpp"

namespace egtsec {

double fermi(double beta, double f_target, double f_self) {
  const double diff = f_target - f_self;
  if (diff == 0.0 || beta == 0.0) return 0.5;
  const double x = beta * diff;
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

// Shared by the zealot-free and zealot processes so that z == 0 reproduces
// rates_baseline bit for bit.
TransitionRates zealot_rates(int n, double delta, int N, int z, double beta) {
  const int free_agents = N - z;
  const double up = static_cast<double>(free_agents - n) / static_cast<double>(free_agents) *
                    (static_cast<double>(n + z) / static_cast<double>(N));
  const double down = static_cast<double>(n) / static_cast<double>(free_agents) *
                      (static_cast<double>(free_agents - n) / static_cast<double>(N));
  return {up * fermi(beta, delta, 0.0), down * fermi(beta, -delta, 0.0)};
}

void check_count(int n, int upper, const char* what) {
  if (n < 0 || n > upper) {
    throw OutOfRange(std::string(what) + " " + std::to_string(n) + " outside [0, " +
                     std::to_string(upper) + "]");
  }
}

}  // namespace

TransitionRates rates_baseline(int i, double delta, int N, double beta) {
  check_count(i, N, "focal count");
  return zealot_rates(i, delta, N, 0, beta);
}

TransitionRates rates_defenders_zealots(int n_H, double delta, int N, int z, double beta) {
  if (z < 0 || z >= N) {
    throw OutOfRange("committed count " + std::to_string(z) +
                     " leaves no ordinary defenders (N = " + std::to_string(N) + ")");
  }
  check_count(n_H, N - z, "ordinary H count");
  return zealot_rates(n_H, delta, N, z, beta);
}

TransitionRates rates_attackers(int n_A, double delta, int N, double beta) {
  check_count(n_A, N, "attacker count");
  return zealot_rates(n_A, delta, N, 0, beta);
}

double log_rate_ratio_zealots(int n_H, double delta, int z, double beta) {
  const double drift = beta == 0.0 ? 0.0 : beta * delta;
  return std::log(static_cast<double>(n_H) / static_cast<double>(n_H + z)) - drift;
}

double fixation_probability(const std::function<double(int)>& log_rate_ratio, int steps) {
  if (steps <= 0) return 1.0;
  std::vector<double> partial(static_cast<std::size_t>(steps));
  double running = 0.0;
  double shift = 0.0;  // max over {0, partial sums}; 0 stands for the leading 1
  for (int k = 1; k <= steps; ++k) {
    running += log_rate_ratio(k);
    partial[static_cast<std::size_t>(k - 1)] = running;
    shift = std::max(shift, running);
  }
  double scaled = std::exp(-shift);
  const double head = scaled;
  for (double s : partial) scaled += std::exp(s - shift);
  return head / scaled;
}

double constant_payoff_fixation(double beta, double delta, int n) {
  const double drift = beta == 0.0 ? 0.0 : beta * delta;
  return fixation_probability([drift](int) { return -drift; }, n - 1);
}

double closed_form_fixation(double beta, double delta, int n) {
  if (n < 1) throw OutOfRange("closed_form_fixation needs n >= 1");
  const double x = beta == 0.0 ? 0.0 : beta * delta;
  if (std::abs(x) <= 1e-12) return 1.0 / static_cast<double>(n);
  const double nx = static_cast<double>(n) * x;
  if (x > 0.0) return std::expm1(-x) / std::expm1(-nx);
  // Multiply through by e^{n x} to keep the exponentials bounded.
  return std::exp(static_cast<double>(n - 1) * x) * std::expm1(x) / std::expm1(nx);
}

double h_invasion_fixation(double delta, int N, int z, double beta) {
  if (z < 0 || z >= N) {
    throw OutOfRange("committed count " + std::to_string(z) + " leaves no ordinary defenders");
  }
  return fixation_probability(
      [=](int j) { return log_rate_ratio_zealots(j, delta, z, beta); }, N - z - 1);
}

double l_invasion_fixation(double delta, int N, int z, double beta) {
  if (z < 0 || z >= N) {
    throw OutOfRange("committed count " + std::to_string(z) + " leaves no ordinary defenders");
  }
  const int free_agents = N - z;
  // j counts L mutants; the H count is free_agents - j.
  return fixation_probability(
      [=](int j) { return -log_rate_ratio_zealots(free_agents - j, delta, z, beta); },
      free_agents - 1);
}

}  // namespace egtsec
