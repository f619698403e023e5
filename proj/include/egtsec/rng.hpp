#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace egtsec {

// Identifies the generator recipe below in output metadata. Bump it whenever
// the mapping from (seed, stream, index) to drawn numbers changes.
inline constexpr std::string_view kGeneratorVersion = "mt19937_64+splitmix64/v1";

std::uint64_t splitmix64(std::uint64_t x);

// Seed for sample `index` of stream `stream` under a run seed. Results depend
// only on these three numbers, never on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// mt19937_64 with explicitly specified conversions; the std distributions
// are implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // (lo, hi]; returns hi exactly when lo == hi.
  double uniform_open_closed(double lo, double hi) { return hi - uniform01() * (hi - lo); }

  // {0, ..., n-1}, n >= 1.
  std::uint64_t index(std::uint64_t n) {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace egtsec
