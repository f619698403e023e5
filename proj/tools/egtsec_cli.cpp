#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "egtsec/config.hpp"
#include "egtsec/error.hpp"
#include "egtsec/io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw egtsec::ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flag beats EGT_SEED beats 1.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("EGT_SEED");
  if (env == nullptr || *env == '\0') return 1;
  const std::string_view s(env);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw egtsec::ConfigError("EGT_SEED is not an unsigned 64-bit integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attacker-defender evolutionary dynamics experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  const std::map<std::string, std::string> blurb = {
      {"stationary", "stationary distribution and transition matrix"},
      {"sweep", "stationary distribution over a 1-D parameter grid"},
      {"heatmap", "H/L model: high-defence share over (z, beta)"},
      {"random-games", "random H/L games under several committed-defender scenarios"},
      {"robustness", "mean and SD of the stationary distribution with other parameters redrawn"},
      {"welfare", "H/L model: social welfare over z"},
      {"simulate", "agent-based run compared with the analytic distribution"},
      {"export-chain", "embedded chain as Graphviz DOT"},
  };
  for (const auto& name : egtsec::command_names()) {
    auto* sub = app.add_subcommand(name, blurb.count(name) ? blurb.at(name) : "");
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "RNG seed (overrides EGT_SEED)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const auto cfg = egtsec::parse_config(read_file(config_path));
    const auto manifest =
        egtsec::run_command(command, cfg, resolve_seed(seed), out_dir, threads);
    for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& f : manifest.outputs) std::cout << f.file << " " << f.sha256 << "\n";
  } catch (const egtsec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const egtsec::ConstraintViolation& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
