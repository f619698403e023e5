#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "egtsec/config.hpp"
#include "egtsec/error.hpp"
#include "egtsec/io.hpp"

using namespace egtsec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("egtsec_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  CHECK(parse_config("") == Config{});
  CHECK(parse_config("# nothing\n\n   \n") == Config{});
  const Config c;
  CHECK(c.sweep_grid.size() == 101);
  CHECK(c.heatmap_z.size() == 21);
  CHECK(c.heatmap_beta.size() == 51);
  CHECK(c.resolved_robustness_param() == "p_dH");
}

TEST_CASE("single overrides") {
  const auto c = parse_config("diff.C_H = 0.5\npop.z = 6\npop.subsidised = true\n");
  CHECK(c.diff.C_H == 0.5);
  CHECK(c.pop.z == 6);
  CHECK(c.pop.subsidised);
  Config expect;
  expect.diff.C_H = 0.5;
  expect.pop.z = 6;
  expect.pop.subsidised = true;
  CHECK(c == expect);

  const auto g = parse_config("sweep.grid = 0:1:5\nrandom.scenarios = 0, 6s\nrange.b_aH = 0.5, 1.5\n");
  CHECK(g.sweep_grid == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(g.random_scenarios == std::vector<Scenario>{{0, false}, {6, true}});
  CHECK(g.ranges.at("b_aH") == Range{0.5, 1.5});

  CHECK(parse_config("model.type = baseline\n").resolved_robustness_param() == "p_d");
}

TEST_CASE("errors carry line numbers and suggestions") {
  CHECK(error_of("\ndiff.C_h = 0.4\n") == "line 2: unknown key 'diff.C_h' (did you mean C_H)");
  CHECK(error_of("pop.N = 10\npop.N = 20\n").find("line 2") == 0);
  CHECK(error_of("pop.N = 10\npop.N = 20\n").find("duplicate") != std::string::npos);
  CHECK(error_of("pop.beta = fast\n").find("line 1") == 0);
  CHECK(error_of("pop.beta = nan\n").find("line 1") == 0);
  CHECK(error_of("no equals sign\n").find("line 1") == 0);
  CHECK_THROWS_AS(parse_config("pop.z = 101\n"), Error);
  CHECK_THROWS_AS(parse_config("diff.C_L = 0.5\n"), ConstraintViolation);
}

TEST_CASE("serialization round trip") {
  Config c;
  c.model = Model::Baseline;
  c.baseline.p_d = 0.1 + 0.2;
  c.pop.beta = 1.0 / 3.0;
  c.sweep_param = "p_d";
  c.sweep_grid = {0.1, 1e-7, 0.3};
  c.random_scenarios = {{3, true}, {100, false}};
  c.ranges["c_a"] = Range{0.0, 0.5};
  c.sim_replicas = 4;
  c.welfare_z = {0, 5};
  const auto text = serialize_config(c);
  CHECK(parse_config(text) == c);
  CHECK(serialize_config(parse_config(text)) == text);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(parse_config(serialize_config(Config{})) == Config{});
}

TEST_CASE("csv fields and state ids") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(state_id(Model::Baseline, 3) == "NA_ND");
  CHECK(state_id(Model::Differential, 0) == "A_H");
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("stationary run writes checkable artifacts") {
  const auto dir = scratch("stationary");
  const auto m = run_command("stationary", Config{}, 5, dir);
  CHECK(m.command == "stationary");
  CHECK(m.seed == 5);
  CHECK(m.artifact_version == "egtsec-artifacts/1");
  REQUIRE(m.outputs.size() == 2);

  for (const auto& out : m.outputs) {
    const auto bytes = slurp(dir / out.file);
    CHECK(sha256_hex(bytes) == out.sha256);
    CHECK(bytes.size() == out.bytes);
    CHECK(bytes.find('\r') == std::string::npos);
  }

  std::istringstream csv(slurp(dir / "stationary.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "state,pi");
  double sum = 0.0;
  int rows = 0;
  while (std::getline(csv, line)) {
    sum += std::stod(line.substr(line.find(',') + 1));
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  const auto manifest = slurp(dir / "manifest.json");
  CHECK(manifest == manifest_json(m));
  CHECK(manifest.back() == '\n');
  CHECK(manifest.find("\"seed\": 5") != std::string::npos);
  CHECK(parse_config(m.config) == Config{});

  // same inputs, same bytes
  const auto dir2 = scratch("stationary2");
  const auto m2 = run_command("stationary", Config{}, 5, dir2, 4);
  CHECK(slurp(dir2 / "manifest.json") == manifest);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("command checks") {
  CHECK(command_names().size() == 8);
  const auto dir = scratch("bad");
  CHECK_THROWS_AS(run_command("nonsense", Config{}, 1, dir), ConfigError);
  Config base;
  base.model = Model::Baseline;
  CHECK_THROWS_AS(run_command("heatmap", base, 1, dir), ConfigError);
  fs::remove_all(dir);
}
