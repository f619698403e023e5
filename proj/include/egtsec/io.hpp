#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "egtsec/config.hpp"

namespace egtsec {

inline constexpr std::string_view kArtifactVersion = "egtsec-artifacts/1";

struct OutputFile {
  std::string file;  // name relative to the output directory
  std::string sha256;
  std::uint64_t bytes = 0;
};

struct RunManifest {
  std::string command;
  std::string config;  // serialize_config() of the resolved configuration
  std::uint64_t seed = 1;
  std::string artifact_version{kArtifactVersion};
  std::string generator_version;
  std::vector<OutputFile> outputs;  // in write order; the manifest is not listed
  std::vector<std::string> warnings;
};

std::string sha256_hex(std::string_view data);

// Pretty-printed JSON, fixed key order, trailing newline.
std::string manifest_json(const RunManifest& m);

// CSV field, quoted only when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

// "A_D", "NA_ND", "A_H", ...: state labels without commas or parentheses.
std::string state_id(Model m, std::size_t state);

const std::vector<std::string>& command_names();

// Runs one command and writes its CSV / DOT outputs plus manifest.json into
// `out_dir` (created if missing). Output bytes do not depend on `threads`.
// Throws ConfigError for an unknown command or a config the command cannot
// use, and Error for I/O failures.
RunManifest run_command(std::string_view name, const Config& cfg, std::uint64_t seed,
                        const std::filesystem::path& out_dir, int threads = 1);

}  // namespace egtsec
