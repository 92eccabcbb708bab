#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ten/gateway.hpp"

namespace ten {

// Full pipeline configuration, loaded from a JSON file. Relative paths are
// resolved against the directory containing the config file. API keys are
// never part of the file; the HTTP backend reads TEN_API_KEY from the
// environment.
struct PipelineConfig {
  std::string source = "numhg";  // corpus flavor: numhg | xsum
  std::filesystem::path corpus_in;
  int min_words = 200;  // xsum article length window (inclusive)
  int max_words = 500;
  std::filesystem::path demo_dir;  // empty: use the built-in demonstrations
  std::filesystem::path out_dir;

  bool mock = false;
  std::filesystem::path mock_fixture_dir;
  bool mock_strict = false;

  int parallelism = 4;
  int k = 15;
  double sample_temperature = 1.0;
  double margin = 0.05;
  bool retry_invalid = false;
  int max_article_chars = 20000;

  EndpointConfig teacher;
  EndpointConfig rationale_gen;
  EndpointConfig headline_gen;

  // Collects every violation; throws ConfigError listing all of them.
  void validate() const;

  // Snapshot for manifests: every knob that affects artifact content.
  // Excludes out_dir so relocating a run does not change its manifest.
  nlohmann::ordered_json snapshot() const;
};

// Parses the JSON file at `path`. Collects structural problems (unknown
// fields, wrong types) into a ConfigError; does not run validate().
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace ten
