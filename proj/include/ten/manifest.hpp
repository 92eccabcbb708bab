#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ten {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Record of one stage run, written as manifest.json next to the stage's
// artifacts. Deliberately carries no timestamps or host details so reruns
// with identical inputs produce byte-identical files.
struct Manifest {
  std::string subcommand;
  std::string status = "ok";  // "ok" or "failed"
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<std::string> inputs;    // logical input descriptions
  std::vector<std::string> artifacts; // file names relative to the directory
};

// Serializes the manifest; artifact digests are computed from the files on
// disk (FNV-1a 64 over bytes), so the caller writes artifacts first.
nlohmann::ordered_json manifest_to_json(const Manifest& manifest,
                                        const std::filesystem::path& dir);

// Writes dir/manifest.json (creating dir if needed).
void write_manifest(const Manifest& manifest,
                    const std::filesystem::path& dir);

// Prepares an output directory: creates it if missing; if it already exists
// and is non-empty, refuses unless force is set (then wipes its contents).
void ensure_fresh_dir(const std::filesystem::path& dir, bool force);

}  // namespace ten
