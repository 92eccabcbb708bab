#include "ten/manifest.hpp"

#include <algorithm>
#include <fstream>

#include "ten/errors.hpp"
#include "ten/hash.hpp"

namespace ten {

nlohmann::ordered_json manifest_to_json(const Manifest& manifest,
                                        const std::filesystem::path& dir) {
  nlohmann::ordered_json doc;
  doc["tool"] = "ten";
  doc["version"] = std::string(kToolVersion);
  doc["subcommand"] = manifest.subcommand;
  doc["status"] = manifest.status;
  doc["config"] = manifest.config;
  doc["inputs"] = manifest.inputs;

  std::vector<std::string> names = manifest.artifacts;
  std::sort(names.begin(), names.end());
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
  for (const std::string& name : names) {
    const std::filesystem::path file = dir / name;
    if (!std::filesystem::exists(file))
      throw StageError("manifest artifact missing: " + file.string());
    artifacts[name] = to_hex(fnv1a64_file(file));
  }
  doc["artifacts"] = artifacts;
  return doc;
}

void write_manifest(const Manifest& manifest,
                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const nlohmann::ordered_json doc = manifest_to_json(manifest, dir);
  const std::filesystem::path path = dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw StageError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

void ensure_fresh_dir(const std::filesystem::path& dir, bool force) {
  if (std::filesystem::exists(dir)) {
    if (!std::filesystem::is_directory(dir))
      throw StageError("output path exists and is not a directory: " +
                       dir.string());
    if (!std::filesystem::is_empty(dir)) {
      if (!force)
        throw StageError("output directory not empty (use --force): " +
                         dir.string());
      for (const auto& entry : std::filesystem::directory_iterator(dir))
        std::filesystem::remove_all(entry.path());
    }
    return;
  }
  std::filesystem::create_directories(dir);
}

}  // namespace ten
