#include "ten/jsonl.hpp"

#include <fstream>

#include "ten/errors.hpp"

namespace ten {

std::vector<nlohmann::ordered_json> read_jsonl(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open file: " + path.string());
  }
  std::vector<nlohmann::ordered_json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::ordered_json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + " line " + std::to_string(lineno) +
                  ": invalid JSON: " + e.what());
    }
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::ordered_json>& records) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write file: " + path.string());
  }
  for (const auto& j : records) {
    out << j.dump() << "\n";
  }
}

}  // namespace ten
