#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

namespace ten {

// Reads newline-delimited JSON; blank lines are skipped. Throws ten::Error
// naming the line on unreadable files or invalid JSON.
std::vector<nlohmann::ordered_json> read_jsonl(
    const std::filesystem::path& path);

// Writes one compact JSON document per line, creating parent directories.
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::ordered_json>& records);

}  // namespace ten
