#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace ten {

// 64-bit FNV-1a. Used for mock fixture keys and artifact digests; stable
// across platforms and runs (unlike std::hash), which is what makes mock
// reruns byte-identical and manifests comparable.
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string to_hex(std::uint64_t value);

// Digest of a file's bytes; throws ten::Error if the file cannot be read.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

}  // namespace ten
