#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace otic {

// 64-bit FNV-1a. Used for state fingerprints and journal integrity, where the
// value must be stable across runs and platforms (std::hash is not).
inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace otic
