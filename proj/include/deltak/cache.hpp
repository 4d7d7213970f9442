#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "deltak/series.hpp"

namespace deltak {

// Coefficient cache: line-oriented JSON, human-inspectable and
// arbitrary-precision-safe.  First line is a header object
//   {"format_version":1,"horizon":N,"k":K}
// followed by one JSON string per line holding a coefficient in decimal.
// Store-then-load is an exact round trip; any version mismatch is a load
// error, never a silent reinterpretation.

inline constexpr int kCacheFormatVersion = 1;

struct CacheError : std::runtime_error {
  explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

CoeffTable load_cache(const std::string& path);

// Writes a temp file next to `path` and renames it into place.
void store_cache(const std::string& path, const CoeffTable& table);

}  // namespace deltak
