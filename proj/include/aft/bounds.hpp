#pragma once

#include <cstddef>
#include <string>

namespace aft {

// Caps on enumeration sizes, overridable through the AFT_BOUNDS environment
// variable ("key=value" pairs separated by commas, keys matching the field
// names, e.g. "oracle_strict=20000,closure_paths=128").
struct SizeBounds {
  std::size_t oracle_strict = 5000;    // max temporal paths in the strict LP
  std::size_t oracle_waiting = 20000;  // max deduped waiting schedules
  std::size_t dag_paths = 4096;        // max source-sink paths when generating
  std::size_t closure_paths = 64;      // max family size during closure

  // Defaults overlaid with AFT_BOUNDS; unknown keys or malformed values throw
  // std::invalid_argument (fail loud rather than ignore a typo).
  static SizeBounds from_env();
};

SizeBounds parse_bounds(const std::string& text);

}  // namespace aft
