#include "aft/bounds.hpp"

#include <cstdlib>
#include <stdexcept>

namespace aft {

namespace {

std::size_t parse_size(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty bound value");
  std::size_t value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument("malformed bound value '" + text + "'");
    }
    value = value * 10 + static_cast<std::size_t>(ch - '0');
  }
  return value;
}

}  // namespace

SizeBounds parse_bounds(const std::string& text) {
  SizeBounds bounds;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("AFT_BOUNDS entry '" + item +
                                  "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::size_t value = parse_size(item.substr(eq + 1));
    if (key == "oracle_strict") {
      bounds.oracle_strict = value;
    } else if (key == "oracle_waiting") {
      bounds.oracle_waiting = value;
    } else if (key == "dag_paths") {
      bounds.dag_paths = value;
    } else if (key == "closure_paths") {
      bounds.closure_paths = value;
    } else {
      throw std::invalid_argument("unknown AFT_BOUNDS key '" + key + "'");
    }
  }
  return bounds;
}

SizeBounds SizeBounds::from_env() {
  const char* env = std::getenv("AFT_BOUNDS");
  if (!env) return SizeBounds{};
  return parse_bounds(env);
}

}  // namespace aft
