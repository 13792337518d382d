#include "heis/json_io.hpp"

#include <cstdlib>

namespace heis::io {

std::optional<ScalarMode> mode_from_env() {
  const char* raw = std::getenv("HEIS_MODE");
  if (raw == nullptr) return std::nullopt;
  const std::string value(raw);
  if (value == "exact") return ScalarMode::exact;
  if (value == "float") return ScalarMode::floating;
  throw std::invalid_argument("HEIS_MODE must be \"exact\" or \"float\"");
}

namespace {

bool contains_float(const json& j) {
  if (j.is_number_float()) return true;
  if (j.is_array() || j.is_object()) {
    for (const auto& item : j)
      if (contains_float(item)) return true;
  }
  return false;
}

}  // namespace

ScalarMode infer_mode(const json& j) {
  return contains_float(j) ? ScalarMode::floating : ScalarMode::exact;
}

}  // namespace heis::io
