#pragma once

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "vizlink/error.hpp"

namespace vizlink::detail {

/// Non-negative integer from the environment; unset or empty yields nullopt.
inline std::optional<std::size_t> envIndex(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::string_view text(raw);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(Errc::InvalidConfig, std::string(name) + " must be a non-negative integer, got '" +
                                  std::string(text) + "'");
  }
  return value;
}

inline bool envFlag(const char* name) {
  const char* raw = std::getenv(name);
  return raw != nullptr && std::string_view(raw) == "1";
}

}  // namespace vizlink::detail
