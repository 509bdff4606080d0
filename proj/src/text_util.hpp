#pragma once

#include <charconv>
#include <optional>
#include <string_view>

namespace camis::detail {

// Locale-independent full-token parse.
inline std::optional<double> to_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) return std::nullopt;
  return value;
}

}  // namespace camis::detail
