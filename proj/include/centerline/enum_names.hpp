#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace centerline {

// Each enum exposed in a file format specializes this with a `table` of
// (value, external name) pairs.
template <typename E>
struct EnumNames;

template <typename E>
std::string_view name_of(E value) {
  for (const auto& [v, name] : EnumNames<E>::table) {
    if (v == value) return name;
  }
  throw std::logic_error("enum value without external name");
}

template <typename E>
std::optional<E> parse_enum(std::string_view text) {
  for (const auto& [v, name] : EnumNames<E>::table) {
    if (name == text) return v;
  }
  return std::nullopt;
}

// Comma-separated list of accepted spellings, for error messages.
template <typename E>
std::string enum_choices() {
  std::string out;
  for (const auto& [v, name] : EnumNames<E>::table) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace centerline
