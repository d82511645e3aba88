#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"

namespace otic {

// Specialize with `static constexpr std::array table{std::pair{E::x, "x"}, ...}`
// to give an enum a canonical spelling in documents and on the command line.
template <typename E>
struct EnumNames;

template <typename E>
concept NamedEnum = requires { EnumNames<E>::table; };

template <NamedEnum E>
constexpr std::string_view name_of(E value) {
  for (const auto& [v, n] : EnumNames<E>::table)
    if (v == value) return n;
  return "?";
}

template <NamedEnum E>
E parse_enum(std::string_view text) {
  for (const auto& [v, n] : EnumNames<E>::table)
    if (n == text) return v;
  std::string choices;
  for (const auto& [v, n] : EnumNames<E>::table) {
    if (!choices.empty()) choices += ", ";
    choices += n;
  }
  throw Error(Errc::invalid_argument,
              "unknown value '" + std::string(text) + "' (expected one of: " +
                  choices + ")");
}

template <NamedEnum E>
void to_json(nlohmann::json& j, E value) {
  j = std::string(name_of(value));
}

template <NamedEnum E>
void from_json(const nlohmann::json& j, E& value) {
  value = parse_enum<E>(j.get<std::string>());
}

}  // namespace otic
