#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace refnum {

/// The two decision dimensions of a noun phrase.
enum class Dimension { refprop, number };

enum class RefProp { indefinite, definite, generic };
enum class NumberCat { singular, plural, uncountable };

/// Position of a category inside its dimension. The order doubles as the
/// tie-break precedence and index 0 is the dimension default.
using CategoryIndex = std::size_t;
inline constexpr std::size_t kCategoryCount = 3;

/// Coarse classes: non_generic = {indefinite, definite},
/// countable = {singular, plural}.
enum class CoarseClass { non_generic, countable };

namespace detail {
inline constexpr std::array<std::string_view, 3> kRefPropNames{"indefinite", "definite", "generic"};
inline constexpr std::array<std::string_view, 3> kNumberNames{"singular", "plural", "uncountable"};
}  // namespace detail

constexpr std::string_view to_string(Dimension d) {
  return d == Dimension::refprop ? "refprop" : "number";
}
constexpr std::string_view to_string(RefProp r) {
  return detail::kRefPropNames[static_cast<std::size_t>(r)];
}
constexpr std::string_view to_string(NumberCat n) {
  return detail::kNumberNames[static_cast<std::size_t>(n)];
}
constexpr std::string_view to_string(CoarseClass c) {
  return c == CoarseClass::non_generic ? "non_generic" : "countable";
}

constexpr std::string_view category_name(Dimension d, CategoryIndex i) {
  return d == Dimension::refprop ? detail::kRefPropNames.at(i) : detail::kNumberNames.at(i);
}

constexpr std::optional<CategoryIndex> category_index(Dimension d, std::string_view name) {
  const auto& names = d == Dimension::refprop ? detail::kRefPropNames : detail::kNumberNames;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

constexpr std::optional<Dimension> parse_dimension(std::string_view s) {
  if (s == "refprop") return Dimension::refprop;
  if (s == "number") return Dimension::number;
  return std::nullopt;
}

constexpr std::optional<RefProp> parse_refprop(std::string_view s) {
  if (auto i = category_index(Dimension::refprop, s)) return static_cast<RefProp>(*i);
  return std::nullopt;
}

constexpr std::optional<NumberCat> parse_number(std::string_view s) {
  if (auto i = category_index(Dimension::number, s)) return static_cast<NumberCat>(*i);
  return std::nullopt;
}

constexpr std::optional<CoarseClass> parse_coarse(std::string_view s) {
  if (s == "non_generic") return CoarseClass::non_generic;
  if (s == "countable") return CoarseClass::countable;
  return std::nullopt;
}

/// generic and uncountable have no coarse class.
constexpr std::optional<CoarseClass> coarse_of(Dimension d, CategoryIndex i) {
  if (i > 1) return std::nullopt;
  return d == Dimension::refprop ? CoarseClass::non_generic : CoarseClass::countable;
}

constexpr Dimension dimension_of(CoarseClass c) {
  return c == CoarseClass::non_generic ? Dimension::refprop : Dimension::number;
}

}  // namespace refnum
