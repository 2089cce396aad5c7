#pragma once

#include <optional>
#include <string_view>

#include "refnum/tree.hpp"

namespace refnum {

/// Value of a decimal literal ("12") or a kanji numeral in 1..9999
/// ("二", "十五", "三百", "九千九百九十九").
std::optional<long long> numeral_value(std::string_view lemma);

/// A morpheme counts as a numeral when its subpos is "numeral" or its
/// lemma is a decimal literal. The value is read from the lemma; numerals
/// whose lemma cannot be converted have no value.
std::optional<long long> morpheme_numeral(const Morpheme& m);

}  // namespace refnum
