#include "refnum/numeral.hpp"

#include <algorithm>

#include "refnum/regex.hpp"

namespace refnum {

namespace {

bool is_decimal(std::string_view s) {
  return !s.empty() && s.size() <= 18 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int kanji_digit(char32_t c) {
  switch (c) {
    case U'一': return 1;
    case U'二': return 2;
    case U'三': return 3;
    case U'四': return 4;
    case U'五': return 5;
    case U'六': return 6;
    case U'七': return 7;
    case U'八': return 8;
    case U'九': return 9;
    default: return 0;
  }
}

int kanji_unit(char32_t c) {
  switch (c) {
    case U'十': return 10;
    case U'百': return 100;
    case U'千': return 1000;
    default: return 0;
  }
}

std::optional<long long> kanji_value(std::u32string_view s) {
  if (s.empty()) return std::nullopt;
  long long total = 0;
  int pending = 0;         // digit waiting for a unit
  int last_unit = 10000;   // units must strictly decrease
  for (char32_t c : s) {
    if (int d = kanji_digit(c)) {
      if (pending) return std::nullopt;
      pending = d;
    } else if (int u = kanji_unit(c)) {
      if (u >= last_unit) return std::nullopt;
      total += static_cast<long long>(pending ? pending : 1) * u;
      pending = 0;
      last_unit = u;
    } else {
      return std::nullopt;
    }
  }
  return total + pending;
}

}  // namespace

std::optional<long long> numeral_value(std::string_view lemma) {
  if (is_decimal(lemma)) return std::stoll(std::string(lemma));
  auto cps = decode_utf8(lemma);
  return kanji_value(cps);
}

std::optional<long long> morpheme_numeral(const Morpheme& m) {
  if (m.subpos != "numeral" && !is_decimal(m.lemma)) return std::nullopt;
  return numeral_value(m.lemma);
}

}  // namespace refnum
