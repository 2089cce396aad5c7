#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "refnum/categories.hpp"
#include "refnum/discourse.hpp"
#include "refnum/pattern.hpp"
#include "refnum/rules.hpp"
#include "refnum/tree.hpp"

namespace refnum {

struct FiredRule {
  std::string rule_id;
  std::array<CategoryScore, kCategoryCount> scores{};

  bool operator==(const FiredRule&) const = default;
};

/// Accumulated evidence for one noun in one dimension. Values add up;
/// possibility is the conjunction over the fired rules.
struct ScoreBoard {
  Dimension dimension = Dimension::refprop;
  std::array<int, kCategoryCount> totals{};
  std::array<bool, kCategoryCount> possible{true, true, true};
  std::vector<FiredRule> fired;

  void add(const Rule& rule);
  bool operator==(const ScoreBoard&) const = default;
};

struct Decision {
  Dimension dimension = Dimension::refprop;
  CategoryIndex chosen = 0;
  ScoreBoard board;
  bool default_used = false;

  std::string_view category() const { return category_name(dimension, chosen); }
  bool operator==(const Decision&) const = default;
};

ScoreBoard apply_rules(const RulePack& pack, const PhraseNode& noun, const MatchContext& ctx);

/// Highest total among possible categories; ties go to the lower index.
/// Falls back to the dimension default (index 0) when nothing fired, every
/// category is vetoed, or the best possible total is 0.
Decision decide(const ScoreBoard& board, Dimension dimension);

struct NounTrace {
  std::string noun_id;
  std::string lemma;
  Decision refprop;
  Decision number;

  bool operator==(const NounTrace&) const = default;
};

struct Trace {
  std::vector<NounTrace> nouns;

  const NounTrace* find(std::string_view noun_id) const;
  bool operator==(const Trace&) const = default;
};

/// Annotates every noun in place, sentence by sentence and left to right:
/// refprop first, then number. Existing annotations are cleared first.
Trace annotate_document(Document& doc, const RulePack& refprop_pack, const RulePack& number_pack);

class UnknownNounError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Report in the layout of a worked example: one line per fired rule with
/// its (possibility, value) triple, then the sums and the decision.
std::string explain(const Trace& trace, std::string_view noun_id);
std::string explain(const NounTrace& noun);

/// Line-oriented text trace. With rules=false only decisions are listed.
std::string trace_to_text(const Trace& trace, bool rules = true);

/// JSON Lines: one "fire" record per fired rule (noun, lemma, dimension,
/// rule, scores, running totals) and one "decision" record per noun and
/// dimension.
std::string trace_to_jsonl(const Trace& trace);
Trace trace_from_jsonl(std::string_view text);

}  // namespace refnum
