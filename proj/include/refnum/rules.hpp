#pragma once

// Rule files.
//
//   # comment
//   pack <refprop|number> <version> ["name"] {
//   rule <id> [<target>] "<note>"
//     source: printed | assigned
//     when:
//       <pattern, any number of lines>
//     scores: <category>(<possibility>, <value>) x3
//   ...
//   }
//
// "source: printed" marks scores transcribed from the literature,
// "source: assigned" marks values chosen for rules stated without numbers.
// An empty pack may be written on one line: pack refprop v1 {}

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refnum/categories.hpp"
#include "refnum/pattern.hpp"
#include "refnum/tree.hpp"

namespace refnum {

struct CategoryScore {
  int possibility = 1;  // 0 or 1
  int value = 0;        // 0..10, and 0 whenever possibility is 0

  bool operator==(const CategoryScore&) const = default;
};

enum class ScoreSource { printed, assigned };

struct Rule {
  std::string id;
  Dimension target = Dimension::refprop;
  Pattern condition;
  std::array<CategoryScore, kCategoryCount> scores{};
  std::string note;
  ScoreSource source = ScoreSource::assigned;

  bool operator==(const Rule&) const = default;
};

struct RulePack {
  Dimension target = Dimension::refprop;
  std::string version;
  std::string name;
  std::vector<Rule> rules;

  const Rule* find(std::string_view id) const;
  bool operator==(const RulePack&) const = default;
};

class RuleError : public std::runtime_error {
 public:
  RuleError(const std::string& what, std::string rule_id, std::size_t line, std::size_t column)
      : std::runtime_error((rule_id.empty() ? std::string() : "rule " + rule_id + ": ") + what + " at " +
                           std::to_string(line) + ":" + std::to_string(column)),
        rule_id_(std::move(rule_id)),
        line_(line),
        column_(column) {}

  const std::string& rule_id() const { return rule_id_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string rule_id_;
  std::size_t line_;
  std::size_t column_;
};

/// Throws RuleError for syntax errors, duplicate ids, out-of-range scores,
/// a wrong category set or target, conditions rooted in (not ...), and
/// refprop rules that read (number ...).
RulePack parse_rules(std::string_view text);
std::string serialize_rules(const RulePack& pack);

/// Checks the rule invariants; throws RuleError naming the rule.
void validate_rule(const Rule& rule, Dimension pack_target);

/// Findings from running a pack over fixture documents.
struct LintFinding {
  enum class Kind { never_fires, dead, shadowed };
  Kind kind;
  std::string rule_id;
  std::string detail;
};

struct LintReport {
  std::vector<LintFinding> findings;
  std::vector<std::pair<std::string, std::size_t>> fire_counts;  // in pack order

  bool clean() const { return findings.empty(); }
  std::string to_text() const;
};

/// For a number pack, `companion` supplies the refprop decisions the number
/// rules may read; without it refprop decisions come from the defaults.
LintReport lint_rules(const RulePack& pack, std::span<const Document> fixtures, const RulePack* companion = nullptr);

std::string_view to_string(ScoreSource s);
std::string_view to_string(LintFinding::Kind k);

}  // namespace refnum
