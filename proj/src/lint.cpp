#include <map>
#include <sstream>

#include "refnum/engine.hpp"
#include "refnum/rules.hpp"

namespace refnum {

namespace {

// A rule whose values are all zero can still matter by vetoing some, but not
// all, categories. Only the remaining cases are reported.
bool has_no_effect(const Rule& rule) {
  std::size_t vetoes = 0;
  for (const auto& s : rule.scores) {
    if (s.value != 0) return false;
    if (s.possibility == 0) ++vetoes;
  }
  return vetoes == 0 || vetoes == kCategoryCount;
}

}  // namespace

LintReport lint_rules(const RulePack& pack, std::span<const Document> fixtures, const RulePack* companion) {
  LintReport report;
  RulePack empty;
  std::map<std::string, std::size_t> counts;
  for (const auto& r : pack.rules) counts[r.id] = 0;

  for (const auto& fixture : fixtures) {
    Document doc = fixture;
    Trace trace;
    if (pack.target == Dimension::refprop) {
      empty.target = Dimension::number;
      trace = annotate_document(doc, pack, companion ? *companion : empty);
    } else {
      empty.target = Dimension::refprop;
      trace = annotate_document(doc, companion ? *companion : empty, pack);
    }
    for (const auto& n : trace.nouns) {
      const Decision& d = pack.target == Dimension::refprop ? n.refprop : n.number;
      for (const auto& f : d.board.fired) ++counts[f.rule_id];
    }
  }

  for (std::size_t i = 0; i < pack.rules.size(); ++i) {
    const Rule& rule = pack.rules[i];
    std::size_t fired = counts[rule.id];
    report.fire_counts.emplace_back(rule.id, fired);
    if (fired == 0)
      report.findings.push_back({LintFinding::Kind::never_fires, rule.id, "no fixture noun matches"});
    if (has_no_effect(rule))
      report.findings.push_back({LintFinding::Kind::dead, rule.id, "scores cannot change any decision"});
    for (std::size_t j = 0; j < i; ++j) {
      if (pack.rules[j].condition == rule.condition) {
        report.findings.push_back(
            {LintFinding::Kind::shadowed, rule.id, "same condition as " + pack.rules[j].id});
        break;
      }
    }
  }
  return report;
}

std::string LintReport::to_text() const {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& [id, n] : fire_counts) width = std::max(width, id.size());
  for (const auto& [id, n] : fire_counts) out << id << std::string(width - id.size() + 2, ' ') << n << '\n';
  for (const auto& f : findings) out << to_string(f.kind) << ": " << f.rule_id << ": " << f.detail << '\n';
  if (findings.empty()) out << "ok\n";
  return out.str();
}

}  // namespace refnum
