#include "refnum/rules.hpp"

#include <cctype>
#include <set>

namespace refnum {

const Rule* RulePack::find(std::string_view id) const {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

std::string_view to_string(ScoreSource s) { return s == ScoreSource::printed ? "printed" : "assigned"; }

std::string_view to_string(LintFinding::Kind k) {
  switch (k) {
    case LintFinding::Kind::never_fires: return "never-fires";
    case LintFinding::Kind::dead: return "dead";
    case LintFinding::Kind::shadowed: return "shadowed";
  }
  return "?";
}

namespace {

bool reads_number(const Pattern& p) {
  auto* h = p.as<HasCategory>();
  return h && h->dimension == Dimension::number;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::string_view text;
  std::size_t number;
  std::size_t indent() const { return text.find_first_not_of(" \t") + 1; }
  std::string_view body() const { return trim(text); }
};

/// Splits a header line into words and double-quoted strings.
class HeaderScanner {
 public:
  HeaderScanner(const Line& line, std::string rule_id) : line_(line), rule_id_(std::move(rule_id)) {}

  bool done() {
    skip();
    return pos_ >= line_.text.size();
  }
  std::size_t column() const { return pos_ + 1; }
  bool at_quote() {
    skip();
    return pos_ < line_.text.size() && line_.text[pos_] == '"';
  }

  std::string word(const char* what) {
    skip();
    std::size_t start = pos_;
    while (pos_ < line_.text.size() && !std::isspace(static_cast<unsigned char>(line_.text[pos_])) &&
           line_.text[pos_] != '"')
      ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(line_.text.substr(start, pos_ - start));
  }

  std::string quoted() {
    skip();
    std::size_t start = pos_++;
    std::string out;
    for (;;) {
      if (pos_ >= line_.text.size()) {
        pos_ = start;
        fail("unterminated string");
      }
      char c = line_.text[pos_++];
      if (c == '\\' && pos_ < line_.text.size()) {
        out.push_back(line_.text[pos_++]);
        continue;
      }
      if (c == '"') return out;
      out.push_back(c);
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw RuleError(what, rule_id_, line_.number, column()); }

 private:
  void skip() {
    while (pos_ < line_.text.size() && std::isspace(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
  }

  const Line& line_;
  std::string rule_id_;
  std::size_t pos_ = 0;
};

std::array<CategoryScore, kCategoryCount> parse_scores(const Line& line, std::size_t offset, Dimension target,
                                                       const std::string& rule_id) {
  std::string_view s = line.text;
  std::size_t pos = offset;
  auto fail = [&](const std::string& what) -> void { throw RuleError(what, rule_id, line.number, pos + 1); };
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto integer = [&]() -> int {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || (pos == start + 1 && s[start] == '-')) {
      pos = start;
      fail("expected an integer");
    }
    return std::stoi(std::string(s.substr(start, pos - start)));
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };

  std::array<CategoryScore, kCategoryCount> scores{};
  std::array<bool, kCategoryCount> seen{};
  for (;;) {
    skip();
    if (pos >= s.size()) break;
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    std::string name(s.substr(start, pos - start));
    auto idx = category_index(target, name);
    if (!idx) {
      pos = start;
      fail("'" + name + "' is not a " + std::string(to_string(target)) + " category");
    }
    if (seen[*idx]) {
      pos = start;
      fail("category '" + name + "' given twice");
    }
    seen[*idx] = true;
    expect('(');
    scores[*idx].possibility = integer();
    expect(',');
    scores[*idx].value = integer();
    expect(')');
  }
  for (std::size_t i = 0; i < kCategoryCount; ++i)
    if (!seen[i]) fail("missing score for '" + std::string(category_name(target, i)) + "'");
  return scores;
}

std::optional<std::string> score_violation(const Rule& rule) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const auto& s = rule.scores[i];
    std::string cat(category_name(rule.target, i));
    if (s.possibility != 0 && s.possibility != 1) return "possibility for " + cat + " must be 0 or 1";
    if (s.value < 0 || s.value > 10) return "value for " + cat + " out of range 0..10: " + std::to_string(s.value);
    if (s.possibility == 0 && s.value != 0) return "value for " + cat + " must be 0 when possibility is 0";
  }
  return std::nullopt;
}

std::optional<std::string> rule_violation(const Rule& rule, Dimension pack_target) {
  if (rule.id.empty()) return "empty rule id";
  if (rule.target != pack_target) return "rule target does not match the pack";
  if (auto v = score_violation(rule)) return v;
  if (rule.condition.as<Negation>()) return "condition must not be rooted in (not ...)";
  if (rule.target == Dimension::refprop && contains(rule.condition, reads_number))
    return "refprop rules must not read number decisions";
  return std::nullopt;
}

class RuleParser {
 public:
  explicit RuleParser(std::string_view text) {
    std::size_t pos = 0, number = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      auto len = nl == std::string_view::npos ? std::string_view::npos : nl - pos;
      lines_.push_back(Line{text.substr(pos, len), ++number});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  RulePack run() {
    const Line* header = next_content();
    if (!header) throw RuleError("empty rule file: expected 'pack' header", "", 1, 1);
    HeaderScanner scan(*header, "");
    if (scan.word("'pack'") != "pack") scan.fail("expected 'pack' header");
    std::string target = scan.word("a target");
    auto dim = parse_dimension(target);
    if (!dim) scan.fail("unknown pack target '" + target + "'");
    pack_.target = *dim;
    pack_.version = scan.word("a version");
    if (scan.at_quote()) pack_.name = scan.quoted();
    std::string brace = scan.word("'{'");
    if (brace == "{}") return finish();
    if (brace != "{") scan.fail("expected '{'");
    if (!scan.done()) scan.fail("unexpected text after '{'");

    for (;;) {
      const Line* line = next_content();
      if (!line) throw RuleError("missing closing '}'", "", lines_.back().number, 1);
      if (line->body() == "}") return finish();
      parse_rule(*line);
    }
  }

 private:
  RulePack finish() {
    if (const Line* extra = next_content())
      throw RuleError("unexpected text after pack", "", extra->number, extra->indent());
    return std::move(pack_);
  }

  const Line* next_content() {
    while (cursor_ < lines_.size()) {
      const Line& l = lines_[cursor_++];
      auto b = l.body();
      if (b.empty() || b.front() == '#') continue;
      return &l;
    }
    return nullptr;
  }

  void parse_rule(const Line& header) {
    HeaderScanner scan(header, "");
    if (scan.word("'rule'") != "rule") scan.fail("expected 'rule' or '}'");
    Rule rule;
    rule.id = scan.word("a rule id");
    if (ids_.count(rule.id)) throw RuleError("duplicate rule id", rule.id, header.number, header.indent());
    rule.target = pack_.target;
    if (!scan.done() && !scan.at_quote()) {
      std::string t = scan.word("a target");
      auto dim = parse_dimension(t);
      if (!dim) throw RuleError("unknown target '" + t + "'", rule.id, header.number, scan.column());
      if (*dim != pack_.target)
        throw RuleError("rule target '" + t + "' does not match the pack", rule.id, header.number, scan.column());
    }
    if (scan.at_quote()) rule.note = scan.quoted();
    if (!scan.done()) throw RuleError("unexpected text in rule header", rule.id, header.number, scan.column());

    bool have_source = false;
    const Line* line = nullptr;
    for (;;) {
      line = next_content();
      if (!line) throw RuleError("rule ends before 'when:'", rule.id, lines_.back().number, 1);
      auto b = line->body();
      if (b.starts_with("source:")) {
        if (have_source) throw RuleError("duplicate 'source:'", rule.id, line->number, line->indent());
        auto v = trim(b.substr(7));
        if (v == "printed")
          rule.source = ScoreSource::printed;
        else if (v == "assigned")
          rule.source = ScoreSource::assigned;
        else
          throw RuleError("source must be 'printed' or 'assigned'", rule.id, line->number, line->indent());
        have_source = true;
        continue;
      }
      if (b.starts_with("when:")) break;
      throw RuleError("expected 'source:' or 'when:'", rule.id, line->number, line->indent());
    }

    // Pattern text keeps original columns: the "when:" prefix is blanked.
    const Line& when = *line;
    std::string text(when.text);
    auto at = text.find("when:");
    std::fill(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at + 5), ' ');
    text += '\n';
    const Line* scores = nullptr;
    for (;;) {
      if (cursor_ >= lines_.size()) throw RuleError("rule has no 'scores:' line", rule.id, when.number, 1);
      const Line& l = lines_[cursor_++];
      auto b = l.body();
      if (b.starts_with("scores:")) {
        scores = &l;
        break;
      }
      if (!b.empty() && b.front() == '#') {
        text += '\n';
        continue;
      }
      if (b == "}" || b.starts_with("rule ")) throw RuleError("rule has no 'scores:' line", rule.id, l.number, 1);
      text.append(l.text);
      text += '\n';
    }
    try {
      rule.condition = parse_pattern(text, when.number);
    } catch (const ParseError& e) {
      throw RuleError(std::string("condition: ") + e.what(), rule.id, e.line(), e.column());
    }
    rule.scores = parse_scores(*scores, scores->text.find("scores:") + 7, pack_.target, rule.id);
    if (auto violation = score_violation(rule))
      throw RuleError(*violation, rule.id, scores->number, scores->indent());
    if (auto violation = rule_violation(rule, pack_.target))
      throw RuleError(*violation, rule.id, header.number, header.indent());
    ids_.insert(rule.id);
    pack_.rules.push_back(std::move(rule));
  }

  std::vector<Line> lines_;
  std::size_t cursor_ = 0;
  RulePack pack_;
  std::set<std::string> ids_;
};

std::string quote_note(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

void validate_rule(const Rule& rule, Dimension pack_target) {
  if (auto violation = rule_violation(rule, pack_target)) throw RuleError(*violation, rule.id, 0, 0);
}

RulePack parse_rules(std::string_view text) { return RuleParser(text).run(); }

std::string serialize_rules(const RulePack& pack) {
  std::string out = "pack ";
  out += to_string(pack.target);
  out += ' ' + pack.version;
  if (!pack.name.empty()) out += ' ' + quote_note(pack.name);
  out += " {\n";
  for (const auto& r : pack.rules) {
    out += "\nrule " + r.id + ' ';
    out += to_string(r.target);
    if (!r.note.empty()) out += ' ' + quote_note(r.note);
    out += "\n  source: ";
    out += to_string(r.source);
    out += "\n  when: " + to_text(r.condition) + "\n  scores:";
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
      out += ' ';
      out += category_name(r.target, i);
      out += '(' + std::to_string(r.scores[i].possibility) + ", " + std::to_string(r.scores[i].value) + ')';
    }
    out += '\n';
  }
  out += "}\n";
  return out;
}

}  // namespace refnum
