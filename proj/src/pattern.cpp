#include "refnum/pattern.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "lexer.hpp"
#include "refnum/discourse.hpp"
#include "refnum/numeral.hpp"

namespace refnum {

FieldPattern FieldPattern::regex(std::string source) {
  auto compiled = std::make_shared<const Regex>(source);
  return {Kind::regex, std::move(source), std::move(compiled)};
}

bool operator==(const NodeTemplate& a, const NodeTemplate& b) {
  return a.morphemes == b.morphemes && a.children == b.children && a.allow_extra == b.allow_extra;
}
bool operator==(const AllOf& a, const AllOf& b) { return a.operands == b.operands; }
bool operator==(const AnyOf& a, const AnyOf& b) { return a.operands == b.operands; }
bool operator==(const Negation& a, const Negation& b) { return a.operand == b.operand; }
bool operator==(const Modee& a, const Modee& b) { return a.transitive == b.transitive && a.operand == b.operand; }
bool operator==(const Pattern& a, const Pattern& b) { return a.node == b.node; }

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

constexpr std::size_t kFieldCount = 6;

class PatternParser {
 public:
  PatternParser(std::string_view text, std::size_t first_line) : lex_(text, true, first_line) {}

  Pattern run() {
    Pattern p = pattern();
    if (lex_.peek().kind != Tok::end) lex_.fail("trailing input after pattern");
    for (const auto& [name, at] : guards_)
      if (!binders_.count(name)) lex_.fail("numguard binder '" + name + "' is not bound by a $" + name + " field", at);
    return p;
  }

 private:
  bool at_word(std::string_view w) const { return lex_.peek().kind == Tok::word && lex_.peek().text == w; }

  Pattern pattern() {
    if (at_word("-")) {
      lex_.take();
      return Pattern{Glob{}};
    }
    Token open = lex_.expect(Tok::lparen, "'(' or '-'");
    if (lex_.peek().kind == Tok::langle) {
      lex_.take();
      return Pattern{node_template()};
    }
    if (lex_.peek().kind != Tok::word) lex_.fail("expected '<' or an operator" + Lexer::describe(lex_.peek()));
    Token op = lex_.take();
    Pattern p;
    if (op.text == "and" || op.text == "or") {
      std::vector<Pattern> operands;
      while (lex_.peek().kind != Tok::rparen) {
        if (lex_.peek().kind == Tok::end) lex_.fail("unterminated '(" + op.text + "'", open);
        operands.push_back(pattern());
      }
      if (operands.empty()) lex_.fail("'" + op.text + "' needs at least one operand", op);
      p.node = op.text == "and" ? Pattern::Variant{AllOf{std::move(operands)}} : Pattern::Variant{AnyOf{std::move(operands)}};
    } else if (op.text == "not") {
      p.node = Negation{pattern()};
    } else if (op.text == "modee" || op.text == "modee*") {
      p.node = Modee{pattern(), op.text == "modee*"};
    } else if (op.text == "numguard") {
      p.node = guard();
    } else if (op.text == "refprop" || op.text == "number") {
      Dimension d = op.text == "refprop" ? Dimension::refprop : Dimension::number;
      Token cat = lex_.expect(Tok::word, "a category");
      auto idx = category_index(d, cat.text);
      if (!idx) lex_.fail("unknown " + op.text + " category '" + cat.text + "'", cat);
      p.node = HasCategory{d, *idx};
    } else if (op.text == "prior") {
      p.node = PriorMention{};
    } else {
      lex_.fail("unknown operator '" + op.text + "'", op);
    }
    lex_.expect(Tok::rparen, "')'");
    return p;
  }

  NumGuard guard() {
    Token name = lex_.expect(Tok::word, "a binder name");
    Token cmp = lex_.expect(Tok::word, "a comparator");
    Token val = lex_.expect(Tok::word, "an integer");
    NumGuard g;
    g.binder = name.text;
    if (cmp.text == "=")
      g.cmp = Comparator::eq;
    else if (cmp.text == ">=" || cmp.text == "≥")
      g.cmp = Comparator::ge;
    else if (cmp.text == "<=" || cmp.text == "≤")
      g.cmp = Comparator::le;
    else
      lex_.fail("unknown comparator '" + cmp.text + "'", cmp);
    try {
      std::size_t used = 0;
      g.value = std::stoll(val.text, &used);
      if (used != val.text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      lex_.fail("bad integer '" + val.text + "'", val);
    }
    guards_.emplace_back(g.binder, name);
    return g;
  }

  NodeTemplate node_template() {
    NodeTemplate t;
    while (lex_.peek().kind != Tok::rangle) {
      if (at_word("-")) {
        lex_.take();
        t.morphemes.push_back(MorphemeItem{});
      } else if (lex_.peek().kind == Tok::lbracket) {
        t.morphemes.push_back(MorphemeItem{morpheme_template()});
      } else {
        lex_.fail("expected '[', '-' or '>'" + Lexer::describe(lex_.peek()));
      }
    }
    lex_.take();
    while (lex_.peek().kind != Tok::rparen) {
      if (lex_.peek().kind == Tok::end) lex_.fail("unterminated node template");
      Pattern child = pattern();
      if (child.as<Glob>())
        t.allow_extra = true;
      else
        t.children.push_back(std::move(child));
    }
    lex_.take();
    return t;
  }

  MorphemeTemplate morpheme_template() {
    Token open = lex_.take();
    MorphemeTemplate m;
    while (lex_.peek().kind != Tok::rbracket) {
      Token t = lex_.take();
      switch (t.kind) {
        case Tok::quoted: m.fields.push_back(FieldPattern::literal(t.text)); break;
        case Tok::regex:
          try {
            m.fields.push_back(FieldPattern::regex(t.text));
          } catch (const RegexError& e) {
            lex_.fail(std::string("bad regex: ") + e.what(), t);
          }
          break;
        case Tok::word:
          if (t.text == "-")
            m.fields.push_back(FieldPattern::any());
          else if (t.text == kBlank)
            m.fields.push_back(FieldPattern::blank());
          else if (t.text.starts_with('$')) {
            if (t.text.size() == 1) lex_.fail("'$' needs a binder name", t);
            binders_.insert(t.text.substr(1));
            m.fields.push_back(FieldPattern::numeral(t.text.substr(1)));
          } else {
            m.fields.push_back(FieldPattern::literal(t.text));
          }
          break;
        default: lex_.fail("expected a field or ']'" + Lexer::describe(t), t);
      }
    }
    lex_.take();
    if (m.fields.empty()) lex_.fail("empty morpheme template", open);
    if (m.fields.size() > kFieldCount) lex_.fail("morpheme template has more than six fields", open);
    if (m.fields.size() < kFieldCount && m.fields.back().kind != FieldPattern::Kind::any)
      lex_.fail("a morpheme template with fewer than six fields must end in '-'", open);
    return m;
  }

  Lexer lex_;
  std::set<std::string> binders_;
  std::vector<std::pair<std::string, Token>> guards_;
};

bool bare_safe(std::string_view s) {
  if (s.empty() || s == "-" || s == kBlank || s.front() == '$' || s.front() == '/') return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')' || c == '[' || c == ']' ||
           c == '<' || c == '>' || c == '\'' || c == '`';
  });
}

void print_field(std::string& out, const FieldPattern& f, std::size_t position) {
  switch (f.kind) {
    case FieldPattern::Kind::any: out += '-'; return;
    case FieldPattern::Kind::blank: out += kBlank; return;
    case FieldPattern::Kind::numeral: out += '$' + f.text; return;
    case FieldPattern::Kind::regex:
      out += '/';
      for (char c : f.text) {
        if (c == '/') out += '\\';
        out += c;
      }
      out += '/';
      return;
    case FieldPattern::Kind::literal:
      // lemma and surface are always quoted, like in trees
      if (position < 4 && bare_safe(f.text))
        out += f.text;
      else
        out += detail::quote(f.text, '\'');
      return;
  }
}

void print(std::string& out, const Pattern& p);

void print_operands(std::string& out, const char* op, const std::vector<Pattern>& operands) {
  out += '(';
  out += op;
  for (const auto& o : operands) {
    out += ' ';
    print(out, o);
  }
  out += ')';
}

struct Printer {
  std::string& out;

  void operator()(const Glob&) const { out += '-'; }
  void operator()(const NodeTemplate& t) const {
    out += "( <";
    for (std::size_t i = 0; i < t.morphemes.size(); ++i) {
      if (i > 0) out += ' ';
      const auto& item = t.morphemes[i];
      if (item.is_glob()) {
        out += '-';
        continue;
      }
      out += '[';
      for (std::size_t f = 0; f < item.morpheme->fields.size(); ++f) {
        if (f > 0) out += ' ';
        print_field(out, item.morpheme->fields[f], f);
      }
      out += ']';
    }
    if (!t.morphemes.empty() && t.morphemes.back().is_glob()) out += ' ';
    out += '>';
    for (const auto& c : t.children) {
      out += ' ';
      print(out, c);
    }
    if (t.allow_extra) out += " -";
    out += " )";
  }
  void operator()(const AllOf& a) const { print_operands(out, "and", a.operands); }
  void operator()(const AnyOf& a) const { print_operands(out, "or", a.operands); }
  void operator()(const Negation& n) const {
    out += "(not ";
    print(out, *n.operand);
    out += ')';
  }
  void operator()(const Modee& m) const {
    out += m.transitive ? "(modee* " : "(modee ";
    print(out, *m.operand);
    out += ')';
  }
  void operator()(const NumGuard& g) const {
    out += "(numguard " + g.binder + (g.cmp == Comparator::eq ? " = " : g.cmp == Comparator::ge ? " >= " : " <= ") +
           std::to_string(g.value) + ')';
  }
  void operator()(const HasCategory& h) const {
    out += '(';
    out += to_string(h.dimension);
    out += ' ';
    out += category_name(h.dimension, h.category);
    out += ')';
  }
  void operator()(const PriorMention&) const { out += "(prior)"; }
};

void print(std::string& out, const Pattern& p) { std::visit(Printer{out}, p.node); }

// ---------------------------------------------------------------------------
// Matching: backtracking in continuation-passing style. Each step calls the
// continuation with the bindings it produced; a false return asks for the
// next alternative.

using Cont = std::function<bool(const Bindings&)>;

const std::string& field_value(const Morpheme& m, std::size_t i) {
  static constexpr std::array<std::string Morpheme::*, 6> kFields{&Morpheme::pos,       &Morpheme::subpos,
                                                                   &Morpheme::conj_type, &Morpheme::conj_form,
                                                                   &Morpheme::lemma,     &Morpheme::surface};
  return m.*kFields[i];
}

bool compare(long long lhs, Comparator cmp, long long rhs) {
  switch (cmp) {
    case Comparator::eq: return lhs == rhs;
    case Comparator::ge: return lhs >= rhs;
    case Comparator::le: return lhs <= rhs;
  }
  return false;
}

class Matcher {
 public:
  explicit Matcher(const MatchContext& ctx) : ctx_(ctx) {}

  bool match(const Pattern& p, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    return std::visit([&](const auto& v) { return step(v, n, b, k); }, p.node);
  }

 private:
  bool step(const Glob&, const PhraseNode&, const Bindings& b, const Cont& k) const { return k(b); }

  bool step(const AllOf& a, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    return chain(a.operands, 0, n, b, k);
  }

  bool chain(const std::vector<Pattern>& ops, std::size_t i, const PhraseNode& n, const Bindings& b,
             const Cont& k) const {
    if (i == ops.size()) return k(b);
    return match(ops[i], n, b, [&](const Bindings& next) { return chain(ops, i + 1, n, next, k); });
  }

  bool step(const AnyOf& a, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    return std::any_of(a.operands.begin(), a.operands.end(), [&](const Pattern& o) { return match(o, n, b, k); });
  }

  bool step(const Negation& neg, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    if (match(*neg.operand, n, b, [](const Bindings&) { return true; })) return false;
    return k(b);
  }

  bool step(const Modee& m, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    for (const PhraseNode* up = ctx_.index.parent(n); up; up = ctx_.index.parent(*up)) {
      if (match(*m.operand, *up, b, k)) return true;
      if (!m.transitive) break;
    }
    return false;
  }

  bool step(const NumGuard& g, const PhraseNode&, const Bindings& b, const Cont& k) const {
    auto it = b.find(g.binder);
    if (it == b.end() || !compare(it->second, g.cmp, g.value)) return false;
    return k(b);
  }

  bool step(const HasCategory& h, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    std::optional<CategoryIndex> actual;
    if (h.dimension == Dimension::refprop && n.refprop) actual = static_cast<CategoryIndex>(*n.refprop);
    if (h.dimension == Dimension::number && n.number) actual = static_cast<CategoryIndex>(*n.number);
    return actual == h.category && k(b);
  }

  bool step(const PriorMention&, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    return n.is_noun() && ctx_.discourse && ctx_.discourse->mentioned_before(n) && k(b);
  }

  bool step(const NodeTemplate& t, const PhraseNode& n, const Bindings& b, const Cont& k) const {
    if (!t.allow_extra && t.children.size() != n.children.size()) return false;
    if (t.children.size() > n.children.size()) return false;
    return align(t.morphemes, 0, n.morphemes, 0, b, [&](const Bindings& after_morphemes) {
      std::vector<bool> used(n.children.size(), false);
      return assign_children(t.children, 0, n.children, used, after_morphemes, k);
    });
  }

  bool align(const std::vector<MorphemeItem>& items, std::size_t i, const std::vector<Morpheme>& ms, std::size_t j,
             const Bindings& b, const Cont& k) const {
    if (i == items.size()) return j == ms.size() && k(b);
    const MorphemeItem& item = items[i];
    if (item.is_glob()) {
      // non-greedy: shortest run first
      for (std::size_t end = j; end <= ms.size(); ++end)
        if (align(items, i + 1, ms, end, b, k)) return true;
      return false;
    }
    if (j == ms.size()) return false;
    Bindings next = b;
    if (!match_morpheme(*item.morpheme, ms[j], next)) return false;
    return align(items, i + 1, ms, j + 1, next, k);
  }

  static bool match_morpheme(const MorphemeTemplate& t, const Morpheme& m, Bindings& b) {
    const bool rest_glob = t.fields.size() < kFieldCount;
    const std::size_t positional = rest_glob ? t.fields.size() - 1 : kFieldCount;
    for (std::size_t i = 0; i < positional; ++i) {
      const FieldPattern& f = t.fields[i];
      const std::string& value = field_value(m, i);
      switch (f.kind) {
        case FieldPattern::Kind::any: break;
        case FieldPattern::Kind::blank:
          if (value != kBlank) return false;
          break;
        case FieldPattern::Kind::literal:
          if (value != f.text) return false;
          break;
        case FieldPattern::Kind::regex:
          if (!f.compiled->full_match(value)) return false;
          break;
        case FieldPattern::Kind::numeral: {
          auto v = morpheme_numeral(m);
          if (!v) return false;
          auto [it, inserted] = b.emplace(f.text, *v);
          if (!inserted && it->second != *v) return false;
          break;
        }
      }
    }
    return true;
  }

  bool assign_children(const std::vector<Pattern>& pats, std::size_t i, const std::vector<PhraseNode>& kids,
                       std::vector<bool>& used, const Bindings& b, const Cont& k) const {
    if (i == pats.size()) return k(b);
    for (std::size_t c = 0; c < kids.size(); ++c) {
      if (used[c]) continue;
      used[c] = true;
      bool ok = match(pats[i], kids[c], b,
                      [&](const Bindings& next) { return assign_children(pats, i + 1, kids, used, next, k); });
      used[c] = false;
      if (ok) return true;
    }
    return false;
  }

  const MatchContext& ctx_;
};

}  // namespace

Pattern parse_pattern(std::string_view text, std::size_t first_line) { return PatternParser(text, first_line).run(); }

std::string to_text(const Pattern& p) {
  std::string out;
  print(out, p);
  return out;
}

namespace {

struct DepthVisitor {
  std::size_t operator()(const NodeTemplate& t) const { return 1 + max_of(t.children); }
  std::size_t operator()(const AllOf& a) const { return 1 + max_of(a.operands); }
  std::size_t operator()(const AnyOf& a) const { return 1 + max_of(a.operands); }
  std::size_t operator()(const Negation& n) const { return 1 + depth(*n.operand); }
  std::size_t operator()(const Modee& m) const { return 1 + depth(*m.operand); }
  std::size_t operator()(const auto&) const { return 1; }

  static std::size_t max_of(const std::vector<Pattern>& ps) {
    std::size_t d = 0;
    for (const auto& q : ps) d = std::max(d, depth(q));
    return d;
  }
};

}  // namespace

std::size_t depth(const Pattern& p) { return std::visit(DepthVisitor{}, p.node); }

bool contains(const Pattern& p, bool (*pred)(const Pattern&)) {
  if (pred(p)) return true;
  auto any = [&](const std::vector<Pattern>& ps) {
    return std::any_of(ps.begin(), ps.end(), [&](const Pattern& q) { return contains(q, pred); });
  };
  if (auto* t = p.as<NodeTemplate>()) return any(t->children);
  if (auto* a = p.as<AllOf>()) return any(a->operands);
  if (auto* o = p.as<AnyOf>()) return any(o->operands);
  if (auto* n = p.as<Negation>()) return contains(*n->operand, pred);
  if (auto* m = p.as<Modee>()) return contains(*m->operand, pred);
  return false;
}

MatchResult matches(const Pattern& p, const PhraseNode& node, const MatchContext& ctx) {
  MatchResult result;
  result.matched = Matcher(ctx).match(p, node, ctx.bindings, [&](const Bindings& b) {
    result.bindings = b;
    return true;
  });
  return result;
}

}  // namespace refnum
