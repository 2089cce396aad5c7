#include "refnum/regex.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace refnum {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    auto b = static_cast<unsigned char>(s[i]);
    std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      out.push_back(b);
      ++i;
      continue;
    }
    char32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      auto c = static_cast<unsigned char>(s[i + k]);
      if ((c >> 6) != 0x2) ok = false;
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!ok) {
      out.push_back(b);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

struct Regex::Node {
  enum class Kind { empty, literal, any, klass, concat, alt, star, plus, optional };
  Kind kind = Kind::empty;
  char32_t ch = 0;
  bool negated = false;
  std::vector<std::pair<char32_t, char32_t>> ranges;
  std::vector<std::unique_ptr<Node>> kids;
};

namespace {

using Node = Regex::Node;
using Kind = Regex::Node::Kind;

class Compiler {
 public:
  explicit Compiler(std::u32string src) : src_(std::move(src)) {}

  std::unique_ptr<Node> run() {
    auto n = alternation();
    if (pos_ != src_.size()) throw RegexError("unbalanced ')'", pos_);
    return n;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char32_t peek() const { return src_[pos_]; }

  std::unique_ptr<Node> alternation() {
    auto first = sequence();
    if (at_end() || peek() != U'|') return first;
    auto alt = std::make_unique<Node>();
    alt->kind = Kind::alt;
    alt->kids.push_back(std::move(first));
    while (!at_end() && peek() == U'|') {
      ++pos_;
      alt->kids.push_back(sequence());
    }
    return alt;
  }

  std::unique_ptr<Node> sequence() {
    auto seq = std::make_unique<Node>();
    seq->kind = Kind::concat;
    while (!at_end() && peek() != U'|' && peek() != U')') seq->kids.push_back(repeat());
    if (seq->kids.size() == 1) return std::move(seq->kids.front());
    if (seq->kids.empty()) seq->kind = Kind::empty;
    return seq;
  }

  std::unique_ptr<Node> repeat() {
    auto atom_node = atom();
    while (!at_end() && (peek() == U'*' || peek() == U'+' || peek() == U'?')) {
      auto wrap = std::make_unique<Node>();
      wrap->kind = peek() == U'*' ? Kind::star : peek() == U'+' ? Kind::plus : Kind::optional;
      ++pos_;
      wrap->kids.push_back(std::move(atom_node));
      atom_node = std::move(wrap);
    }
    return atom_node;
  }

  char32_t escaped() {
    ++pos_;
    if (at_end()) throw RegexError("dangling escape", pos_);
    return src_[pos_++];
  }

  std::unique_ptr<Node> atom() {
    auto n = std::make_unique<Node>();
    char32_t c = peek();
    switch (c) {
      case U'(': {
        std::size_t open = pos_++;
        n = alternation();
        if (at_end() || peek() != U')') throw RegexError("unbalanced '('", open);
        ++pos_;
        return n;
      }
      case U'*':
      case U'+':
      case U'?': throw RegexError("repetition without operand", pos_);
      case U'.':
        ++pos_;
        n->kind = Kind::any;
        return n;
      case U'[': return klass();
      case U'\\':
        n->kind = Kind::literal;
        n->ch = escaped();
        return n;
      default:
        ++pos_;
        n->kind = Kind::literal;
        n->ch = c;
        return n;
    }
  }

  std::unique_ptr<Node> klass() {
    std::size_t open = pos_++;
    auto n = std::make_unique<Node>();
    n->kind = Kind::klass;
    if (!at_end() && peek() == U'^') {
      n->negated = true;
      ++pos_;
    }
    bool first = true;
    for (;;) {
      if (at_end()) throw RegexError("unterminated character class", open);
      if (peek() == U']' && !first) break;
      first = false;
      char32_t lo = peek() == U'\\' ? escaped() : src_[pos_++];
      char32_t hi = lo;
      if (pos_ + 1 < src_.size() && peek() == U'-' && src_[pos_ + 1] != U']') {
        ++pos_;
        hi = peek() == U'\\' ? escaped() : src_[pos_++];
        if (hi < lo) throw RegexError("reversed range in character class", pos_);
      }
      n->ranges.emplace_back(lo, hi);
    }
    ++pos_;
    return n;
  }

  std::u32string src_;
  std::size_t pos_ = 0;
};

using Positions = std::set<std::size_t>;

/// All end positions reachable by matching n starting at each of `starts`.
Positions step(const Node& n, const std::u32string& s, const Positions& starts) {
  Positions out;
  switch (n.kind) {
    case Kind::empty: return starts;
    case Kind::literal:
      for (auto p : starts)
        if (p < s.size() && s[p] == n.ch) out.insert(p + 1);
      return out;
    case Kind::any:
      for (auto p : starts)
        if (p < s.size()) out.insert(p + 1);
      return out;
    case Kind::klass:
      for (auto p : starts) {
        if (p >= s.size()) continue;
        bool in = std::any_of(n.ranges.begin(), n.ranges.end(),
                              [&](const auto& r) { return r.first <= s[p] && s[p] <= r.second; });
        if (in != n.negated) out.insert(p + 1);
      }
      return out;
    case Kind::concat: {
      Positions cur = starts;
      for (const auto& k : n.kids) {
        cur = step(*k, s, cur);
        if (cur.empty()) break;
      }
      return cur;
    }
    case Kind::alt:
      for (const auto& k : n.kids) {
        auto r = step(*k, s, starts);
        out.insert(r.begin(), r.end());
      }
      return out;
    case Kind::optional:
      out = step(*n.kids.front(), s, starts);
      out.insert(starts.begin(), starts.end());
      return out;
    case Kind::star:
    case Kind::plus: {
      Positions reached = n.kind == Kind::star ? starts : Positions{};
      Positions frontier = starts;
      for (;;) {
        Positions next = step(*n.kids.front(), s, frontier);
        Positions fresh;
        for (auto p : next)
          if (reached.insert(p).second) fresh.insert(p);
        if (fresh.empty()) break;
        frontier = std::move(fresh);
      }
      return reached;
    }
  }
  return out;
}

}  // namespace

Regex::Regex(std::string_view source) : source_(source), root_(Compiler(decode_utf8(source)).run()) {}

Regex::~Regex() = default;

bool Regex::full_match(std::string_view subject) const {
  auto s = decode_utf8(subject);
  return step(*root_, s, Positions{0}).count(s.size()) > 0;
}

}  // namespace refnum
