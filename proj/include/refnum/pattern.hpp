#pragma once

// Condition language over dependency trees.
//
//   pattern  := "-"                                  any subtree
//             | "(" "<" item* ">" child* ")"         node template
//             | "(and" pattern+ ")" | "(or" pattern+ ")" | "(not" pattern ")"
//             | "(modee" pattern ")"                 the phrase this one modifies
//             | "(modee*" pattern ")"                any phrase above this one
//             | "(numguard" name cmp int ")"         cmp is = >= <= (also ≥ ≤)
//             | "(refprop" category ")" | "(number" category ")"
//             | "(prior)"                            head lemma seen earlier in the document
//   item     := "-" | "[" field+ "]"
//   field    := "-" | "_" | word | 'quoted' | /regex/ | $name
//
// Item lists are aligned against the whole morpheme sequence, "-" items
// absorbing any run. Fields are positional over the six morpheme fields; a
// template with fewer than six fields must end in "-", which then covers
// the rest. "_" matches only a blank field, "-" any field. "$x" requires a
// numeral morpheme and binds x to its value.
//
// Each non-glob child pattern must match a distinct child. A "-" among the
// children admits extra unmatched children; without one the child patterns
// must account for every child.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "refnum/categories.hpp"
#include "refnum/regex.hpp"
#include "refnum/tree.hpp"

namespace refnum {

/// Owning pointer with value semantics, for recursive AST nodes.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

struct FieldPattern {
  enum class Kind { any, blank, literal, regex, numeral };
  Kind kind = Kind::any;
  /// Literal value, regex source, or binder name.
  std::string text;
  std::shared_ptr<const Regex> compiled;

  static FieldPattern any() { return {}; }
  static FieldPattern blank() { return {Kind::blank, {}, nullptr}; }
  static FieldPattern literal(std::string value) { return {Kind::literal, std::move(value), nullptr}; }
  static FieldPattern regex(std::string source);
  static FieldPattern numeral(std::string binder) { return {Kind::numeral, std::move(binder), nullptr}; }

  friend bool operator==(const FieldPattern& a, const FieldPattern& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

struct MorphemeTemplate {
  std::vector<FieldPattern> fields;
  bool operator==(const MorphemeTemplate&) const = default;
};

/// One entry of a node template's morpheme list: a glob or a template.
struct MorphemeItem {
  std::optional<MorphemeTemplate> morpheme;  // nullopt = "-"
  bool is_glob() const { return !morpheme.has_value(); }
  bool operator==(const MorphemeItem&) const = default;
};

struct Pattern;

struct Glob {
  bool operator==(const Glob&) const = default;
};

struct NodeTemplate {
  std::vector<MorphemeItem> morphemes;
  std::vector<Pattern> children;  // never contains a bare Glob
  bool allow_extra = false;
};

struct AllOf {
  std::vector<Pattern> operands;
};

struct AnyOf {
  std::vector<Pattern> operands;
};

struct Negation {
  Box<Pattern> operand;
};

struct Modee {
  Box<Pattern> operand;
  bool transitive = false;
};

enum class Comparator { eq, ge, le };

struct NumGuard {
  std::string binder;
  Comparator cmp = Comparator::eq;
  long long value = 0;
  bool operator==(const NumGuard&) const = default;
};

/// Decided annotation of the matched phrase.
struct HasCategory {
  Dimension dimension = Dimension::refprop;
  CategoryIndex category = 0;
  bool operator==(const HasCategory&) const = default;
};

struct PriorMention {
  bool operator==(const PriorMention&) const = default;
};

struct Pattern {
  using Variant = std::variant<Glob, NodeTemplate, AllOf, AnyOf, Negation, Modee, NumGuard, HasCategory, PriorMention>;
  Variant node;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

bool operator==(const NodeTemplate& a, const NodeTemplate& b);
bool operator==(const AllOf& a, const AllOf& b);
bool operator==(const AnyOf& a, const AnyOf& b);
bool operator==(const Negation& a, const Negation& b);
bool operator==(const Modee& a, const Modee& b);
bool operator==(const Pattern& a, const Pattern& b);

/// Throws ParseError (with line/column) on syntax errors, on regex errors
/// and on guards whose binder no "$name" field binds.
Pattern parse_pattern(std::string_view text, std::size_t first_line = 1);

/// Single-line text that parses back to an equal pattern.
std::string to_text(const Pattern& p);

/// Depth of operator/template nesting; a leaf pattern has depth 1.
std::size_t depth(const Pattern& p);

/// True when any sub-pattern satisfies pred.
bool contains(const Pattern& p, bool (*pred)(const Pattern&));

class DiscourseContext;

using Bindings = std::map<std::string, long long>;

struct MatchContext {
  const Sentence& sentence;
  const TreeIndex& index;
  const PhraseNode* current_noun = nullptr;
  const DiscourseContext* discourse = nullptr;
  Bindings bindings;
};

struct MatchResult {
  bool matched = false;
  Bindings bindings;
  explicit operator bool() const { return matched; }
};

/// Pure: the result depends only on the arguments. Returns the bindings of
/// the first successful alignment found.
MatchResult matches(const Pattern& p, const PhraseNode& node, const MatchContext& ctx);

}  // namespace refnum
