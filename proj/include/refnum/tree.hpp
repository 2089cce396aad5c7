#pragma once

// Dependency-tree model and the parenthesized tree text format.
//
//   Node     := "(" "<" Morpheme+ ">" [ "#" k ] Node* ")"
//   Morpheme := "[" pos subpos conj_type conj_form 'lemma' 'surface'
//                   [ refprop ] [ number ] "]"
//
// Blank fields are written "_". Lemma and surface are quoted with either
// `x' or 'x'; backslash escapes ' and \. A document is a sequence of
// blank-line separated trees. Lines starting with ';' are comments and
// lines starting with '@' are directives: "@sentence <id>" names the
// following tree, "@doc <id>" starts a new document in a document set.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refnum/categories.hpp"

namespace refnum {

inline constexpr std::string_view kBlank = "_";

struct Morpheme {
  std::string pos;
  std::string subpos{kBlank};
  std::string conj_type{kBlank};
  std::string conj_form{kBlank};
  std::string lemma;
  std::string surface;

  bool operator==(const Morpheme&) const = default;
};

/// One bunsetsu. Children are the phrases that modify it.
struct PhraseNode {
  std::vector<Morpheme> morphemes;
  std::vector<PhraseNode> children;
  std::optional<int> surface_index;
  std::optional<RefProp> refprop;
  std::optional<NumberCat> number;

  /// A target noun is any phrase whose first morpheme has pos "noun".
  bool is_noun() const { return !morphemes.empty() && morphemes.front().pos == "noun"; }
  const std::string& head_lemma() const { return morphemes.front().lemma; }

  bool operator==(const PhraseNode&) const = default;
};

struct Sentence {
  std::string id;
  PhraseNode root;

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses exactly one tree. The id is left empty.
Sentence parse_tree(std::string_view text);

/// Canonical layout: three spaces of indent per depth, continuation
/// morphemes indented one step further, leaves closed with " )".
std::string serialize(const Sentence& s, bool with_annotations);

/// Sentences without an "@sentence" directive get ids s1, s2, ...
Document parse_document(std::string_view text, std::string id);
std::string serialize_document(const Document& doc, bool with_annotations);

/// Documents separated by "@doc" directives. Sentences before the first
/// directive belong to a document named default_id.
std::vector<Document> parse_document_set(std::string_view text, const std::string& default_id);
std::string serialize_document_set(std::span<const Document> docs, bool with_annotations);

/// Target nouns in processing order: ascending surface index when the
/// sentence carries indices, else post-order (modifiers before their head,
/// siblings in listed order).
std::vector<const PhraseNode*> nouns_in_order(const Sentence& s);
std::vector<PhraseNode*> nouns_in_order(Sentence& s);

void clear_annotations(Sentence& s);
void clear_annotations(Document& d);

/// Parent lookup for the nodes of one sentence. The sentence must outlive
/// the index and must not be structurally modified.
class TreeIndex {
 public:
  explicit TreeIndex(const Sentence& s);

  const PhraseNode* parent(const PhraseNode& node) const;
  const std::vector<const PhraseNode*>& nodes() const { return nodes_; }

 private:
  std::unordered_map<const PhraseNode*, const PhraseNode*> parents_;
  std::vector<const PhraseNode*> nodes_;
};

/// "<doc>:<sentence>:<k>" with k the 1-based position in nouns_in_order.
std::string noun_id(std::string_view doc, std::string_view sentence, std::size_t index);

}  // namespace refnum
