#include "refnum/tree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "lexer.hpp"

namespace refnum {

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

Morpheme parse_morpheme(Lexer& lex, PhraseNode& node, bool first) {
  Token open = lex.expect(Tok::lbracket, "'['");
  Morpheme m;
  std::string* bare[] = {&m.pos, &m.subpos, &m.conj_type, &m.conj_form};
  for (std::string* field : bare) {
    const Token& t = lex.peek();
    if (t.kind != Tok::word) lex.fail("expected morpheme field" + Lexer::describe(t));
    *field = lex.take().text;
  }
  if (m.pos == kBlank) lex.fail("pos must not be blank", open);
  for (std::string* field : {&m.lemma, &m.surface}) {
    const Token& t = lex.peek();
    if (t.kind != Tok::quoted) lex.fail("expected quoted lemma/surface" + Lexer::describe(t));
    *field = lex.take().text;
  }
  // optional refprop / number annotation
  while (lex.peek().kind == Tok::word) {
    Token t = lex.take();
    if (!first) lex.fail("annotation is only allowed on the head morpheme", t);
    if (auto r = parse_refprop(t.text)) {
      if (node.refprop || node.number) lex.fail("duplicate or misplaced refprop annotation", t);
      node.refprop = *r;
    } else if (auto n = parse_number(t.text)) {
      if (node.number) lex.fail("duplicate number annotation", t);
      node.number = *n;
    } else {
      lex.fail("unknown annotation token '" + t.text + "'", t);
    }
  }
  lex.expect(Tok::rbracket, "']'");
  return m;
}

PhraseNode parse_node(Lexer& lex) {
  Token open = lex.expect(Tok::lparen, "'('");
  lex.expect(Tok::langle, "'<'");
  PhraseNode node;
  while (lex.peek().kind == Tok::lbracket) node.morphemes.push_back(parse_morpheme(lex, node, node.morphemes.empty()));
  if (node.morphemes.empty()) lex.fail("phrase needs at least one morpheme");
  lex.expect(Tok::rangle, "'>'");
  if (lex.peek().kind == Tok::word && lex.peek().text.starts_with('#')) {
    Token t = lex.take();
    int k = 0;
    auto digits = std::string_view(t.text).substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || k < 1)
      lex.fail("bad surface index '" + t.text + "'", t);
    node.surface_index = k;
  }
  while (lex.peek().kind == Tok::lparen) node.children.push_back(parse_node(lex));
  lex.expect(Tok::rparen, "')'");
  if ((node.refprop || node.number) && !node.is_noun())
    throw ParseError("annotation on a non-noun phrase", open.line, open.column);
  return node;
}

void validate_indices(const PhraseNode& root, std::size_t line, std::size_t column) {
  std::vector<int> seen;
  std::size_t total = 0;
  std::function<void(const PhraseNode&)> walk = [&](const PhraseNode& n) {
    ++total;
    if (n.surface_index) seen.push_back(*n.surface_index);
    for (const auto& c : n.children) walk(c);
  };
  walk(root);
  if (seen.empty()) return;
  if (seen.size() != total) throw ParseError("surface indices must be given on every phrase or none", line, column);
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (i > 0 && seen[i] == seen[i - 1])
      throw ParseError("duplicate surface index #" + std::to_string(seen[i]), line, column);
    if (seen[i] != static_cast<int>(i + 1))
      throw ParseError("surface indices are not contiguous from 1", line, column);
  }
}

Sentence parse_tree_at(std::string_view text, std::size_t first_line) {
  Lexer lex(text, false, first_line);
  Token start = lex.peek();
  Sentence s;
  s.root = parse_node(lex);
  if (lex.peek().kind != Tok::end) lex.fail("trailing input after tree");
  validate_indices(s.root, start.line, start.column);
  return s;
}

void write_morpheme(std::string& out, const Morpheme& m, const PhraseNode* annotated) {
  out += '[';
  out += m.pos + ' ' + m.subpos + ' ' + m.conj_type + ' ' + m.conj_form + ' ';
  out += detail::quote(m.lemma) + ' ' + detail::quote(m.surface);
  if (annotated) {
    if (annotated->refprop) (out += ' ') += to_string(*annotated->refprop);
    if (annotated->number) (out += ' ') += to_string(*annotated->number);
  }
  out += ']';
}

void write_node(std::string& out, const PhraseNode& n, std::size_t depth, bool with_annotations) {
  std::string indent(3 * depth, ' ');
  out += indent + "( <";
  for (std::size_t i = 0; i < n.morphemes.size(); ++i) {
    if (i > 0) out += '\n' + indent + "   ";
    write_morpheme(out, n.morphemes[i], (i == 0 && with_annotations) ? &n : nullptr);
  }
  out += '>';
  if (n.surface_index) out += '#' + std::to_string(*n.surface_index);
  if (n.children.empty()) {
    out += " )";
    return;
  }
  for (const auto& c : n.children) {
    out += '\n';
    write_node(out, c, depth + 1, with_annotations);
  }
  out += ')';
}

struct Block {
  std::vector<std::pair<std::string, std::string>> directives;  // (name, value)
  std::string tree;
  std::size_t tree_line = 0;
  std::size_t first_line = 0;
};

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits text into blank-line separated blocks of directives and tree text.
std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  Block cur;
  bool open = false;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (open) blocks.push_back(std::move(cur));
    cur = Block{};
    open = false;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    auto t = trim(line);
    if (t.empty()) {
      flush();
    } else if (t.front() == ';') {
      // comment
    } else if (t.front() == '@' && cur.tree.empty()) {
      if (!open) cur.first_line = line_no;
      open = true;
      auto sp = t.find_first_of(" \t");
      std::string name(t.substr(1, sp == std::string_view::npos ? std::string_view::npos : sp - 1));
      std::string value(sp == std::string_view::npos ? std::string_view{} : trim(t.substr(sp)));
      if (name != "sentence" && name != "doc") throw ParseError("unknown directive '@" + name + "'", line_no, 1);
      if (value.empty()) throw ParseError("directive '@" + name + "' needs a value", line_no, 1);
      cur.directives.emplace_back(std::move(name), std::move(value));
    } else {
      if (!open) cur.first_line = line_no;
      open = true;
      if (cur.tree.empty()) cur.tree_line = line_no;
      cur.tree.append(line);
      cur.tree.push_back('\n');
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return blocks;
}

}  // namespace

Sentence parse_tree(std::string_view text) { return parse_tree_at(text, 1); }

std::string serialize(const Sentence& s, bool with_annotations) {
  std::string out;
  write_node(out, s.root, 0, with_annotations);
  out += '\n';
  return out;
}

std::vector<Document> parse_document_set(std::string_view text, const std::string& default_id) {
  std::vector<Document> docs;
  auto current = [&]() -> Document& {
    if (docs.empty()) docs.push_back(Document{default_id, {}});
    return docs.back();
  };
  for (auto& b : split_blocks(text)) {
    std::optional<std::string> sentence_id;
    for (auto& [name, value] : b.directives) {
      if (name == "doc") {
        if (sentence_id) throw ParseError("'@doc' must precede '@sentence'", b.first_line, 1);
        docs.push_back(Document{value, {}});
      } else {
        sentence_id = value;
      }
    }
    if (b.tree.empty()) {
      if (sentence_id) throw ParseError("'@sentence' without a tree", b.first_line, 1);
      continue;
    }
    Document& doc = current();
    Sentence s = parse_tree_at(b.tree, b.tree_line);
    s.id = sentence_id ? *sentence_id : "s" + std::to_string(doc.sentences.size() + 1);
    for (const auto& other : doc.sentences)
      if (other.id == s.id) throw ParseError("duplicate sentence id '" + s.id + "'", b.tree_line, 1);
    doc.sentences.push_back(std::move(s));
  }
  return docs;
}

Document parse_document(std::string_view text, std::string id) {
  auto docs = parse_document_set(text, id);
  if (docs.empty()) return Document{std::move(id), {}};
  if (docs.size() > 1) throw ParseError("'@doc' directive inside a single document", 1, 1);
  Document d = std::move(docs.front());
  d.id = std::move(id);
  return d;
}

std::string serialize_document(const Document& doc, bool with_annotations) {
  std::string out;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& s = doc.sentences[i];
    if (i > 0) out += '\n';
    if (s.id != "s" + std::to_string(i + 1)) out += "@sentence " + s.id + '\n';
    out += serialize(s, with_annotations);
  }
  return out;
}

std::string serialize_document_set(std::span<const Document> docs, bool with_annotations) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) out += '\n';
    out += "@doc " + docs[i].id + '\n';
    std::string body = serialize_document(docs[i], with_annotations);
    out += body;
  }
  return out;
}

namespace {

template <class Node, class Out>
void post_order(Node& n, Out& out) {
  for (auto& c : n.children) post_order(c, out);
  if (n.is_noun()) out.push_back(&n);
}

template <class Node, class Out>
void collect_nouns(Node& root, Out& out) {
  post_order(root, out);
  if (!root.surface_index) return;
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return *a->surface_index < *b->surface_index; });
}

void clear_node(PhraseNode& n) {
  n.refprop.reset();
  n.number.reset();
  for (auto& c : n.children) clear_node(c);
}

}  // namespace

std::vector<const PhraseNode*> nouns_in_order(const Sentence& s) {
  std::vector<const PhraseNode*> out;
  collect_nouns(s.root, out);
  return out;
}

std::vector<PhraseNode*> nouns_in_order(Sentence& s) {
  std::vector<PhraseNode*> out;
  collect_nouns(s.root, out);
  return out;
}

void clear_annotations(Sentence& s) { clear_node(s.root); }
void clear_annotations(Document& d) {
  for (auto& s : d.sentences) clear_annotations(s);
}

TreeIndex::TreeIndex(const Sentence& s) {
  std::function<void(const PhraseNode&, const PhraseNode*)> walk = [&](const PhraseNode& n, const PhraseNode* parent) {
    parents_[&n] = parent;
    nodes_.push_back(&n);
    for (const auto& c : n.children) walk(c, &n);
  };
  walk(s.root, nullptr);
}

const PhraseNode* TreeIndex::parent(const PhraseNode& node) const {
  auto it = parents_.find(&node);
  return it == parents_.end() ? nullptr : it->second;
}

std::string noun_id(std::string_view doc, std::string_view sentence, std::size_t index) {
  std::string out(doc);
  out += ':';
  out += sentence;
  out += ':';
  out += std::to_string(index);
  return out;
}

}  // namespace refnum
