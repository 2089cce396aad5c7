#pragma once

#include <map>
#include <optional>
#include <string>

#include "refnum/categories.hpp"
#include "refnum/tree.hpp"

namespace refnum {

/// First mention of a head-noun lemma within a document.
struct Mention {
  std::string sentence_id;
  const PhraseNode* node = nullptr;
  std::optional<RefProp> refprop;
  std::optional<NumberCat> number;
};

/// Per-document memory of the nouns annotated so far. Lemma identity only.
class DiscourseContext {
 public:
  /// Called once per noun, after both of its decisions. Later mentions of a
  /// lemma leave the first-mention entry untouched.
  void record(const std::string& sentence_id, const PhraseNode& noun) {
    seen_.try_emplace(noun.head_lemma(), Mention{sentence_id, &noun, noun.refprop, noun.number});
  }

  const Mention* find(const std::string& lemma) const {
    auto it = seen_.find(lemma);
    return it == seen_.end() ? nullptr : &it->second;
  }

  /// True when another noun with the same head lemma was annotated earlier.
  bool mentioned_before(const PhraseNode& node) const {
    const Mention* m = find(node.head_lemma());
    return m != nullptr && m->node != &node;
  }

  std::size_t size() const { return seen_.size(); }

 private:
  std::map<std::string, Mention> seen_;
};

}  // namespace refnum
