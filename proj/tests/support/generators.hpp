#pragma once

#include <random>
#include <string>
#include <vector>

#include "refnum/engine.hpp"
#include "refnum/pattern.hpp"
#include "refnum/rules.hpp"
#include "refnum/tree.hpp"

namespace refnum::testing {

using Rng = std::mt19937_64;

struct TreeOptions {
  std::size_t max_nodes = 6;
  std::size_t max_morphemes = 3;
  bool annotate = true;          // random annotations on noun heads
  bool surface_indices = true;   // when true, half of the trees get indices
  bool awkward_text = false;     // quotes, backslashes, spaces, non-ASCII in lemma/surface
};

/// Small vocabulary shared by trees and patterns so that random patterns
/// match random trees often enough to be interesting.
struct Vocabulary {
  std::vector<std::string> pos{"noun", "verb", "postpositional-particle", "adjective"};
  std::vector<std::string> subpos{"_", "common-noun", "numeral", "pronoun"};
  std::vector<std::string> conj{"_", "ta-form", "basic-form"};
  std::vector<std::string> lemmas{"A", "B", "WA", "1", "2"};
};

Sentence random_tree(Rng& rng, const TreeOptions& opts = {}, const Vocabulary& vocab = {});

/// Random condition of at most the given depth. Numeral binders are
/// limited to "x" and "y"; guards may refer to unbound binders.
Pattern random_pattern(Rng& rng, std::size_t max_depth, const Vocabulary& vocab = {});

/// Wraps p so that every guard binder is bound somewhere, which the
/// pattern parser requires.
Pattern with_bound_binders(Pattern p);

ScoreBoard random_board(Rng& rng, Dimension d);

/// Random valid pack, for serializer round trips.
RulePack random_pack(Rng& rng, Dimension d, std::size_t rules);

}  // namespace refnum::testing
