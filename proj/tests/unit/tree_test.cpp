#include <gtest/gtest.h>

#include "refnum/tree.hpp"
#include "support/generators.hpp"
#include "support/paths.hpp"

using namespace refnum;
using namespace refnum::testing;

namespace {

std::vector<std::string> head_lemmas(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto* n : nouns_in_order(s)) out.push_back(n->head_lemma());
  return out;
}

}  // namespace

TEST(Tree, ParsesBengoshiStructure) {
  Sentence s = parse_tree(read_text(fixtures_dir() + "/bengoshi.tree"));
  ASSERT_EQ(s.root.morphemes.size(), 3u);
  EXPECT_EQ(s.root.morphemes[0].lemma, "HITORI");
  EXPECT_EQ(s.root.morphemes[1].conj_form, "DESU-line-basic-form");
  EXPECT_EQ(s.root.morphemes[1].subpos, "_");
  ASSERT_EQ(s.root.children.size(), 2u);
  const PhraseNode& musuko = s.root.children[0];
  EXPECT_EQ(musuko.head_lemma(), "MUSUKO");
  EXPECT_EQ(musuko.children[0].children[0].morphemes[0].pos, "referential-pronominal");
  EXPECT_FALSE(s.root.surface_index);
}

TEST(Tree, CanonicalLayoutReproducesInputFile) {
  std::string text = read_text(fixtures_dir() + "/bengoshi.tree");
  EXPECT_EQ(serialize(parse_tree(text), true), text);
}

TEST(Tree, AcceptsBothQuoteStyles) {
  Sentence a = parse_tree("( <[noun common-noun _ _ 'HON' 'HON']> )");
  Sentence b = parse_tree("( <[noun common-noun _ _ `HON' `HON']> )");
  EXPECT_EQ(a, b);
  EXPECT_EQ(serialize(a, true), "( <[noun common-noun _ _ `HON' `HON']> )\n");
}

TEST(Tree, EscapesInQuotedFields) {
  Sentence s;
  s.root.morphemes.push_back(Morpheme{"noun", "_", "_", "_", "a'b`c\\d", "x y"});
  Sentence back = parse_tree(serialize(s, true));
  EXPECT_EQ(back, s);
}

TEST(Tree, AnnotationsRoundTrip) {
  Sentence s = parse_tree(
      "( <[noun common-noun _ _ 'HITORI' 'HITORI' indefinite singular]\n"
      "   [copula _ copula DESU-line-basic-form 'DA' 'DESU']>\n"
      "   ( <[noun common-noun _ _ 'KARE' 'KARE' definite]> )\n"
      "   ( <[noun common-noun _ _ 'INU' 'INU' plural]> ))");
  EXPECT_EQ(s.root.refprop, RefProp::indefinite);
  EXPECT_EQ(s.root.number, NumberCat::singular);
  EXPECT_EQ(s.root.children[0].refprop, RefProp::definite);
  EXPECT_FALSE(s.root.children[0].number);
  EXPECT_EQ(s.root.children[1].number, NumberCat::plural);
  EXPECT_EQ(parse_tree(serialize(s, true)), s);
  std::string bare = serialize(s, false);
  EXPECT_EQ(bare.find("definite"), std::string::npos);
}

TEST(Tree, RejectsMisplacedAnnotations) {
  EXPECT_THROW(parse_tree("( <[verb _ _ _ 'IKU' 'IKU' definite]> )"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A'] [noun _ _ _ 'B' 'B' definite]> )"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A' singular definite]> )"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A' definite definite]> )"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A' bogus]> )"), ParseError);
}

TEST(Tree, ErrorsCarryLineAndColumn) {
  try {
    parse_tree("( <[noun _ _ _ 'A' 'A']>\n   ( <[noun _ _ 'B' 'B']> ))");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']>"), ParseError);
  EXPECT_THROW(parse_tree("( <> )"), ParseError);
  EXPECT_THROW(parse_tree("( <[_ _ _ _ 'A' 'A']> )"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']> ) extra"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A]> )"), ParseError);
}

TEST(Tree, SurfaceIndicesMustBeAPermutation) {
  EXPECT_NO_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']>#2 ( <[noun _ _ _ 'B' 'B']>#1 ))"));
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']>#2 ( <[noun _ _ _ 'B' 'B']> ))"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']>#1 ( <[noun _ _ _ 'B' 'B']>#1 ))"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']>#1 ( <[noun _ _ _ 'B' 'B']>#3 ))"), ParseError);
  EXPECT_THROW(parse_tree("( <[noun _ _ _ 'A' 'A']>#0 )"), ParseError);
}

TEST(Tree, NounOrderWithoutIndicesIsPostOrder) {
  Sentence s = parse_tree(read_text(fixtures_dir() + "/bengoshi.tree"));
  EXPECT_EQ(head_lemmas(s), (std::vector<std::string>{"BENGOSHI", "MUSUKO", "KARE", "HITORI"}));
}

TEST(Tree, NounOrderWithIndicesFollowsSurface) {
  Document d = fixture("D01");
  EXPECT_EQ(head_lemmas(d.sentences[0]), (std::vector<std::string>{"KARE", "BENGOSHI", "MUSUKO", "HITORI"}));
}

TEST(Tree, TreeIndexFindsParents) {
  Sentence s = parse_tree(read_text(fixtures_dir() + "/bengoshi.tree"));
  TreeIndex index(s);
  const PhraseNode& sono = s.root.children[0].children[0].children[0];
  ASSERT_NE(index.parent(sono), nullptr);
  EXPECT_EQ(index.parent(sono)->head_lemma(), "BENGOSHI");
  EXPECT_EQ(index.parent(s.root), nullptr);
  EXPECT_EQ(index.nodes().size(), 5u);
}

TEST(Tree, DocumentDirectivesAndComments) {
  std::string text =
      "; a comment\n"
      "( <[noun _ _ _ 'A' 'A']> )\n"
      "\n"
      "@sentence intro\n"
      "( <[noun _ _ _ 'B' 'B']> )\n"
      "\n"
      "( <[noun _ _ _ 'C' 'C']> )\n";
  Document d = parse_document(text, "doc");
  ASSERT_EQ(d.sentences.size(), 3u);
  EXPECT_EQ(d.sentences[0].id, "s1");
  EXPECT_EQ(d.sentences[1].id, "intro");
  EXPECT_EQ(d.sentences[2].id, "s3");
  EXPECT_EQ(parse_document(serialize_document(d, true), "doc"), d);
  EXPECT_EQ(noun_id(d.id, d.sentences[1].id, 1), "doc:intro:1");
}

TEST(Tree, DocumentErrors) {
  EXPECT_THROW(parse_document("@sentence a\n( <[noun _ _ _ 'A' 'A']> )\n\n@sentence a\n( <[noun _ _ _ 'B' 'B']> )\n", "d"),
               ParseError);
  EXPECT_THROW(parse_document("@bogus x\n( <[noun _ _ _ 'A' 'A']> )\n", "d"), ParseError);
  EXPECT_THROW(parse_document("@sentence\n( <[noun _ _ _ 'A' 'A']> )\n", "d"), ParseError);
  EXPECT_THROW(parse_document("( <[noun _ _ _ 'A' 'A']> )\n\n@doc x\n( <[noun _ _ _ 'B' 'B']> )\n", "d"), ParseError);
}

TEST(Tree, DocumentSets) {
  std::string text =
      "@doc first\n( <[noun _ _ _ 'A' 'A']> )\n\n"
      "( <[noun _ _ _ 'B' 'B']> )\n\n"
      "@doc second\n@sentence only\n( <[noun _ _ _ 'C' 'C']> )\n";
  auto docs = parse_document_set(text, "default");
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].id, "first");
  EXPECT_EQ(docs[0].sentences.size(), 2u);
  EXPECT_EQ(docs[1].sentences[0].id, "only");
  EXPECT_EQ(parse_document_set(serialize_document_set(docs, true), "default"), docs);
}

TEST(Tree, ClearAnnotations) {
  Document d = parse_document("( <[noun _ _ _ 'A' 'A' definite plural]> ( <[noun _ _ _ 'B' 'B' generic]> ))", "d");
  clear_annotations(d);
  for (const auto* n : nouns_in_order(d.sentences[0])) {
    EXPECT_FALSE(n->refprop);
    EXPECT_FALSE(n->number);
  }
}

TEST(TreeProperty, RandomTreesRoundTrip) {
  Rng rng(20240601);
  TreeOptions opts;
  opts.max_nodes = 8;
  opts.awkward_text = true;
  for (int i = 0; i < 300; ++i) {
    Sentence s = random_tree(rng, opts);
    std::string text = serialize(s, true);
    Sentence back = parse_tree(text);
    ASSERT_EQ(back, s) << text;
    ASSERT_EQ(serialize(back, true), text);
  }
}

TEST(TreeProperty, FixturesAreFixpoints) {
  for (const auto& doc : fixture_corpus()) {
    std::string once = serialize_document(doc, true);
    Document again = parse_document(once, doc.id);
    EXPECT_EQ(again, doc) << doc.id;
    EXPECT_EQ(serialize_document(again, true), once) << doc.id;
  }
}

TEST(TreeProperty, NounOrderIsAPermutationOfNouns) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Sentence s = random_tree(rng);
    auto order = nouns_in_order(s);
    std::size_t nouns = 0;
    TreeIndex index(s);
    for (const auto* n : index.nodes()) nouns += n->is_noun() ? 1 : 0;
    ASSERT_EQ(order.size(), nouns);
    for (std::size_t k = 1; k < order.size(); ++k)
      if (order[k]->surface_index) ASSERT_LT(*order[k - 1]->surface_index, *order[k]->surface_index);
  }
}
