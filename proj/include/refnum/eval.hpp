#pragma once

// Gold files are tab separated, one noun per line:
//
//   doc  sentence  index  lemma  refprop-gold  number-gold
//
// A gold field is "?" for undecidable, or
//
//   primary[,alternate...][;coarse[=class]][;reasonable=cat,cat...]
//
// where primary may be "other". Lines starting with '#' are ignored.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refnum/categories.hpp"
#include "refnum/tree.hpp"

namespace refnum {

enum class Outcome { correct, reasonable, partially_correct, incorrect };
inline constexpr std::size_t kOutcomeCount = 4;
inline constexpr std::size_t kOtherColumn = kCategoryCount;
inline constexpr std::size_t kColumnCount = kCategoryCount + 1;

std::string_view to_string(Outcome o);

struct GoldLabel {
  Dimension dimension = Dimension::refprop;
  bool undecidable = false;
  std::optional<CategoryIndex> primary;    // empty means "other"
  std::vector<CategoryIndex> acceptable;   // sorted, includes primary
  std::optional<CoarseClass> coarse;
  std::vector<CategoryIndex> reasonable;   // explicit extra reasonable predictions

  std::size_t column() const { return primary ? *primary : kOtherColumn; }
  bool operator==(const GoldLabel&) const = default;
};

class GoldError : public std::runtime_error {
 public:
  GoldError(const std::string& what, std::size_t line)
      : std::runtime_error("gold line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Throws std::invalid_argument on a malformed field.
GoldLabel parse_gold_label(std::string_view field, Dimension dimension);
std::string to_string(const GoldLabel& g);

struct GoldRecord {
  std::string doc;
  std::string sentence;
  std::size_t index = 0;
  std::string lemma;
  GoldLabel refprop;
  GoldLabel number;

  std::string noun_id() const { return refnum::noun_id(doc, sentence, index); }
  bool operator==(const GoldRecord&) const = default;
};

std::vector<GoldRecord> parse_gold(std::string_view text);
std::string serialize_gold(std::span<const GoldRecord> records);

/// Gold records that mirror the annotations already present on the documents.
std::vector<GoldRecord> gold_from_annotations(std::span<const Document> docs);

/// Precedence: correct, reasonable, partially correct, incorrect.
/// Throws std::invalid_argument when dimensions differ or gold is undecidable.
Outcome classify(CategoryIndex prediction, Dimension dimension, const GoldLabel& gold);

class ScoreTable {
 public:
  explicit ScoreTable(Dimension d = Dimension::refprop) : dimension_(d) {}

  Dimension dimension() const { return dimension_; }
  std::size_t count(Outcome o, std::size_t column) const { return counts_[index(o)][column]; }
  void add(Outcome o, std::size_t column, std::size_t n = 1) { counts_[index(o)][column] += n; }
  std::size_t undecidable() const { return undecidable_; }
  void add_undecidable(std::size_t n = 1) { undecidable_ += n; }

  std::size_t column_total(std::size_t column) const;
  std::size_t row_total(Outcome o) const;
  std::size_t total() const;

  /// Percentages in tenths, rounded half up; empty for an empty column.
  std::optional<long> correct_tenths(std::size_t column) const;
  std::optional<long> total_correct_tenths() const;
  std::optional<long> appearance_tenths(std::size_t column) const;

  /// Pooled counts, as used for the averages over several texts.
  ScoreTable& merge(const ScoreTable& other);

  bool operator==(const ScoreTable&) const = default;

 private:
  static std::size_t index(Outcome o) { return static_cast<std::size_t>(o); }

  Dimension dimension_;
  std::array<std::array<std::size_t, kColumnCount>, kOutcomeCount> counts_{};
  std::size_t undecidable_ = 0;
};

/// "89.2", or "-----" when undefined.
std::string format_tenths(std::optional<long> tenths);

class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct Evaluation {
  ScoreTable refprop{Dimension::refprop};
  ScoreTable number{Dimension::number};
};

/// Aligns annotated documents with gold by noun id and checks lemmas.
/// Throws AlignmentError naming every missing, extra or mismatched record.
Evaluation evaluate(std::span<const Document> predicted, std::span<const GoldRecord> gold);

std::string render_table(const ScoreTable& t, std::string_view title = {});
std::string render_delimited(const ScoreTable& t);
ScoreTable parse_delimited(std::string_view text);

}  // namespace refnum
