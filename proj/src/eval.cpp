#include "refnum/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace refnum {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::correct: return "correct";
    case Outcome::reasonable: return "reasonable";
    case Outcome::partially_correct: return "partially correct";
    case Outcome::incorrect: return "incorrect";
  }
  return "?";
}

namespace {

constexpr std::array<Outcome, kOutcomeCount> kOutcomes{Outcome::correct, Outcome::reasonable,
                                                      Outcome::partially_correct, Outcome::incorrect};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

CategoryIndex need_category(Dimension d, std::string_view name) {
  auto i = category_index(d, trim(name));
  if (!i) throw std::invalid_argument("unknown " + std::string(to_string(d)) + " category '" + std::string(name) + "'");
  return *i;
}

void sort_unique(std::vector<CategoryIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<CategoryIndex>& v, CategoryIndex i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

}  // namespace

GoldLabel parse_gold_label(std::string_view field, Dimension dimension) {
  GoldLabel g;
  g.dimension = dimension;
  field = trim(field);
  if (field == "?") {
    g.undecidable = true;
    return g;
  }
  auto parts = split(field, ';');
  auto cats = split(parts[0], ',');
  if (trim(cats[0]) != "other") g.primary = need_category(dimension, cats[0]);
  if (g.primary) g.acceptable.push_back(*g.primary);
  for (std::size_t i = 1; i < cats.size(); ++i) g.acceptable.push_back(need_category(dimension, cats[i]));
  sort_unique(g.acceptable);

  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::string_view p = trim(parts[i]);
    if (p == "coarse") {
      if (!g.primary || !coarse_of(dimension, *g.primary))
        throw std::invalid_argument("primary category has no coarse class");
      g.coarse = coarse_of(dimension, *g.primary);
    } else if (p.starts_with("coarse=")) {
      auto c = parse_coarse(p.substr(7));
      if (!c || dimension_of(*c) != dimension) throw std::invalid_argument("bad coarse class '" + std::string(p) + "'");
      g.coarse = c;
    } else if (p.starts_with("reasonable=")) {
      for (auto name : split(p.substr(11), ',')) g.reasonable.push_back(need_category(dimension, name));
      sort_unique(g.reasonable);
    } else {
      throw std::invalid_argument("unknown gold option '" + std::string(p) + "'");
    }
  }
  return g;
}

std::string to_string(const GoldLabel& g) {
  if (g.undecidable) return "?";
  std::string out = g.primary ? std::string(category_name(g.dimension, *g.primary)) : "other";
  for (auto i : g.acceptable)
    if (i != g.primary) out += "," + std::string(category_name(g.dimension, i));
  if (g.coarse) {
    if (g.primary && coarse_of(g.dimension, *g.primary) == g.coarse)
      out += ";coarse";
    else
      out += ";coarse=" + std::string(to_string(*g.coarse));
  }
  if (!g.reasonable.empty()) {
    out += ";reasonable=";
    for (std::size_t i = 0; i < g.reasonable.size(); ++i) {
      if (i > 0) out += ',';
      out += category_name(g.dimension, g.reasonable[i]);
    }
  }
  return out;
}

std::vector<GoldRecord> parse_gold(std::string_view text) {
  std::vector<GoldRecord> out;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 6) throw GoldError("expected 6 tab-separated fields, got " + std::to_string(cols.size()), line_no);
    GoldRecord r;
    r.doc = trim(cols[0]);
    r.sentence = trim(cols[1]);
    r.lemma = trim(cols[3]);
    try {
      std::size_t used = 0;
      std::string idx(trim(cols[2]));
      r.index = std::stoul(idx, &used);
      if (used != idx.size() || r.index == 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw GoldError("bad noun index '" + std::string(cols[2]) + "'", line_no);
    }
    try {
      r.refprop = parse_gold_label(cols[4], Dimension::refprop);
      r.number = parse_gold_label(cols[5], Dimension::number);
    } catch (const std::invalid_argument& e) {
      throw GoldError(e.what(), line_no);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string serialize_gold(std::span<const GoldRecord> records) {
  std::string out = "# doc\tsentence\tindex\tlemma\trefprop\tnumber\n";
  for (const auto& r : records) {
    out += r.doc + '\t' + r.sentence + '\t' + std::to_string(r.index) + '\t' + r.lemma + '\t' + to_string(r.refprop) +
           '\t' + to_string(r.number) + '\n';
  }
  return out;
}

std::vector<GoldRecord> gold_from_annotations(std::span<const Document> docs) {
  std::vector<GoldRecord> out;
  for (const auto& doc : docs) {
    for (const auto& s : doc.sentences) {
      auto nouns = nouns_in_order(s);
      for (std::size_t k = 0; k < nouns.size(); ++k) {
        const PhraseNode& n = *nouns[k];
        GoldRecord r;
        r.doc = doc.id;
        r.sentence = s.id;
        r.index = k + 1;
        r.lemma = n.head_lemma();
        r.refprop.dimension = Dimension::refprop;
        r.number.dimension = Dimension::number;
        if (n.refprop) {
          r.refprop.primary = static_cast<CategoryIndex>(*n.refprop);
          r.refprop.acceptable = {*r.refprop.primary};
        } else {
          r.refprop.undecidable = true;
        }
        if (n.number) {
          r.number.primary = static_cast<CategoryIndex>(*n.number);
          r.number.acceptable = {*r.number.primary};
        } else {
          r.number.undecidable = true;
        }
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

Outcome classify(CategoryIndex prediction, Dimension dimension, const GoldLabel& gold) {
  if (dimension != gold.dimension) throw std::invalid_argument("prediction and gold differ in dimension");
  if (gold.undecidable) throw std::invalid_argument("undecidable gold has no outcome");
  if (gold.primary == prediction) return Outcome::correct;
  if (gold.coarse && coarse_of(dimension, prediction) == gold.coarse) return Outcome::reasonable;
  if (contains(gold.reasonable, prediction)) return Outcome::reasonable;
  if (contains(gold.acceptable, prediction)) return Outcome::partially_correct;
  return Outcome::incorrect;
}

std::size_t ScoreTable::column_total(std::size_t column) const {
  std::size_t n = 0;
  for (const auto& row : counts_) n += row[column];
  return n;
}

std::size_t ScoreTable::row_total(Outcome o) const {
  std::size_t n = 0;
  for (auto c : counts_[index(o)]) n += c;
  return n;
}

std::size_t ScoreTable::total() const {
  std::size_t n = 0;
  for (auto o : kOutcomes) n += row_total(o);
  return n;
}

namespace {

std::optional<long> tenths(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return static_cast<long>((2000 * part + whole) / (2 * whole));
}

}  // namespace

std::optional<long> ScoreTable::correct_tenths(std::size_t column) const {
  return tenths(count(Outcome::correct, column), column_total(column));
}

std::optional<long> ScoreTable::total_correct_tenths() const { return tenths(row_total(Outcome::correct), total()); }

std::optional<long> ScoreTable::appearance_tenths(std::size_t column) const {
  return tenths(column_total(column), total());
}

ScoreTable& ScoreTable::merge(const ScoreTable& other) {
  if (other.dimension_ != dimension_) throw std::invalid_argument("cannot merge tables of different dimensions");
  for (std::size_t o = 0; o < kOutcomeCount; ++o)
    for (std::size_t c = 0; c < kColumnCount; ++c) counts_[o][c] += other.counts_[o][c];
  undecidable_ += other.undecidable_;
  return *this;
}

std::string format_tenths(std::optional<long> t) {
  if (!t) return "-----";
  return std::to_string(*t / 10) + '.' + std::to_string(*t % 10);
}

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "gold alignment failed:";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

}  // namespace

AlignmentError::AlignmentError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

Evaluation evaluate(std::span<const Document> predicted, std::span<const GoldRecord> gold) {
  std::map<std::string, const GoldRecord*> by_id;
  std::vector<std::string> problems;
  for (const auto& g : gold) {
    if (!by_id.emplace(g.noun_id(), &g).second) problems.push_back("duplicate gold record " + g.noun_id());
  }

  Evaluation ev;
  std::set<std::string> seen;
  for (const auto& doc : predicted) {
    for (const auto& s : doc.sentences) {
      auto nouns = nouns_in_order(s);
      for (std::size_t k = 0; k < nouns.size(); ++k) {
        const PhraseNode& n = *nouns[k];
        std::string id = noun_id(doc.id, s.id, k + 1);
        auto it = by_id.find(id);
        if (it == by_id.end()) {
          problems.push_back("missing gold record " + id + " (" + n.head_lemma() + ")");
          continue;
        }
        seen.insert(id);
        const GoldRecord& g = *it->second;
        if (g.lemma != n.head_lemma()) {
          problems.push_back("lemma mismatch at " + id + ": gold " + g.lemma + ", tree " + n.head_lemma());
          continue;
        }
        if (!n.refprop || !n.number) {
          problems.push_back("unannotated noun " + id);
          continue;
        }
        auto score = [](ScoreTable& t, const GoldLabel& label, CategoryIndex prediction) {
          if (label.undecidable) {
            t.add_undecidable();
            return;
          }
          t.add(classify(prediction, t.dimension(), label), label.column());
        };
        score(ev.refprop, g.refprop, static_cast<CategoryIndex>(*n.refprop));
        score(ev.number, g.number, static_cast<CategoryIndex>(*n.number));
      }
    }
  }
  for (const auto& [id, g] : by_id)
    if (!seen.count(id)) problems.push_back("extra gold record " + id + " (" + g->lemma + ")");
  if (!problems.empty()) throw AlignmentError(std::move(problems));
  return ev;
}

namespace {

std::string column_name(Dimension d, std::size_t c) {
  return c == kOtherColumn ? "other" : std::string(category_name(d, c));
}

}  // namespace

std::string render_table(const ScoreTable& t, std::string_view title) {
  constexpr int kLabel = 18;
  constexpr int kCell = 12;
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  out << std::left << std::setw(kLabel) << to_string(t.dimension()) << std::right;
  for (std::size_t c = 0; c < kColumnCount; ++c) out << std::setw(kCell) << column_name(t.dimension(), c);
  out << std::setw(kCell) << "total" << '\n';
  for (auto o : kOutcomes) {
    out << std::left << std::setw(kLabel) << to_string(o) << std::right;
    for (std::size_t c = 0; c < kColumnCount; ++c) out << std::setw(kCell) << t.count(o, c);
    out << std::setw(kCell) << t.row_total(o) << '\n';
  }
  out << std::left << std::setw(kLabel) << "% of correct" << std::right;
  for (std::size_t c = 0; c < kColumnCount; ++c) out << std::setw(kCell) << format_tenths(t.correct_tenths(c));
  out << std::setw(kCell) << format_tenths(t.total_correct_tenths()) << '\n';
  out << std::left << std::setw(kLabel) << "% of appearance" << std::right;
  for (std::size_t c = 0; c < kColumnCount; ++c) out << std::setw(kCell) << format_tenths(t.appearance_tenths(c));
  out << std::setw(kCell) << format_tenths(t.total() ? std::optional<long>(1000) : std::nullopt) << '\n';
  out << std::left << std::setw(kLabel) << "undecidable" << std::right << std::setw(kCell) << t.undecidable() << '\n';
  return out.str();
}

std::string render_delimited(const ScoreTable& t) {
  std::string out(to_string(t.dimension()));
  for (std::size_t c = 0; c < kColumnCount; ++c) out += '\t' + column_name(t.dimension(), c);
  out += "\ttotal\n";
  for (auto o : kOutcomes) {
    out += to_string(o);
    for (std::size_t c = 0; c < kColumnCount; ++c) out += '\t' + std::to_string(t.count(o, c));
    out += '\t' + std::to_string(t.row_total(o)) + '\n';
  }
  out += "% of correct";
  for (std::size_t c = 0; c < kColumnCount; ++c) out += '\t' + format_tenths(t.correct_tenths(c));
  out += '\t' + format_tenths(t.total_correct_tenths()) + '\n';
  out += "undecidable\t" + std::to_string(t.undecidable()) + '\n';
  return out;
}

ScoreTable parse_delimited(std::string_view text) {
  auto lines = split(text, '\n');
  auto bad = [](const std::string& what) { return std::invalid_argument("delimited table: " + what); };
  if (lines.empty()) throw bad("empty input");
  auto header = split(lines[0], '\t');
  auto dim = parse_dimension(trim(header[0]));
  if (!dim || header.size() != kColumnCount + 2) throw bad("bad header");
  ScoreTable t(*dim);
  std::size_t rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cols = split(lines[i], '\t');
    std::string_view label = trim(cols[0]);
    if (label.empty()) continue;
    auto parse_count = [&](std::string_view s) -> std::size_t {
      std::string v(trim(s));
      std::size_t used = 0;
      std::size_t n = 0;
      try {
        n = std::stoul(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (v.empty() || used != v.size()) throw bad("bad count '" + v + "'");
      return n;
    };
    if (label == "undecidable") {
      if (cols.size() != 2) throw bad("bad undecidable row");
      t.add_undecidable(parse_count(cols[1]));
      continue;
    }
    if (label == "% of correct") continue;
    auto o = std::find_if(kOutcomes.begin(), kOutcomes.end(), [&](Outcome x) { return to_string(x) == label; });
    if (o == kOutcomes.end()) throw bad("unknown row '" + std::string(label) + "'");
    if (cols.size() != kColumnCount + 2) throw bad("wrong column count");
    for (std::size_t c = 0; c < kColumnCount; ++c) t.add(*o, c, parse_count(cols[c + 1]));
    if (parse_count(cols[kColumnCount + 1]) != t.row_total(*o)) throw bad("row total mismatch");
    ++rows;
  }
  if (rows != kOutcomeCount) throw bad("expected " + std::to_string(kOutcomeCount) + " outcome rows");
  return t;
}

}  // namespace refnum
