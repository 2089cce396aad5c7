#include "refnum/engine.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace refnum {

void ScoreBoard::add(const Rule& rule) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    totals[i] += rule.scores[i].value;
    possible[i] = possible[i] && rule.scores[i].possibility == 1;
  }
  fired.push_back(FiredRule{rule.id, rule.scores});
}

ScoreBoard apply_rules(const RulePack& pack, const PhraseNode& noun, const MatchContext& ctx) {
  ScoreBoard board;
  board.dimension = pack.target;
  for (const auto& rule : pack.rules)
    if (matches(rule.condition, noun, ctx)) board.add(rule);
  return board;
}

Decision decide(const ScoreBoard& board, Dimension dimension) {
  Decision d;
  d.dimension = dimension;
  d.board = board;
  std::optional<CategoryIndex> best;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (!board.possible[i]) continue;
    if (!best || board.totals[i] > board.totals[*best]) best = i;
  }
  if (board.fired.empty() || !best || board.totals[*best] <= 0) {
    d.chosen = 0;
    d.default_used = true;
  } else {
    d.chosen = *best;
  }
  return d;
}

const NounTrace* Trace::find(std::string_view noun_id) const {
  for (const auto& n : nouns)
    if (n.noun_id == noun_id) return &n;
  return nullptr;
}

Trace annotate_document(Document& doc, const RulePack& refprop_pack, const RulePack& number_pack) {
  clear_annotations(doc);
  Trace trace;
  DiscourseContext discourse;
  for (auto& sentence : doc.sentences) {
    TreeIndex index(sentence);
    auto nouns = nouns_in_order(sentence);
    for (std::size_t k = 0; k < nouns.size(); ++k) {
      PhraseNode& noun = *nouns[k];
      MatchContext ctx{sentence, index, &noun, &discourse, {}};
      NounTrace entry;
      entry.noun_id = noun_id(doc.id, sentence.id, k + 1);
      entry.lemma = noun.head_lemma();
      entry.refprop = decide(apply_rules(refprop_pack, noun, ctx), Dimension::refprop);
      noun.refprop = static_cast<RefProp>(entry.refprop.chosen);
      entry.number = decide(apply_rules(number_pack, noun, ctx), Dimension::number);
      noun.number = static_cast<NumberCat>(entry.number.chosen);
      discourse.record(sentence.id, noun);
      trace.nouns.push_back(std::move(entry));
    }
  }
  return trace;
}

namespace {

std::string score_text(Dimension dim, const std::array<CategoryScore, kCategoryCount>& s) {
  std::string out;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (i > 0) out += "  ";
    out += category_name(dim, i);
    out += " (" + std::to_string(s[i].possibility) + ", " + std::to_string(s[i].value) + ")";
  }
  return out;
}

void explain_dimension(std::ostringstream& out, const Decision& d) {
  out << to_string(d.dimension) << ":\n";
  if (d.board.fired.empty()) {
    out << "  no rules fired; default applied → " << d.category() << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& f : d.board.fired) width = std::max(width, f.rule_id.size());
  for (const auto& f : d.board.fired) {
    out << "  " << f.rule_id << std::string(width - f.rule_id.size() + 2, ' ') << score_text(d.dimension, f.scores)
        << '\n';
  }
  std::array<CategoryScore, kCategoryCount> sums{};
  for (std::size_t i = 0; i < kCategoryCount; ++i) sums[i] = {d.board.possible[i] ? 1 : 0, d.board.totals[i]};
  out << "  " << "total" << std::string(width > 5 ? width - 5 + 2 : 2, ' ') << score_text(d.dimension, sums) << '\n';
  out << "  ";
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (i > 0) out << " / ";
    out << category_name(d.dimension, i) << ' ' << d.board.totals[i];
  }
  out << " → " << d.category();
  if (d.default_used) out << " (default)";
  out << '\n';
}

}  // namespace

std::string explain(const NounTrace& noun) {
  std::ostringstream out;
  out << noun.lemma << " [" << noun.noun_id << "]\n";
  explain_dimension(out, noun.refprop);
  explain_dimension(out, noun.number);
  return out.str();
}

std::string explain(const Trace& trace, std::string_view noun_id) {
  const NounTrace* n = trace.find(noun_id);
  if (!n) throw UnknownNounError("unknown noun id '" + std::string(noun_id) + "'");
  return explain(*n);
}

std::string trace_to_text(const Trace& trace, bool rules) {
  std::ostringstream out;
  for (const auto& n : trace.nouns) {
    out << n.noun_id << ' ' << n.lemma << ' ' << n.refprop.category() << ' ' << n.number.category() << '\n';
    if (!rules) continue;
    for (const Decision* d : {&n.refprop, &n.number}) {
      for (const auto& f : d->board.fired)
        out << "  " << to_string(d->dimension) << ' ' << f.rule_id << ' ' << score_text(d->dimension, f.scores)
            << '\n';
      if (d->default_used) out << "  " << to_string(d->dimension) << " default\n";
    }
  }
  return out.str();
}

namespace {

using nlohmann::json;

json scores_json(Dimension dim, const std::array<CategoryScore, kCategoryCount>& s) {
  json j = json::object();
  for (std::size_t i = 0; i < kCategoryCount; ++i)
    j[std::string(category_name(dim, i))] = json::array({s[i].possibility, s[i].value});
  return j;
}

json totals_json(Dimension dim, const std::array<int, kCategoryCount>& totals,
                 const std::array<bool, kCategoryCount>& possible) {
  json j = json::object();
  for (std::size_t i = 0; i < kCategoryCount; ++i)
    j[std::string(category_name(dim, i))] = json::array({possible[i] ? 1 : 0, totals[i]});
  return j;
}

}  // namespace

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const auto& n : trace.nouns) {
    for (const Decision* d : {&n.refprop, &n.number}) {
      std::string dim(to_string(d->dimension));
      ScoreBoard running;
      for (const auto& f : d->board.fired) {
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
          running.totals[i] += f.scores[i].value;
          running.possible[i] = running.possible[i] && f.scores[i].possibility == 1;
        }
        json rec = {{"kind", "fire"},
                    {"noun", n.noun_id},
                    {"lemma", n.lemma},
                    {"dimension", dim},
                    {"rule", f.rule_id},
                    {"scores", scores_json(d->dimension, f.scores)},
                    {"totals", totals_json(d->dimension, running.totals, running.possible)}};
        out += rec.dump() + '\n';
      }
      json rec = {{"kind", "decision"},
                  {"noun", n.noun_id},
                  {"lemma", n.lemma},
                  {"dimension", dim},
                  {"chosen", std::string(d->category())},
                  {"default", d->default_used},
                  {"totals", totals_json(d->dimension, d->board.totals, d->board.possible)}};
      out += rec.dump() + '\n';
    }
  }
  return out;
}

Trace trace_from_jsonl(std::string_view text) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
      std::string noun = rec.at("noun");
      auto dim = parse_dimension(rec.at("dimension").get<std::string>());
      if (!dim) fail("bad dimension");
      if (trace.nouns.empty() || trace.nouns.back().noun_id != noun) {
        NounTrace n;
        n.noun_id = noun;
        n.lemma = rec.at("lemma");
        n.refprop.dimension = Dimension::refprop;
        n.refprop.board.dimension = Dimension::refprop;
        n.number.dimension = Dimension::number;
        n.number.board.dimension = Dimension::number;
        trace.nouns.push_back(std::move(n));
      }
      Decision& d = *dim == Dimension::refprop ? trace.nouns.back().refprop : trace.nouns.back().number;
      std::string kind = rec.at("kind");
      if (kind == "fire") {
        FiredRule f;
        f.rule_id = rec.at("rule");
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
          const auto& pair = rec.at("scores").at(std::string(category_name(*dim, i)));
          f.scores[i] = {pair.at(0).get<int>(), pair.at(1).get<int>()};
        }
        d.board.fired.push_back(std::move(f));
      } else if (kind == "decision") {
        auto chosen = category_index(*dim, rec.at("chosen").get<std::string>());
        if (!chosen) fail("bad category");
        d.chosen = *chosen;
        d.default_used = rec.at("default").get<bool>();
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
          const auto& pair = rec.at("totals").at(std::string(category_name(*dim, i)));
          d.board.possible[i] = pair.at(0).get<int>() == 1;
          d.board.totals[i] = pair.at(1).get<int>();
        }
      } else {
        fail("unknown record kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      fail(e.what());
    }
  }
  return trace;
}

}  // namespace refnum
