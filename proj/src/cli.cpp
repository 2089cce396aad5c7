#include "refnum/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "refnum/engine.hpp"
#include "refnum/eval.hpp"
#include "refnum/rules.hpp"
#include "refnum/tree.hpp"

#ifndef REFNUM_DEFAULT_RULES_DIR
#define REFNUM_DEFAULT_RULES_DIR "rules"
#endif

namespace refnum {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An error already prefixed with the file it came from.
struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("write failed for '" + path + "'");
}

struct Source {
  std::string path;
  std::optional<std::string> doc_id;
};

std::vector<Source> manifest_sources(const std::string& manifest) {
  std::vector<Source> out;
  fs::path base = fs::path(manifest).parent_path();
  std::istringstream in(read_file(manifest));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    Source s;
    auto tab = line.find('\t');
    std::string path = line;
    if (tab != std::string::npos) {
      s.doc_id = line.substr(0, tab);
      path = line.substr(tab + 1);
    }
    fs::path p(path);
    s.path = (p.is_absolute() ? p : base / p).string();
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Document> load_documents(const RunConfig& cfg) {
  std::vector<Source> sources;
  if (cfg.manifest) sources = manifest_sources(*cfg.manifest);
  for (const auto& p : cfg.inputs) sources.push_back({p, std::nullopt});
  if (sources.empty()) throw UsageError("no input documents");

  std::vector<Document> docs;
  for (const auto& src : sources) {
    std::string text = read_file(src.path);
    std::string id = src.doc_id ? *src.doc_id : fs::path(src.path).stem().string();
    try {
      auto set = parse_document_set(text, id);
      if (src.doc_id && set.size() == 1) set.front().id = *src.doc_id;
      for (auto& d : set) docs.push_back(std::move(d));
    } catch (const ParseError& e) {
      throw Failure(exit_code::input, src.path + ": " + e.what());
    }
  }
  return docs;
}

RulePack load_pack(const std::optional<std::string>& path, Dimension expected) {
  std::string file = path ? *path : (fs::path(default_rules_dir()) / (std::string(to_string(expected)) + ".rules")).string();
  RulePack pack;
  try {
    pack = parse_rules(read_file(file));
  } catch (const RuleError& e) {
    throw Failure(exit_code::rules, file + ": " + e.what());
  }
  if (pack.target != expected)
    throw Failure(exit_code::rules, file + ": expected a " + std::string(to_string(expected)) + " pack");
  return pack;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out)
    write_file(*cfg.out, text);
  else
    out << text;
}

std::string annotated_text(const std::vector<Document>& docs, const RunConfig& cfg) {
  bool plain = docs.size() == 1 && cfg.inputs.size() == 1 && !cfg.manifest &&
               docs.front().id == fs::path(cfg.inputs.front()).stem().string();
  return plain ? serialize_document(docs.front(), true) : serialize_document_set(docs, true);
}

Trace annotate_all(std::vector<Document>& docs, const RulePack& refprop, const RulePack& number) {
  Trace all;
  for (auto& d : docs) {
    Trace t = annotate_document(d, refprop, number);
    for (auto& n : t.nouns) all.nouns.push_back(std::move(n));
  }
  return all;
}

void write_traces(const RunConfig& cfg, const Trace& trace) {
  if (cfg.trace) write_file(*cfg.trace, trace_to_jsonl(trace));
  if (cfg.trace_text) write_file(*cfg.trace_text, trace_to_text(trace, cfg.trace_level == TraceLevel::rules));
}

int run_annotate(const RunConfig& cfg, std::ostream& out) {
  auto docs = load_documents(cfg);
  RulePack refprop = load_pack(cfg.rules_refprop, Dimension::refprop);
  RulePack number = load_pack(cfg.rules_number, Dimension::number);
  Trace trace = annotate_all(docs, refprop, number);
  emit(cfg, out, annotated_text(docs, cfg));
  write_traces(cfg, trace);
  if (cfg.emit_gold) write_file(*cfg.emit_gold, serialize_gold(gold_from_annotations(docs)));
  return exit_code::ok;
}

int run_eval(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.gold) throw UsageError("eval requires --gold");
  auto docs = load_documents(cfg);
  RulePack refprop = load_pack(cfg.rules_refprop, Dimension::refprop);
  RulePack number = load_pack(cfg.rules_number, Dimension::number);
  std::vector<GoldRecord> gold;
  try {
    gold = parse_gold(read_file(*cfg.gold));
  } catch (const GoldError& e) {
    throw Failure(exit_code::gold, *cfg.gold + ": " + e.what());
  }
  Trace trace = annotate_all(docs, refprop, number);
  Evaluation ev = evaluate(docs, gold);
  write_traces(cfg, trace);
  std::string text = cfg.format == TableFormat::tsv
                         ? render_delimited(ev.refprop) + '\n' + render_delimited(ev.number)
                         : render_table(ev.refprop) + '\n' + render_table(ev.number);
  emit(cfg, out, text);
  return exit_code::ok;
}

int run_lint(const RunConfig& cfg, std::ostream& out) {
  auto docs = load_documents(cfg);
  RulePack refprop = load_pack(cfg.rules_refprop, Dimension::refprop);
  RulePack number = load_pack(cfg.rules_number, Dimension::number);
  std::string text = "# refprop " + refprop.version + '\n' + lint_rules(refprop, docs).to_text();
  text += "\n# number " + number.version + '\n' + lint_rules(number, docs, &refprop).to_text();
  emit(cfg, out, text);
  return exit_code::ok;
}

int run_explain(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.trace) throw UsageError("explain requires --trace from a previous annotate run");
  Trace trace = trace_from_jsonl(read_file(*cfg.trace));
  std::string text;
  if (cfg.noun_ids.empty()) {
    for (const auto& n : trace.nouns) text += (text.empty() ? "" : "\n") + explain(n);
  } else {
    for (const auto& id : cfg.noun_ids) {
      try {
        text += (text.empty() ? "" : "\n") + explain(trace, id);
      } catch (const UnknownNounError& e) {
        throw UsageError(e.what());
      }
    }
  }
  emit(cfg, out, text);
  return exit_code::ok;
}

}  // namespace

std::string default_rules_dir() {
  if (const char* env = std::getenv("REFNUM_RULES_DIR"); env && *env) return env;
  return REFNUM_DEFAULT_RULES_DIR;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.mode) {
      case Mode::annotate: return run_annotate(cfg, out);
      case Mode::eval: return run_eval(cfg, out);
      case Mode::lint: return run_lint(cfg, out);
      case Mode::explain: return run_explain(cfg, out);
    }
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::input;
  } catch (const RuleError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::rules;
  } catch (const AlignmentError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::gold;
  } catch (const std::runtime_error& e) {
    // malformed trace dumps
    err << "error: " << e.what() << '\n';
    return exit_code::input;
  }
  return exit_code::usage;
}

}  // namespace refnum
