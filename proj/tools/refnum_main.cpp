#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "refnum/cli.hpp"

int main(int argc, char** argv) {
  using namespace refnum;

  CLI::App app{"refnum: referential property and number annotation for Japanese noun phrases"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string trace_level = "rules";
  std::string format = "text";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--rules-refprop", cfg.rules_refprop, "refprop rule pack");
    sub->add_option("--rules-number", cfg.rules_number, "number rule pack");
    sub->add_option("--manifest", cfg.manifest, "file listing input trees, one [doc-id<TAB>]path per line");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };
  auto traced = [&](CLI::App* sub) {
    sub->add_option("--trace", cfg.trace, "write a JSON Lines trace");
    sub->add_option("--trace-text", cfg.trace_text, "write a plain text trace");
    sub->add_option("--trace-level", trace_level, "decisions | rules")
        ->check(CLI::IsMember({"decisions", "rules"}));
  };

  auto* annotate = app.add_subcommand("annotate", "annotate noun phrases in tree files");
  common(annotate);
  traced(annotate);
  annotate->add_option("--emit-gold", cfg.emit_gold, "write the decisions as a gold file");
  annotate->add_option("inputs", cfg.inputs, "tree files");

  auto* eval = app.add_subcommand("eval", "annotate and score against gold labels");
  common(eval);
  traced(eval);
  eval->add_option("--gold", cfg.gold, "gold file")->required();
  eval->add_option("--format", format, "text | tsv")->check(CLI::IsMember({"text", "tsv"}));
  eval->add_option("inputs", cfg.inputs, "tree files");

  auto* lint = app.add_subcommand("lint", "check rule packs against fixture trees");
  common(lint);
  lint->add_option("inputs", cfg.inputs, "fixture tree files");

  auto* explain = app.add_subcommand("explain", "show the rules behind each decision");
  explain->add_option("--trace", cfg.trace, "JSON Lines trace from annotate")->required();
  explain->add_option("--out", cfg.out, "output file (default: stdout)");
  explain->add_option("nouns", cfg.noun_ids, "noun ids (doc:sentence:k); default all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  static const std::map<CLI::App*, Mode> modes{
      {annotate, Mode::annotate}, {eval, Mode::eval}, {lint, Mode::lint}, {explain, Mode::explain}};
  cfg.mode = modes.at(app.get_subcommands().front());
  cfg.trace_level = trace_level == "decisions" ? TraceLevel::decisions : TraceLevel::rules;
  cfg.format = format == "tsv" ? TableFormat::tsv : TableFormat::text;
  return run(cfg, std::cout, std::cerr);
}
