#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace refnum {

enum class Mode { annotate, eval, lint, explain };
enum class TraceLevel { decisions, rules };
enum class TableFormat { text, tsv };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;  // bad arguments or unreadable files
inline constexpr int input = 2;  // tree or trace parse failure
inline constexpr int rules = 3;  // rule pack failure
inline constexpr int gold = 4;   // gold file or alignment failure
}  // namespace exit_code

struct RunConfig {
  Mode mode = Mode::annotate;
  std::vector<std::string> inputs;  // tree files
  std::optional<std::string> manifest;
  std::optional<std::string> rules_refprop;
  std::optional<std::string> rules_number;
  std::optional<std::string> gold;
  std::optional<std::string> trace;  // JSONL; written by annotate/eval, read by explain
  std::optional<std::string> trace_text;
  TraceLevel trace_level = TraceLevel::rules;
  std::optional<std::string> out;
  TableFormat format = TableFormat::text;
  std::optional<std::string> emit_gold;  // annotate only
  std::vector<std::string> noun_ids;     // explain; empty means every noun
};

/// Directory searched for refprop.rules and number.rules when no pack path
/// is given: $REFNUM_RULES_DIR, else the directory compiled in.
std::string default_rules_dir();

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace refnum
