#include "support/paths.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace refnum::testing {

namespace fs = std::filesystem;

std::string fixtures_dir() { return REFNUM_FIXTURES_DIR; }
std::string test_data_dir() { return REFNUM_TEST_DATA_DIR; }
std::string rules_dir() { return REFNUM_RULES_SOURCE_DIR; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document fixture(const std::string& name) {
  return parse_document(read_text(fixtures_dir() + "/" + name + ".tree"), name);
}

std::vector<Document> fixture_corpus() {
  std::vector<Document> docs;
  std::istringstream manifest(read_text(fixtures_dir() + "/corpus.manifest"));
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line.front() == '#') continue;
    docs.push_back(fixture(fs::path(line).stem().string()));
  }
  return docs;
}

RulePack pack_file(const std::string& path) { return parse_rules(read_text(path)); }

RulePack starter_pack(Dimension d) { return pack_file(rules_dir() + "/" + std::string(to_string(d)) + ".rules"); }

}  // namespace refnum::testing
