#pragma once

#include <string>
#include <vector>

#include "refnum/rules.hpp"
#include "refnum/tree.hpp"

namespace refnum::testing {

std::string fixtures_dir();
std::string test_data_dir();
std::string rules_dir();

std::string read_text(const std::string& path);

/// Documents listed in the fixture manifest, in manifest order.
std::vector<Document> fixture_corpus();
Document fixture(const std::string& name);

RulePack starter_pack(Dimension d);
RulePack pack_file(const std::string& path);

}  // namespace refnum::testing
