#pragma once

#include <string>

#include "json.hpp"
#include "kurepa/core.hpp"
#include "kurepa/treeops.hpp"

namespace kurepa {

// Structure documents are UTF-8 JSON with top-level keys P, L, V, T, F, G and
// optional prec, H, mode. All serializers emit canonical bytes: sorted object
// keys, sorted carrier arrays, two-space indent, trailing newline. Parsing a
// canonical document and re-serializing it reproduces the same bytes.

nlohmann::json structure_to_json(const TauStructure& s);
TauStructure structure_from_json(const nlohmann::json& j);

nlohmann::json tree_to_json(const PrunedTree& t);
PrunedTree tree_from_json(const nlohmann::json& j);

std::string dump_canonical(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

TauStructure load_structure(const std::string& path);
void save_structure(const std::string& path, const TauStructure& s);

PrunedTree load_tree(const std::string& path);
void save_tree(const std::string& path, const PrunedTree& t);

nlohmann::json parse_json_text(const std::string& text, const std::string& origin);

}  // namespace kurepa
