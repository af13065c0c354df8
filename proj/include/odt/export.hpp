#pragma once
// Tree and run serialization: JSON (re-evaluable without the rule stream),
// Graphviz DOT, and file helpers.
#include <cstdint>
#include <string>

#include "json.hpp"
#include "odt/core.hpp"
#include "odt/trees.hpp"

namespace odt::io {

// Nodes carry full rule metadata (kind, dim/threshold or degree/normal, and
// defining indices); leaves carry their exact index lists and labels.
// Field order is fixed, so equal trees serialize to identical bytes.
nlohmann::ordered_json tree_to_json(const DTree& t, const trees::RuleAt& rule_at,
                                    const Dataset& ds);

std::string tree_to_dot(const DTree& t, const trees::RuleAt& rule_at, const Dataset& ds);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
uint64_t file_hash(const std::string& path);  // FNV-1a over the raw bytes

}  // namespace odt::io
