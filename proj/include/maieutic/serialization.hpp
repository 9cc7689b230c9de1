#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "maieutic/core.hpp"
#include "maieutic/tree.hpp"

namespace maieutic {

void to_json(nlohmann::json& j, const Demonstration& d);
void from_json(const nlohmann::json& j, Demonstration& d);
void to_json(nlohmann::json& j, const PromptSet& p);
void from_json(const nlohmann::json& j, PromptSet& p);
void to_json(nlohmann::json& j, const DecodingParams& d);
void from_json(const nlohmann::json& j, DecodingParams& d);
void to_json(nlohmann::json& j, const TreeConfig& c);
void from_json(const nlohmann::json& j, TreeConfig& c);
void to_json(nlohmann::json& j, const Proposition& p);
void from_json(const nlohmann::json& j, Proposition& p);

std::string path_label_string(const std::vector<Label>& path);
std::vector<Label> parse_path_label(std::string_view text);

// Tree schema: {root, nodes: [...], edges: [{parent, label, child}], config}.
nlohmann::json tree_to_json(const MaieuticTree& tree);
MaieuticTree tree_from_json(const nlohmann::json& j);

// Graphviz rendering. Nodes are colored by `values` when given
// (green = true, red = false), grey otherwise.
std::string tree_to_dot(const MaieuticTree& tree, const std::map<NodeId, bool>* values = nullptr,
                        std::size_t label_width = 40);

PromptSet load_prompt_set(const std::string& path);

}  // namespace maieutic
