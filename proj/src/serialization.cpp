#include "maieutic/serialization.hpp"

#include <fstream>
#include <sstream>

#include "maieutic/error.hpp"

namespace maieutic {

using nlohmann::json;

namespace {

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_double(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string escape_dot(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void to_json(json& j, const Demonstration& d) {
  j = json{{"question", d.question}, {"answer", to_string(d.answer)}};
  if (d.explanation) j["explanation"] = *d.explanation;
}

void from_json(const json& j, Demonstration& d) {
  d.question = j.at("question").get<std::string>();
  d.answer = label_from_string(j.at("answer").get<std::string>());
  if (j.contains("explanation") && !j.at("explanation").is_null()) {
    d.explanation = j.at("explanation").get<std::string>();
  } else {
    d.explanation.reset();
  }
}

void to_json(json& j, const PromptSet& p) {
  j = json{{"mode", to_string(p.mode)}, {"examples", p.examples}};
}

void from_json(const json& j, PromptSet& p) {
  p.mode = prompt_mode_from_string(j.at("mode").get<std::string>());
  p.examples = j.at("examples").get<std::vector<Demonstration>>();
}

void to_json(json& j, const DecodingParams& d) {
  j = json{{"strategy", to_string(d.strategy)},
           {"nucleus_p", d.nucleus_p},
           {"max_tokens", d.max_tokens},
           {"stop_sequences", d.stop_sequences},
           {"sample_count", d.sample_count}};
}

void from_json(const json& j, DecodingParams& d) {
  d = DecodingParams{};
  d.strategy = decoding_strategy_from_string(j.at("strategy").get<std::string>());
  d.nucleus_p = j.value("nucleus_p", 1.0);
  d.max_tokens = j.value("max_tokens", d.max_tokens);
  if (j.contains("stop_sequences")) d.stop_sequences = j.at("stop_sequences").get<std::vector<std::string>>();
  d.sample_count = j.value("sample_count", 1);
}

void to_json(json& j, const TreeConfig& c) {
  j = json{{"depth_limit", c.depth_limit},
           {"width_schedule", c.width_schedule},
           {"decoding_schedule", c.decoding_schedule},
           {"negation_strategy", to_string(c.negation_strategy)}};
}

void from_json(const json& j, TreeConfig& c) {
  c = TreeConfig{};
  c.depth_limit = j.value("depth_limit", c.depth_limit);
  if (j.contains("width_schedule")) c.width_schedule = j.at("width_schedule").get<std::vector<int>>();
  if (j.contains("decoding_schedule")) {
    c.decoding_schedule = j.at("decoding_schedule").get<std::vector<DecodingParams>>();
  }
  if (j.contains("negation_strategy")) {
    c.negation_strategy = negation_strategy_from_string(j.at("negation_strategy").get<std::string>());
  }
}

std::string path_label_string(const std::vector<Label>& path) {
  std::string out;
  for (Label l : path) out += label_char(l);
  return out;
}

std::vector<Label> parse_path_label(std::string_view text) {
  std::vector<Label> out;
  for (char c : text) out.push_back(label_from_string(std::string_view(&c, 1)));
  return out;
}

void to_json(json& j, const Proposition& p) {
  j = json{{"id", p.id},
           {"text", p.text},
           {"negated_text", p.negated_text},
           {"path_label", path_label_string(p.path_label)},
           {"source_answer", p.source_answer ? json(to_string(*p.source_answer)) : json(nullptr)},
           {"integrity", to_string(p.integrity)},
           {"belief", optional_to_json(p.belief)},
           {"true_prob", optional_to_json(p.true_prob)},
           {"neg_true_prob", optional_to_json(p.neg_true_prob)}};
}

void from_json(const json& j, Proposition& p) {
  p = Proposition{};
  p.id = j.at("id").get<std::string>();
  p.text = j.at("text").get<std::string>();
  p.negated_text = j.value("negated_text", std::string());
  p.path_label = parse_path_label(j.value("path_label", std::string()));
  if (j.contains("source_answer") && !j.at("source_answer").is_null()) {
    p.source_answer = label_from_string(j.at("source_answer").get<std::string>());
  }
  p.integrity = integrity_from_string(j.value("integrity", std::string("Unchecked")));
  p.belief = optional_double(j, "belief");
  p.true_prob = optional_double(j, "true_prob");
  p.neg_true_prob = optional_double(j, "neg_true_prob");
}

json tree_to_json(const MaieuticTree& tree) {
  json edges = json::array();
  for (const auto& e : tree_edges(tree)) {
    edges.push_back({{"parent", e.parent}, {"label", to_string(e.label)}, {"child", e.child}});
  }
  return json{{"root", MaieuticTree::kRootId},
              {"nodes", tree_nodes(tree)},
              {"edges", std::move(edges)},
              {"config", tree.config()}};
}

MaieuticTree tree_from_json(const json& j) {
  try {
    const auto root_id = j.at("root").get<std::string>();
    std::map<NodeId, Proposition> by_id;
    for (const auto& n : j.at("nodes")) {
      auto p = n.get<Proposition>();
      if (!by_id.emplace(p.id, p).second) throw Error(ErrorCode::InvalidTree, "duplicate node " + p.id);
    }
    auto root_it = by_id.find(root_id);
    if (root_it == by_id.end()) throw Error(ErrorCode::InvalidTree, "root node missing");
    TreeConfig config = j.contains("config") ? j.at("config").get<TreeConfig>() : TreeConfig{};
    MaieuticTree tree(root_it->second, config);
    std::size_t inserted = 1;
    for (const auto& e : j.at("edges")) {
      auto parent = e.at("parent").get<std::string>();
      auto child = e.at("child").get<std::string>();
      if (parent == root_id) parent = MaieuticTree::kRootId;
      auto it = by_id.find(child);
      if (it == by_id.end()) throw Error(ErrorCode::InvalidTree, "edge to unknown node " + child);
      tree.insert_child(parent, label_from_string(e.at("label").get<std::string>()), it->second);
      ++inserted;
    }
    if (inserted != by_id.size()) throw Error(ErrorCode::InvalidTree, "nodes not connected by edges");
    tree.validate();
    return tree;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidTree, ex.what());
  } catch (const std::out_of_range& ex) {
    throw Error(ErrorCode::InvalidTree, ex.what());
  }
}

std::string tree_to_dot(const MaieuticTree& tree, const std::map<NodeId, bool>* values,
                        std::size_t label_width) {
  std::ostringstream out;
  out << "digraph maieutic {\n  node [shape=box, style=filled];\n";
  for (const auto& p : tree_nodes(tree)) {
    std::string label = p.text;
    if (label.size() > label_width) label = label.substr(0, label_width) + "...";
    std::string color = "lightgrey";
    if (values) {
      auto it = values->find(p.id);
      if (it != values->end()) color = it->second ? "palegreen" : "lightpink";
    }
    out << "  \"" << escape_dot(p.id) << "\" [label=\"" << escape_dot(p.id) << "\\n"
        << escape_dot(label) << "\", fillcolor=" << color << "];\n";
  }
  for (const auto& e : tree_edges(tree)) {
    out << "  \"" << escape_dot(e.parent) << "\" -> \"" << escape_dot(e.child) << "\" [label=\""
        << to_string(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

PromptSet load_prompt_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open prompt set " + path);
  PromptSet set;
  try {
    set = json::parse(in).get<PromptSet>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::InvalidConfig, "bad prompt set " + path + ": " + ex.what());
  }
  set.validate();
  return set;
}

}  // namespace maieutic
