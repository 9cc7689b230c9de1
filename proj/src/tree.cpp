#include "maieutic/tree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "maieutic/error.hpp"

namespace maieutic {

namespace {

const std::vector<ChildLink> kNoChildren;

NodeId child_id(const NodeId& parent, Label label, int index) {
  std::string id = parent == MaieuticTree::kRootId ? std::string() : parent + ".";
  id += label_char(label);
  id += '.';
  id += std::to_string(index);
  return id;
}

}  // namespace

MaieuticTree::MaieuticTree(Proposition root, TreeConfig config) : config_(std::move(config)) {
  if (root.text.empty()) throw std::invalid_argument("root proposition has empty text");
  root.id = kRootId;
  root.path_label.clear();
  root.source_answer.reset();
  nodes_.emplace(kRootId, std::move(root));
  children_[kRootId];
}

const Proposition& MaieuticTree::node(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no tree node " + id);
  return it->second;
}

Proposition& MaieuticTree::mutable_node(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no tree node " + id);
  return it->second;
}

const std::vector<ChildLink>& MaieuticTree::children(const NodeId& id) const {
  auto it = children_.find(id);
  return it == children_.end() ? kNoChildren : it->second;
}

std::optional<NodeId> MaieuticTree::parent(const NodeId& id) const {
  auto it = parent_.find(id);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

NodeId MaieuticTree::add_child(const NodeId& parent, Label label, Proposition child) {
  const Proposition& parent_node = node(parent);
  auto& counters = next_index_[parent];
  int& counter = label == Label::True ? counters.first : counters.second;
  child.id = child_id(parent, label, counter++);
  child.path_label = parent_node.path_label;
  child.path_label.push_back(label);
  child.source_answer = label;
  NodeId id = child.id;
  insert_child(parent, label, std::move(child));
  return id;
}

void MaieuticTree::insert_child(const NodeId& parent, Label label, Proposition child) {
  if (!contains(parent)) throw std::out_of_range("no tree node " + parent);
  if (child.text.empty()) throw std::invalid_argument("child proposition has empty text");
  if (contains(child.id)) throw Error(ErrorCode::InvalidTree, "duplicate node id " + child.id);
  const auto& parent_path = node(parent).path_label;
  if (child.path_label.size() != parent_path.size() + 1 || child.path_label.back() != label ||
      !std::equal(parent_path.begin(), parent_path.end(), child.path_label.begin())) {
    throw Error(ErrorCode::InvalidTree, "path label of " + child.id + " does not extend its parent");
  }
  if (child.source_answer && *child.source_answer != label) {
    throw Error(ErrorCode::InvalidTree, "source answer of " + child.id + " disagrees with its edge");
  }
  child.source_answer = label;
  NodeId id = child.id;
  nodes_.emplace(id, std::move(child));
  children_[parent].push_back({label, id});
  children_[id];
  parent_[id] = parent;
}

void MaieuticTree::remove_leaf(const NodeId& id) {
  if (id == kRootId) throw std::invalid_argument("cannot remove the root");
  if (!is_leaf(id)) throw std::invalid_argument("node " + id + " is not a leaf");
  const NodeId parent_id = parent_.at(id);
  auto& siblings = children_.at(parent_id);
  std::erase_if(siblings, [&](const ChildLink& link) { return link.child == id; });
  children_.erase(id);
  parent_.erase(id);
  nodes_.erase(id);
}

void MaieuticTree::validate() const {
  std::set<NodeId> seen;
  std::function<void(const NodeId&)> visit = [&](const NodeId& id) {
    if (!seen.insert(id).second) throw Error(ErrorCode::InvalidTree, "cycle through " + id);
    const Proposition& p = node(id);
    if (p.text.empty()) throw Error(ErrorCode::InvalidTree, "empty text at " + id);
    if (p.integrity != Integrity::Unchecked && p.negated_text.empty()) {
      throw Error(ErrorCode::InvalidTree, "checked node without negation at " + id);
    }
    if (p.integrity == Integrity::IntegralTrue && !(p.belief && *p.belief > 0)) {
      throw Error(ErrorCode::InvalidTree, "IntegralTrue node without positive belief at " + id);
    }
    if (p.integrity == Integrity::IntegralFalse && !(p.belief && *p.belief < 0)) {
      throw Error(ErrorCode::InvalidTree, "IntegralFalse node without negative belief at " + id);
    }
    for (const auto& link : children(id)) {
      if (parent(link.child) != id) throw Error(ErrorCode::InvalidTree, "bad parent link " + link.child);
      if (node(link.child).depth() != p.depth() + 1) {
        throw Error(ErrorCode::InvalidTree, "depth mismatch at " + link.child);
      }
      visit(link.child);
    }
  };
  if (!root().path_label.empty()) throw Error(ErrorCode::InvalidTree, "root has a path label");
  visit(kRootId);
  if (seen.size() != nodes_.size()) throw Error(ErrorCode::InvalidTree, "unreachable nodes");
}

bool MaieuticTree::operator==(const MaieuticTree& other) const {
  return nodes_ == other.nodes_ && children_ == other.children_ && parent_ == other.parent_ &&
         config_ == other.config_;
}

std::vector<NodeId> tree_node_ids(const MaieuticTree& tree) {
  std::vector<NodeId> out;
  out.reserve(tree.size());
  std::vector<NodeId> stack{MaieuticTree::kRootId};
  while (!stack.empty()) {
    NodeId id = std::move(stack.back());
    stack.pop_back();
    const auto& kids = tree.children(id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(it->child);
    out.push_back(std::move(id));
  }
  return out;
}

std::vector<Proposition> tree_nodes(const MaieuticTree& tree) {
  std::vector<Proposition> out;
  for (const auto& id : tree_node_ids(tree)) out.push_back(tree.node(id));
  return out;
}

std::vector<Proposition> tree_leaves(const MaieuticTree& tree) {
  std::vector<Proposition> out;
  for (const auto& id : tree_node_ids(tree)) {
    if (tree.is_leaf(id)) out.push_back(tree.node(id));
  }
  return out;
}

std::vector<Edge> tree_edges(const MaieuticTree& tree) {
  std::vector<Edge> out;
  for (const auto& id : tree_node_ids(tree)) {
    if (auto parent = tree.parent(id)) {
      out.push_back({*parent, *tree.node(id).source_answer, id});
    }
  }
  return out;
}

}  // namespace maieutic
