#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maieutic/core.hpp"

namespace maieutic {

struct ChildLink {
  Label label;
  NodeId child;

  bool operator==(const ChildLink&) const = default;
};

struct Edge {
  NodeId parent;
  Label label;
  NodeId child;

  bool operator==(const Edge&) const = default;
};

// Rooted tree of propositions. Child ids are derived from the path label plus
// a per-label sibling index ("T.0", "F.1", "T.0.F.0"); the root is "root".
class MaieuticTree {
 public:
  static constexpr const char* kRootId = "root";

  MaieuticTree(Proposition root, TreeConfig config = {});

  const Proposition& root() const { return nodes_.at(kRootId); }
  const Proposition& node(const NodeId& id) const;
  Proposition& mutable_node(const NodeId& id);
  bool contains(const NodeId& id) const { return nodes_.count(id) != 0; }

  const std::vector<ChildLink>& children(const NodeId& id) const;
  std::optional<NodeId> parent(const NodeId& id) const;
  bool is_leaf(const NodeId& id) const { return children(id).empty(); }

  // Assigns id, path_label and source_answer; returns the new id.
  NodeId add_child(const NodeId& parent, Label label, Proposition child);
  // Inserts a child whose id and path_label are already set (deserialization).
  void insert_child(const NodeId& parent, Label label, Proposition child);
  // Removes a non-root leaf.
  void remove_leaf(const NodeId& id);

  std::size_t size() const { return nodes_.size(); }
  const TreeConfig& config() const { return config_; }

  // Throws Error(InvalidTree) when a structural invariant is broken.
  void validate() const;

  bool operator==(const MaieuticTree& other) const;

 private:
  std::map<NodeId, Proposition> nodes_;
  std::map<NodeId, std::vector<ChildLink>> children_;
  std::map<NodeId, NodeId> parent_;
  // Next sibling index per (parent, label); never reused after removals.
  std::map<NodeId, std::pair<int, int>> next_index_;
  TreeConfig config_;
};

// Pre-order traversal, root first, children in insertion order.
std::vector<Proposition> tree_nodes(const MaieuticTree& tree);
std::vector<NodeId> tree_node_ids(const MaieuticTree& tree);
// Nodes without children; the root only when it is childless.
std::vector<Proposition> tree_leaves(const MaieuticTree& tree);
// Edges in pre-order of their child.
std::vector<Edge> tree_edges(const MaieuticTree& tree);

}  // namespace maieutic
