#include <gtest/gtest.h>

#include <random>
#include <set>

#include "maieutic/cnf.hpp"
#include "maieutic/digest.hpp"
#include "maieutic/parallel.hpp"
#include "maieutic/serialization.hpp"
#include "maieutic/tree.hpp"
#include "test_support.hpp"

using namespace maieutic;
using testing_support::error_code_of;

namespace {

Proposition prop(std::string text) {
  Proposition p;
  p.text = std::move(text);
  return p;
}

Proposition checked(std::string text, double pt, double pn) {
  Proposition p = prop(std::move(text));
  p.negated_text = "not " + p.text;
  p.true_prob = pt;
  p.neg_true_prob = pn;
  if (pt > 0.5 && pn < 0.5) {
    p.integrity = Integrity::IntegralTrue;
  } else if (pt < 0.5 && pn > 0.5) {
    p.integrity = Integrity::IntegralFalse;
  } else {
    p.integrity = Integrity::NotIntegral;
  }
  if (p.integral()) p.belief = (pt - pn) / (pt + pn);
  return p;
}

MaieuticTree sample_tree() {
  MaieuticTree tree(prop("Q"));
  const auto t0 = tree.add_child("root", Label::True, prop("E_T"));
  tree.add_child(t0, Label::True, prop("E_TT"));
  tree.add_child(t0, Label::False, prop("E_TF"));
  tree.add_child("root", Label::False, prop("E_F"));
  tree.add_child("root", Label::True, prop("E_T2"));
  return tree;
}

// Random tree with checked propositions on every node.
MaieuticTree random_tree(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::uniform_int_distribution<int> fanout(0, 3);
  MaieuticTree tree(checked("root question", u(rng), u(rng)));
  std::vector<NodeId> frontier{"root"};
  int n = 0;
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<NodeId> next;
    for (const auto& id : frontier) {
      const int k = fanout(rng);
      for (int i = 0; i < k; ++i) {
        const auto label = i % 2 == 0 ? Label::True : Label::False;
        next.push_back(tree.add_child(id, label, checked("node " + std::to_string(n++), u(rng), u(rng))));
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

}  // namespace

TEST(Label, RoundTripsThroughStrings) {
  EXPECT_EQ(to_string(Label::True), "True");
  EXPECT_EQ(label_from_string("False"), Label::False);
  EXPECT_EQ(opposite(Label::True), Label::False);
  EXPECT_EQ(label_char(Label::False), 'F');
  EXPECT_EQ(label_from_string("true"), Label::True);
  EXPECT_THROW(label_from_string("yes"), std::invalid_argument);
}

TEST(Error, MessageCarriesCode) {
  Error e(ErrorCode::EmptyTree, "nothing left");
  EXPECT_STREQ(e.what(), "EmptyTree: nothing left");
  ParseError pe(7, "bad token");
  EXPECT_EQ(pe.line(), 7u);
  EXPECT_EQ(pe.code(), ErrorCode::ParseError);
}

TEST(TreeConfig, DefaultScheduleBoundsTheTree) {
  TreeConfig config;
  EXPECT_EQ(config.max_nodes(), 19u);
  EXPECT_EQ(config.decoding_at(1).strategy, DecodingStrategy::Nucleus);
  EXPECT_EQ(config.decoding_at(1).sample_count, 3);
  EXPECT_DOUBLE_EQ(config.decoding_at(1).nucleus_p, 1.0);
  EXPECT_EQ(config.decoding_at(2).strategy, DecodingStrategy::Greedy);
  EXPECT_EQ(config.decoding_at(2).sample_count, 1);
  EXPECT_EQ(config.width_at(5), 1);
  EXPECT_NO_THROW(config.validate());
}

TEST(TreeConfig, RejectsInconsistentSchedules) {
  TreeConfig config;
  config.width_schedule = {3, 2};  // greedy at depth 2 cannot give two samples
  EXPECT_EQ(error_code_of([&] { config.validate(); }), ErrorCode::InvalidConfig);
  config = TreeConfig{};
  config.depth_limit = 0;
  EXPECT_EQ(error_code_of([&] { config.validate(); }), ErrorCode::InvalidConfig);
  config = TreeConfig{};
  config.decoding_schedule[0].nucleus_p = 0.0;
  EXPECT_EQ(error_code_of([&] { config.validate(); }), ErrorCode::InvalidConfig);
}

TEST(PromptSet, ExplanationsMustMatchMode) {
  PromptSet set{PromptMode::QaPairs, {{"Is ice cold", std::nullopt, Label::True}}};
  EXPECT_NO_THROW(set.validate());
  set.examples[0].explanation = "Ice is frozen water.";
  EXPECT_EQ(error_code_of([&] { set.validate(); }), ErrorCode::InvalidConfig);
  set.mode = PromptMode::AbductiveTriples;
  EXPECT_NO_THROW(set.validate());
  set.examples.clear();
  EXPECT_EQ(error_code_of([&] { set.validate(); }), ErrorCode::InvalidConfig);
}

TEST(MaieuticTree, AssignsPathIds) {
  const auto tree = sample_tree();
  EXPECT_EQ(tree_node_ids(tree), (std::vector<NodeId>{"root", "T.0", "T.0.T.0", "T.0.F.0", "F.0", "T.1"}));
  EXPECT_EQ(tree.node("T.0.F.0").path_label, (std::vector<Label>{Label::True, Label::False}));
  EXPECT_EQ(tree.node("T.0.F.0").source_answer, Label::False);
  EXPECT_EQ(tree.node("T.0.F.0").depth(), 2u);
  EXPECT_EQ(tree.parent("T.0.T.0"), "T.0");
  EXPECT_FALSE(tree.parent("root").has_value());
}

TEST(MaieuticTree, LeavesAndEdgesInPreOrder) {
  const auto tree = sample_tree();
  std::vector<NodeId> leaves;
  for (const auto& p : tree_leaves(tree)) leaves.push_back(p.id);
  EXPECT_EQ(leaves, (std::vector<NodeId>{"T.0.T.0", "T.0.F.0", "F.0", "T.1"}));
  const auto edges = tree_edges(tree);
  ASSERT_EQ(edges.size(), 5u);
  EXPECT_EQ(edges[0], (Edge{"root", Label::True, "T.0"}));
  EXPECT_EQ(edges[2], (Edge{"T.0", Label::False, "T.0.F.0"}));
  EXPECT_EQ(edges[3], (Edge{"root", Label::False, "F.0"}));
}

TEST(MaieuticTree, RootOnlyTreeIsItsOwnLeaf) {
  MaieuticTree tree(prop("Q"));
  ASSERT_EQ(tree_leaves(tree).size(), 1u);
  EXPECT_TRUE(tree_edges(tree).empty());
}

TEST(MaieuticTree, RemovalKeepsSiblingIndicesUnique) {
  auto tree = sample_tree();
  tree.remove_leaf("T.1");
  EXPECT_EQ(tree.add_child("root", Label::True, prop("again")), "T.2");
  EXPECT_THROW(tree.remove_leaf("T.0"), std::invalid_argument);
  EXPECT_THROW(tree.remove_leaf("root"), std::invalid_argument);
  EXPECT_THROW(tree.add_child("nope", Label::True, prop("x")), std::out_of_range);
  EXPECT_THROW(tree.add_child("root", Label::True, prop("")), std::invalid_argument);
}

TEST(Serialization, TreeJsonRoundTrips) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto tree = random_tree(rng);
    tree.validate();
    const auto j = tree_to_json(tree);
    const auto back = tree_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_TRUE(back == tree);
    EXPECT_EQ(tree_to_json(back).dump(), j.dump());
  }
}

TEST(Serialization, RejectsBrokenTrees) {
  auto j = tree_to_json(sample_tree());
  auto dangling = j;
  dangling["edges"].push_back({{"parent", "T.9"}, {"label", "True"}, {"child", "T.9.T.0"}});
  EXPECT_EQ(error_code_of([&] { tree_from_json(dangling); }), ErrorCode::InvalidTree);

  auto orphan = j;
  orphan["edges"].erase(orphan["edges"].begin() + 4);
  EXPECT_EQ(error_code_of([&] { tree_from_json(orphan); }), ErrorCode::InvalidTree);

  auto wrong_label = j;
  for (auto& e : wrong_label["edges"]) {
    if (e["child"] == "F.0") e["label"] = "True";
  }
  EXPECT_EQ(error_code_of([&] { tree_from_json(wrong_label); }), ErrorCode::InvalidTree);
}

TEST(Serialization, PathLabelString) {
  EXPECT_EQ(path_label_string({Label::True, Label::False}), "TF");
  EXPECT_EQ(parse_path_label("FT"), (std::vector<Label>{Label::False, Label::True}));
  EXPECT_THROW(parse_path_label("TX"), std::invalid_argument);
}

TEST(Serialization, DotColorsAssignedNodes) {
  const auto tree = sample_tree();
  std::map<NodeId, bool> values{{"root", true}, {"F.0", false}};
  const auto dot = tree_to_dot(tree, &values);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("palegreen"), std::string::npos);
  EXPECT_NE(dot.find("lightpink"), std::string::npos);
  EXPECT_NE(dot.find("lightgrey"), std::string::npos);
}

TEST(Serialization, TreeConfigRoundTrips) {
  TreeConfig config;
  config.depth_limit = 3;
  config.width_schedule = {2, 2, 1};
  config.decoding_schedule = {DecodingParams::nucleus(0.9, 2), DecodingParams::nucleus(0.5, 2),
                              DecodingParams::greedy()};
  nlohmann::json j = config;
  EXPECT_EQ(j.get<TreeConfig>(), config);
}

TEST(WeightedCnf, RejectsMalformedClauses) {
  WeightedCnf cnf;
  const auto a = cnf.add_variable("a");
  const auto b = cnf.add_variable("b");
  EXPECT_THROW(cnf.add_variable("a"), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({{}, 1.0}), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({{{a, true}, {a, false}}, 1.0}), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({{{5, true}}, 1.0}), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({{{b, true}}, 0.0}), std::invalid_argument);
  EXPECT_THROW(cnf.add_clause({{{b, true}}, std::nan("")}), std::invalid_argument);
  cnf.add_clause({{{a, false}, {b, true}}, 0.5, ClauseOrigin::Nli});
  EXPECT_DOUBLE_EQ(cnf.total_weight(), 0.5);
  const auto dump = clauses_to_json(cnf);
  EXPECT_EQ(dump[0]["literals"][0]["node"], "a");
  EXPECT_EQ(dump[0]["literals"][0]["positive"], false);
  EXPECT_EQ(dump[0]["origin"], "Nli");
}

TEST(Digest, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(json_digest(nlohmann::json{{"b", 1}, {"a", 2}}), json_digest(nlohmann::json{{"a", 2}, {"b", 1}}));
}

TEST(ParallelMap, KeepsIndexOrderAndLowestError) {
  const auto squares = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) EXPECT_EQ(squares[i], static_cast<int>(i * i));
  try {
    parallel_map<int>(20, 4, [](std::size_t i) -> int {
      if (i == 3 || i == 15) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "3");
  }
}
