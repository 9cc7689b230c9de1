#include <gtest/gtest.h>

#include <random>
#include <set>

#include "maieutic/serialization.hpp"
#include "maieutic/tree_builder.hpp"
#include "test_support.hpp"

using namespace maieutic;
using namespace maieutic::lm;
using testing_support::error_code_of;

namespace {

const std::string kQ = "Captain Kirk is part of Star Wars.";
const std::string kET = "Captain Kirk appears in a Star Wars crossover comic.";
const std::string kEF = "Captain Kirk is a character in Star Trek.";
const std::string kEFT = "Star Trek and Star Wars are separate franchises.";
const std::string kEFF = "Captain Kirk was created for Star Wars.";

TreeConfig greedy_config() {
  TreeConfig config;
  config.width_schedule = {1, 1};
  config.decoding_schedule = {DecodingParams::greedy(), DecodingParams::greedy()};
  return config;
}

// E_T is integral; E_F is not, so only E_F grows children.
FixtureBuilder kirk_fixtures() {
  const auto g = DecodingParams::greedy();
  FixtureBuilder f;
  f.proposition(kQ, 0.6, 0.6);
  f.abduce(kQ, Label::True, g, {" " + kET});
  f.abduce(kQ, Label::False, g, {" " + kEF});
  f.proposition(kET, 0.2, 0.7);
  f.proposition(kEF, 0.8, 0.7);
  f.abduce(kEF, Label::True, g, {" " + kEFT});
  f.abduce(kEF, Label::False, g, {" " + kEFF});
  f.proposition(kEFT, 0.9, 0.1);
  f.proposition(kEFF, 0.1, 0.8);
  return f;
}

std::vector<NodeId> ids_of(const std::vector<Proposition>& nodes) {
  std::vector<NodeId> out;
  for (const auto& n : nodes) out.push_back(n.id);
  return out;
}

Proposition with_integrity(std::string text, Integrity integrity) {
  Proposition p;
  p.text = std::move(text);
  p.negated_text = "not " + p.text;
  p.integrity = integrity;
  p.true_prob = 0.5;
  p.neg_true_prob = 0.5;
  if (integrity == Integrity::IntegralTrue) p.belief = 0.5;
  if (integrity == Integrity::IntegralFalse) p.belief = -0.5;
  return p;
}

std::set<NodeId> id_set(const MaieuticTree& tree) {
  const auto ids = tree_node_ids(tree);
  return {ids.begin(), ids.end()};
}

}  // namespace

TEST(Integrity, Classification) {
  EXPECT_EQ(classify_integrity(0.8, 0.3), Integrity::IntegralTrue);
  EXPECT_EQ(classify_integrity(0.2, 0.7), Integrity::IntegralFalse);
  EXPECT_EQ(classify_integrity(0.8, 0.7), Integrity::NotIntegral);
  EXPECT_EQ(classify_integrity(0.2, 0.1), Integrity::NotIntegral);
  EXPECT_EQ(classify_integrity(0.5, 0.1), Integrity::NotIntegral);
  EXPECT_EQ(classify_integrity(0.9, 0.5), Integrity::NotIntegral);
}

TEST(Integrity, CheckQueriesStatementAndNegation) {
  FixtureBuilder f;
  f.proposition("Penguins can fly.", 0.3, 0.9);
  auto model = testing_support::model_from(f);
  const auto check = check_integrity("Penguins can fly.", *model, default_prompt_set(PromptMode::QaPairs),
                                     NegationStrategy::Prefix);
  EXPECT_EQ(check.integrity, Integrity::IntegralFalse);
  EXPECT_EQ(check.negated_text, "It is wrong to say that penguins can fly.");
  ASSERT_TRUE(check.belief.has_value());
  EXPECT_NEAR(*check.belief, -0.5, 1e-15);
}

TEST(Integrity, GeneratedNegation) {
  FixtureBuilder f;
  f.negate("Penguins can fly.", " Penguins cannot fly.");
  f.truth("Penguins can fly.", 0.3, 0.7);
  f.truth("Penguins cannot fly.", 0.9, 0.1);
  auto model = testing_support::model_from(f);
  const auto check = check_integrity("Penguins can fly.", *model, default_prompt_set(PromptMode::QaPairs),
                                     NegationStrategy::LmGenerated);
  EXPECT_EQ(check.negated_text, "Penguins cannot fly.");
  EXPECT_EQ(check.integrity, Integrity::IntegralFalse);
}

TEST(Abduction, MergesDuplicatesAndSkipsEmptyLabels) {
  FixtureBuilder f;
  const TreeConfig config;
  f.abduce("Q?", Label::True, config.decoding_at(1), {" a.", " b.", " a."});
  f.abduce("Q?", Label::False, config.decoding_at(1), {"", " ", ""});
  auto model = testing_support::model_from(f);
  const auto out = abduction("Q?", config, 1, *model, default_prompt_set(PromptMode::AbductiveTriples));
  EXPECT_EQ(out.for_true, (std::vector<std::string>{"a.", "b."}));
  EXPECT_TRUE(out.for_false.empty());
  EXPECT_THROW(abduction("Q?", config, 3, *model, default_prompt_set(PromptMode::AbductiveTriples)),
               std::invalid_argument);
}

TEST(BuildTree, ExpandsOnlyNonIntegralNodes) {
  auto model = testing_support::model_from(kirk_fixtures());
  const auto tree = build_tree(kQ, greedy_config(), *model, {});
  EXPECT_EQ(tree_node_ids(tree), (std::vector<NodeId>{"root", "T.0", "F.0", "F.0.T.0", "F.0.F.0"}));
  EXPECT_EQ(tree.node("T.0").integrity, Integrity::IntegralFalse);
  EXPECT_EQ(tree.node("F.0").integrity, Integrity::NotIntegral);
  EXPECT_EQ(tree.node("F.0.T.0").text, kEFT);
  EXPECT_EQ(tree.node("F.0.F.0").integrity, Integrity::IntegralFalse);
  EXPECT_EQ(tree.root().integrity, Integrity::NotIntegral);
  EXPECT_NO_THROW(tree.validate());
  EXPECT_EQ(ids_of(tree_leaves(prune(tree))), (std::vector<NodeId>{"T.0", "F.0.T.0", "F.0.F.0"}));
}

TEST(BuildTree, IntegralFirstLevelStopsGrowth) {
  const auto g = DecodingParams::greedy();
  FixtureBuilder f;
  f.proposition("Q.", 0.6, 0.3);
  f.abduce("Q.", Label::True, g, {" A."});
  f.abduce("Q.", Label::False, g, {" B."});
  f.proposition("A.", 0.9, 0.2);
  f.proposition("B.", 0.1, 0.6);
  auto model = testing_support::model_from(f);
  // Any depth-2 request would hit a missing fixture.
  const auto tree = build_tree("Q.", greedy_config(), *model, {});
  EXPECT_EQ(tree.size(), 3u);
  EXPECT_EQ(prune(tree), tree);
}

TEST(BuildTree, DropsEchoesOfTheParent) {
  const auto g = DecodingParams::greedy();
  FixtureBuilder f;
  f.proposition("Q.", 0.6, 0.3);
  f.abduce("Q.", Label::True, g, {" Q."});
  f.abduce("Q.", Label::False, g, {" B."});
  f.proposition("B.", 0.1, 0.6);
  auto model = testing_support::model_from(f);
  const auto tree = build_tree("Q.", greedy_config(), *model, {});
  EXPECT_EQ(tree_node_ids(tree), (std::vector<NodeId>{"root", "F.0"}));
}

TEST(BuildTree, NothingIntegralPrunesToRoot) {
  const TreeConfig config;
  FixtureBuilder f;
  int n = 0;
  std::function<void(const std::string&, int)> grow = [&](const std::string& text, int depth) {
    f.proposition(text, 0.7, 0.7);
    if (depth == config.depth_limit) return;
    for (auto label : {Label::True, Label::False}) {
      std::vector<std::string> kids;
      for (int i = 0; i < config.width_at(depth + 1); ++i) kids.push_back(" s" + std::to_string(n++) + ".");
      f.abduce(text, label, config.decoding_at(depth + 1), kids);
      for (const auto& k : kids) grow(k.substr(1), depth + 1);
    }
  };
  grow("Q.", 0);
  auto model = testing_support::model_from(f);
  const auto tree = build_tree("Q.", config, *model, {});
  EXPECT_EQ(tree.size(), config.max_nodes());
  EXPECT_EQ(prune(tree).size(), 1u);
}

TEST(BuildTree, ParallelAndSequentialAgree) {
  std::mt19937_64 rng(21);
  const TreeConfig config;
  for (int i = 0; i < 20; ++i) {
    const auto scenario = testing_support::random_scenario(rng, config, "p" + std::to_string(i));
    auto model = testing_support::model_from(scenario.fixtures);
    const auto a = build_tree(scenario.question, config, *model, {}, {true});
    const auto b = build_tree(scenario.question, config, *model, {}, {false});
    EXPECT_EQ(tree_to_json(a).dump(), tree_to_json(b).dump());
  }
}

TEST(BuildTree, RandomTreesRespectStructuralInvariants) {
  std::mt19937_64 rng(22);
  const TreeConfig config;
  for (int i = 0; i < 60; ++i) {
    const auto scenario = testing_support::random_scenario(rng, config, "r" + std::to_string(i));
    auto model = testing_support::model_from(scenario.fixtures);
    const auto tree = build_tree(scenario.question, config, *model, {});
    ASSERT_NO_THROW(tree.validate());
    EXPECT_LE(tree.size(), config.max_nodes());
    for (const auto& node : tree_nodes(tree)) {
      EXPECT_LE(node.depth(), static_cast<std::size_t>(config.depth_limit));
      if (node.id != "root" && !tree.is_leaf(node.id)) EXPECT_FALSE(node.integral()) << node.id;
      std::set<std::string> seen;
      for (const auto& link : tree.children(node.id)) {
        EXPECT_NE(tree.node(link.child).text, node.text);
        EXPECT_TRUE(seen.insert(std::string(to_string(link.label)) + tree.node(link.child).text).second);
      }
    }
  }
}

TEST(Prune, RemovesChainsOfNonIntegralLeaves) {
  MaieuticTree tree(with_integrity("Q", Integrity::NotIntegral));
  const auto a = tree.add_child("root", Label::True, with_integrity("A", Integrity::NotIntegral));
  tree.add_child(a, Label::True, with_integrity("AA", Integrity::NotIntegral));
  const auto b = tree.add_child("root", Label::False, with_integrity("B", Integrity::NotIntegral));
  tree.add_child(b, Label::False, with_integrity("BB", Integrity::IntegralTrue));
  tree.add_child("root", Label::False, with_integrity("C", Integrity::IntegralFalse));
  const auto pruned = prune(tree);
  EXPECT_EQ(tree_node_ids(pruned), (std::vector<NodeId>{"root", "F.0", "F.0.F.0", "F.1"}));
}

TEST(Prune, KeepsTheRootAlways) {
  MaieuticTree tree(with_integrity("Q", Integrity::NotIntegral));
  EXPECT_EQ(prune(tree).size(), 1u);
}

TEST(Prune, IdempotentAndShrinking) {
  std::mt19937_64 rng(23);
  const TreeConfig config;
  for (int i = 0; i < 60; ++i) {
    const auto scenario = testing_support::random_scenario(rng, config, "q" + std::to_string(i));
    auto model = testing_support::model_from(scenario.fixtures);
    const auto tree = build_tree(scenario.question, config, *model, {});
    const auto once = prune(tree);
    EXPECT_EQ(prune(once), once);
    const auto before = id_set(tree);
    for (const auto& id : id_set(once)) EXPECT_TRUE(before.count(id)) << id;
    for (const auto& leaf : tree_leaves(once)) {
      if (leaf.id != "root") EXPECT_TRUE(leaf.integral()) << leaf.id;
    }
    // Every integral node of the original survives.
    for (const auto& node : tree_nodes(tree)) {
      if (node.integral() && node.id != "root") EXPECT_TRUE(once.contains(node.id)) << node.id;
    }
  }
}

TEST(BuildTree, BackendFailuresPropagate) {
  FixtureBuilder f;
  f.proposition("Q.", 0.6, 0.3);
  auto model = testing_support::model_from(f);
  EXPECT_EQ(error_code_of([&] { build_tree("Q.", TreeConfig{}, *model, {}); }), ErrorCode::MissingFixture);
}
