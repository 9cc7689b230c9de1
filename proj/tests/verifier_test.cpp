#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>

#include "maieutic/constraint_compiler.hpp"
#include "maieutic/verifier.hpp"
#include "test_support.hpp"

using namespace maieutic;
using namespace maieutic::nli;
using nlohmann::json;
using testing_support::error_code_of;

namespace {

const std::string kTrek = "Captain Kirk is a character in Star Trek.";
const std::string kWars = "Captain Kirk is part of Star Wars.";

Proposition node(std::string text) {
  Proposition p;
  p.text = std::move(text);
  return p;
}

// root, T.0, F.0
MaieuticTree three_nodes(const std::string& a, const std::string& b, const std::string& c) {
  MaieuticTree tree(node(a));
  tree.add_child("root", Label::True, node(b));
  tree.add_child("root", Label::False, node(c));
  return tree;
}

json entry(const std::string& p, const std::string& h, const char* label) {
  return {{"premise", p}, {"hypothesis", h}, {"label", label}};
}

}  // namespace

TEST(ScriptedVerifier, Examples) {
  ScriptedVerifier verifier(json::array({entry(kTrek, kWars, "Contradict")}));
  EXPECT_EQ(nli::nli(verifier, kTrek, kWars).label, NliLabel::Contradict);
  EXPECT_EQ(nli::nli(verifier, kWars, kWars).label, NliLabel::Entail);
  EXPECT_EQ(error_code_of([&] { nli::nli(verifier, kWars, kTrek); }), ErrorCode::MissingFixture);
  EXPECT_THROW(nli::nli(verifier, "", kTrek), std::invalid_argument);
}

TEST(ScriptedVerifier, DefaultLabelCoversUnlistedPairs) {
  ScriptedVerifier verifier(json{{"default", "Neutral"}, {"judgments", json::array()}});
  const auto j = nli::nli(verifier, kWars, kTrek);
  EXPECT_EQ(j.label, NliLabel::Neutral);
  EXPECT_DOUBLE_EQ(j.label_probs.neutral, 1.0);
}

TEST(ScriptedVerifier, RejectsInconsistentProbabilities) {
  auto bad_sum = entry("a", "b", "Entail");
  bad_sum["probs"] = {{"entail", 0.6}, {"contradict", 0.2}, {"neutral", 0.1}};
  EXPECT_EQ(error_code_of([&] { ScriptedVerifier v(json::array({bad_sum})); }), ErrorCode::MalformedResponse);
  auto not_argmax = entry("a", "b", "Contradict");
  not_argmax["probs"] = {{"entail", 0.6}, {"contradict", 0.3}, {"neutral", 0.1}};
  EXPECT_EQ(error_code_of([&] { ScriptedVerifier v(json::array({not_argmax})); }), ErrorCode::MalformedResponse);
  EXPECT_EQ(error_code_of([&] { ScriptedVerifier v(json::array({entry("a", "b", "Maybe")})); }),
            ErrorCode::MalformedResponse);
}

TEST(RelationClauses, AllNeutralGivesNothing) {
  ScriptedVerifier verifier(json{{"default", "Neutral"}, {"judgments", json::array()}});
  const auto tree = three_nodes("A", "B", "C");
  EXPECT_TRUE(relation_clauses(tree, declare_variables(tree), verifier).empty());
}

TEST(RelationClauses, MutualEntailmentGivesTwoClauses) {
  ScriptedVerifier verifier(json{{"default", "Neutral"},
                                 {"judgments", {entry("B", "C", "Entail"), entry("C", "B", "Entail")}}});
  const auto tree = three_nodes("A", "B", "C");
  const auto clauses = relation_clauses(tree, declare_variables(tree), verifier);
  ASSERT_EQ(clauses.size(), 2u);
  EXPECT_EQ(clauses[0].literals, (std::vector<Literal>{{1, false}, {2, true}}));
  EXPECT_EQ(clauses[1].literals, (std::vector<Literal>{{2, false}, {1, true}}));
  EXPECT_EQ(clauses[0].origin, ClauseOrigin::Nli);
  EXPECT_DOUBLE_EQ(clauses[0].weight, 1.0);
}

TEST(RelationClauses, SymmetricContradictionMerges) {
  ScriptedVerifier verifier(json{{"default", "Neutral"},
                                 {"judgments", {entry("B", "C", "Contradict"), entry("C", "B", "Contradict")}}});
  const auto tree = three_nodes("A", "B", "C");
  const auto clauses = relation_clauses(tree, declare_variables(tree), verifier);
  ASSERT_EQ(clauses.size(), 1u);
  EXPECT_EQ(clauses[0].literals, (std::vector<Literal>{{1, false}, {2, false}}));
}

TEST(RelationClauses, RootParticipates) {
  ScriptedVerifier verifier(json{{"default", "Neutral"}, {"judgments", {entry(kTrek, kWars, "Contradict")}}});
  const auto tree = three_nodes(kWars, "Kirk commands a starship.", kTrek);
  const auto clauses = relation_clauses(tree, declare_variables(tree), verifier);
  ASSERT_EQ(clauses.size(), 1u);
  EXPECT_EQ(clauses[0].literals, (std::vector<Literal>{{2, false}, {0, false}}));
}

TEST(RelationClauses, RandomFixturesRespectBounds) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> texts;
    const int n = 2 + static_cast<int>(rng() % 7);
    for (int k = 0; k < n; ++k) texts.push_back("s" + std::to_string(k));
    MaieuticTree tree(node(texts[0]));
    for (int k = 1; k < n; ++k) tree.add_child("root", k % 2 ? Label::True : Label::False, node(texts[k]));
    ScriptedVerifier verifier(testing_support::random_nli_fixture(rng, texts));
    const auto vars = declare_variables(tree);
    const auto clauses = relation_clauses(tree, vars, verifier);
    EXPECT_LE(clauses.size(), static_cast<std::size_t>(n * (n - 1)));
    std::set<std::vector<Literal>> keys;
    for (const auto& c : clauses) {
      EXPECT_DOUBLE_EQ(c.weight, 1.0);
      auto key = c.literals;
      std::sort(key.begin(), key.end());
      EXPECT_TRUE(keys.insert(key).second);
    }
    // Sequential and concurrent judging agree.
    EXPECT_EQ(relation_clauses(tree, vars, verifier, {false, 1}), clauses);
  }
}

TEST(CachingVerifier, SecondLookupHitsCache) {
  testing_support::TempDir dir;
  auto inner = std::make_shared<ScriptedVerifier>(json::array({entry(kTrek, kWars, "Contradict")}));
  auto cache = std::make_shared<lm::ResponseCache>(dir.path());
  auto trace = std::make_shared<Trace>();
  CachingVerifier verifier(inner, cache, trace);
  const auto first = verifier.judge(kTrek, kWars);
  const auto second = verifier.judge(kTrek, kWars);
  EXPECT_EQ(first, second);
  EXPECT_EQ(trace->backend_calls(), 1u);
  EXPECT_EQ(trace->cache_hits(), 1u);
  EXPECT_EQ(trace->records()[0].purpose, "nli");
}

TEST(HttpVerifier, PostsPairAndParsesJudgment) {
  httplib::Server server;
  std::atomic<int> calls{0};
  server.Post("/nli", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = json::parse(req.body);
    if (calls++ == 0) {
      res.status = 503;
      return;
    }
    const bool contra = body["premise"] == kTrek;
    json out{{"label", contra ? "contradiction" : "neutral"},
             {"probs", {{"entail", 0.1}, {"contradict", contra ? 0.8 : 0.1}, {"neutral", contra ? 0.1 : 0.8}}}};
    res.set_content(out.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  {
    RetryPolicy retry;
    retry.base_delay = std::chrono::milliseconds(1);
    HttpVerifier verifier("http://127.0.0.1:" + std::to_string(port) + "/nli", retry);
    const auto j = nli::nli(verifier, kTrek, kWars);
    EXPECT_EQ(j.label, NliLabel::Contradict);
    EXPECT_DOUBLE_EQ(j.label_probs.contradict, 0.8);
    EXPECT_EQ(calls.load(), 2);
  }
  server.stop();
  t.join();
}
