#include <gtest/gtest.h>

#include "maieutic/harness.hpp"
#include "maieutic/maxsat.hpp"
#include "maieutic/serialization.hpp"
#include "test_support.hpp"

using namespace maieutic;
using namespace maieutic::harness;
using testing_support::error_code_of;
using testing_support::kWarQuestion;

namespace {

const std::map<NodeId, bool> kWarExpected{
    {"root", true}, {"T.0", true}, {"T.0.T.0", true}, {"T.0.F.0", false}, {"F.0", false}};

lm::FixtureBuilder war_fixtures() {
  const auto authoring = nlohmann::json::parse(testing_support::read_file(testing_support::source_path("data/demo/war_lm.json")));
  return lm::fixture_from_authoring(authoring);
}

Engine engine_with(const lm::FixtureBuilder& fixtures, CompileMode mode, bool with_verifier,
                   std::shared_ptr<Trace> trace = nullptr) {
  Engine engine;
  engine.model = testing_support::model_from(fixtures, std::move(trace));
  if (with_verifier) {
    engine.verifier = std::make_shared<nli::ScriptedVerifier>(
        nli::ScriptedVerifier::from_file(testing_support::source_path("data/demo/war_nli.json").string()));
  }
  engine.compile.mode = mode;
  return engine;
}

}  // namespace

TEST(Standard, ArgmaxOverAnswerTokens) {
  lm::FixtureBuilder f;
  f.truth("Snow is white?", 0.8, 0.2);
  f.truth("Snow is green?", 0.5, 0.5);
  auto model = testing_support::model_from(f);
  const auto& qa = lm::default_prompt_set(PromptMode::QaPairs);
  EXPECT_TRUE(infer_standard("Snow is white?", *model, qa).answer);
  const auto tie = infer_standard("Snow is green?", *model, qa);
  EXPECT_FALSE(tie.answer);
  EXPECT_TRUE(tie.fallback_used);
  EXPECT_EQ(tie.fallback_reason, "ArgmaxTie");
}

TEST(ExplanationBased, AnswersGivenItsOwnExplanation) {
  lm::FixtureBuilder f;
  f.explain("Is fire hot?", " Fire burns things.");
  f.truth_given_explanation("Is fire hot?", "Fire burns things.", 0.9, 0.1);
  f.explain("Is ice hot?", "");
  f.truth("Is ice hot?", 0.1, 0.9);
  auto model = testing_support::model_from(f);
  const lm::PromptBundle prompts;
  const auto r = infer_explanation_based("Is fire hot?", *model, prompts);
  EXPECT_TRUE(r.answer);
  EXPECT_EQ(r.explanation, "Fire burns things.");
  EXPECT_FALSE(r.fallback_used);
  const auto fallback = infer_explanation_based("Is ice hot?", *model, prompts);
  EXPECT_FALSE(fallback.answer);
  EXPECT_TRUE(fallback.fallback_used);
  EXPECT_EQ(fallback.fallback_reason, "EmptyGeneration");
  EXPECT_EQ(fallback.method, Method::ExplanationBased);
}

TEST(Maieutic, WarWalkthroughVerifierMode) {
  const auto r = infer(kWarQuestion, Method::Maieutic, testing_support::war_engine(CompileMode::Verifier));
  EXPECT_TRUE(r.answer);
  EXPECT_FALSE(r.fallback_used);
  EXPECT_EQ(r.node_values(), kWarExpected);
  ASSERT_TRUE(r.cnf.has_value());
  EXPECT_NEAR(r.assignment->satisfied_weight, maxsat::solve_brute(*r.cnf).satisfied_weight, 1e-12);
  EXPECT_NEAR(r.assignment->satisfied_weight, 4.8, 1e-12);
  EXPECT_EQ(r.true_propositions, (std::vector<std::string>{"In a context of war, there's always a victor and a loser.",
                                                           "A war is fought until one side is defeated."}));
}

TEST(Maieutic, WarWalkthroughLikelihoodMode) {
  const auto r = infer(kWarQuestion, Method::Maieutic, testing_support::war_engine(CompileMode::Likelihood));
  EXPECT_TRUE(r.answer);
  EXPECT_EQ(r.node_values(), kWarExpected);
  for (const auto& c : r.cnf->clauses()) EXPECT_NE(c.origin, ClauseOrigin::Nli);
}

TEST(Maieutic, OutputIsReproducible) {
  const auto first = to_json(infer(kWarQuestion, Method::Maieutic, testing_support::war_engine(CompileMode::Verifier)));
  auto engine = testing_support::war_engine(CompileMode::Verifier);
  engine.build.parallel = false;
  const auto second = to_json(infer(kWarQuestion, Method::Maieutic, engine));
  EXPECT_EQ(first.dump(), second.dump());
}

TEST(Maieutic, UnsupportedLikelihoodFallsBackToVerifier) {
  auto fixtures = war_fixtures();
  const auto r0 = infer(kWarQuestion, Method::Maieutic, testing_support::war_engine(CompileMode::Verifier));
  for (const auto& e : tree_edges(*r0.tree)) {
    for (auto label : {Label::True, Label::False}) {
      fixtures.likelihood_unsupported(r0.tree->node(e.child).text, r0.tree->node(e.parent).text, label);
    }
  }
  const auto r = infer(kWarQuestion, Method::Maieutic, engine_with(fixtures, CompileMode::Likelihood, true));
  EXPECT_TRUE(r.answer);
  bool has_nli = false;
  for (const auto& c : r.cnf->clauses()) has_nli = has_nli || c.origin == ClauseOrigin::Nli;
  EXPECT_TRUE(has_nli);

  auto trace = std::make_shared<Trace>();
  const auto engine = engine_with(fixtures, CompileMode::Likelihood, false, trace);
  try {
    infer(kWarQuestion, Method::Maieutic, engine);
    FAIL() << "expected NotSupported";
  } catch (const InferenceError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSupported);
    EXPECT_FALSE(e.trace_jsonl().empty());
  }
}

TEST(Maieutic, EmptyTreeFallsBackToStandard) {
  const auto g = DecodingParams::greedy();
  lm::FixtureBuilder f;
  f.proposition("Q?", 0.3, 0.6);
  f.abduce("Q?", Label::True, g, {" a."});
  f.abduce("Q?", Label::False, g, {" b."});
  for (const auto* t : {"a.", "b."}) {
    f.proposition(t, 0.6, 0.6);
    f.abduce(t, Label::True, g, {std::string(" ") + t + "t"});
    f.abduce(t, Label::False, g, {std::string(" ") + t + "f"});
    f.proposition(std::string(t) + "t", 0.6, 0.6);
    f.proposition(std::string(t) + "f", 0.4, 0.4);
  }
  auto engine = engine_with(f, CompileMode::Verifier, true);
  engine.tree.width_schedule = {1, 1};
  engine.tree.decoding_schedule = {g, g};
  const auto r = infer("Q?", Method::Maieutic, engine);
  EXPECT_TRUE(r.fallback_used);
  EXPECT_EQ(r.fallback_reason, "EmptyTree");
  EXPECT_FALSE(r.answer);
  ASSERT_TRUE(r.tree.has_value());
  EXPECT_EQ(r.tree->size(), 1u);
  EXPECT_FALSE(r.assignment.has_value());
}

TEST(Maieutic, BackendErrorsCarryTrace) {
  lm::FixtureBuilder f;
  f.proposition("Q?", 0.3, 0.6);
  auto trace = std::make_shared<Trace>();
  try {
    infer("Q?", Method::Maieutic, engine_with(f, CompileMode::Verifier, true, trace));
    FAIL() << "expected MissingFixture";
  } catch (const InferenceError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFixture);
    EXPECT_NE(e.trace_jsonl().find("\"purpose\":\"truth\""), std::string::npos);
  }
}

TEST(Explain, TextAndDot) {
  const auto r = infer(kWarQuestion, Method::Maieutic, testing_support::war_engine(CompileMode::Verifier));
  const auto text = explain_text(r);
  EXPECT_NE(text.find("Answer: True (Maieutic)"), std::string::npos);
  EXPECT_NE(text.find("[violated]"), std::string::npos);
  EXPECT_NE(text.find("Satisfied weight: 4.8 of 5.1"), std::string::npos);
  const auto dot = explain_dot(r);
  EXPECT_NE(dot.find("palegreen"), std::string::npos);
  EXPECT_NE(dot.find("lightpink"), std::string::npos);
}

TEST(Config, LoadsAndHashesStably) {
  const auto config = testing_support::war_config(CompileMode::Verifier);
  EXPECT_EQ(config.compile.mode, CompileMode::Verifier);
  EXPECT_EQ(config.seed, 0u);
  const auto engine = make_engine(config, nullptr);
  const auto a = run_manifest(config, engine, Method::Maieutic);
  const auto b = run_manifest(testing_support::war_config(CompileMode::Verifier), engine, Method::Maieutic);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["backend_ids"].size(), 2u);
  EXPECT_NE(a["config_hash"], run_manifest(testing_support::war_config(CompileMode::Likelihood), engine, Method::Maieutic)["config_hash"]);
}

TEST(Config, RejectsBadSections) {
  auto j = testing_support::war_config(CompileMode::Verifier).to_json();
  j.erase("verifier");
  EXPECT_EQ(error_code_of([&] { make_engine(RunConfig::from_json(j, "."), nullptr); }), ErrorCode::InvalidConfig);
  auto bad_tree = testing_support::war_config(CompileMode::Verifier).to_json();
  bad_tree["tree"]["depth_limit"] = 0;
  EXPECT_EQ(error_code_of([&] { RunConfig::from_json(bad_tree, "."); }), ErrorCode::InvalidConfig);
  auto bad_backend = testing_support::war_config(CompileMode::Verifier).to_json();
  bad_backend["backend"] = {{"kind", "carrier-pigeon"}};
  EXPECT_EQ(error_code_of([&] { make_engine(RunConfig::from_json(bad_backend, "."), nullptr); }), ErrorCode::InvalidConfig);
}

TEST(Standard, PairedStatementsAreQueriedIndependently) {
  lm::FixtureBuilder f;
  f.truth("Barack Obama has daughters.", 0.9, 0.1);
  f.truth("Barack Obama has no daughters.", 0.7, 0.3);
  auto trace = std::make_shared<Trace>();
  auto model = testing_support::model_from(f, trace);
  const auto& qa = lm::default_prompt_set(PromptMode::QaPairs);
  EXPECT_TRUE(infer_standard("Barack Obama has daughters.", *model, qa).answer);
  EXPECT_TRUE(infer_standard("Barack Obama has no daughters.", *model, qa).answer);
  EXPECT_EQ(trace->backend_calls(), 2u);
}

TEST(Explain, ResultJsonCarriesAValidTree) {
  const auto j = to_json(infer(kWarQuestion, Method::Maieutic, testing_support::war_engine(CompileMode::Verifier)));
  const auto tree = tree_from_json(j.at("tree"));
  EXPECT_EQ(tree.size(), 5u);
  EXPECT_EQ(j.at("assignment").at("values").at("root"), true);
  EXPECT_EQ(j.at("answer"), true);
}

TEST(Explain, FallbackNotice) {
  lm::FixtureBuilder f;
  f.truth("Snow is green?", 0.5, 0.5);
  auto model = testing_support::model_from(f);
  const auto r = infer_standard("Snow is green?", *model, lm::default_prompt_set(PromptMode::QaPairs));
  const auto text = explain_text(r);
  EXPECT_NE(text.find("Fallback: answered by standard prompting (ArgmaxTie)"), std::string::npos);
  EXPECT_EQ(text.find("Clauses:"), std::string::npos);
  EXPECT_EQ(explain_dot(r), "digraph maieutic {}\n");
}
