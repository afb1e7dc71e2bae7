#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "subint/cli.hpp"
#include "subint/proof.hpp"
#include "subint/registry.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = subint::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ProvesTheSeparatingFormulaInDhat) {
  auto r = run({"prove", "--logic", "WFDhat_imp", "((p->p)->r)->(q->r)"});
  EXPECT_EQ(r.code, 0) << r.err;
  // The printed script is itself a checkable proof.
  subint::ProofScript s = subint::parse_script(r.out);
  EXPECT_TRUE(subint::check_proof(s).accepted());
  EXPECT_EQ(subint::print(s.conclusion()), "((p -> p) -> r) -> q -> r");
}

TEST(Cli, ProveReportsBudgetExhaustionWithExitOne) {
  auto r = run({"prove", "--logic", "WF_imp", "--size", "3", "--rounds", "2", "p -> q"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not derivable"), std::string::npos);
}

TEST(Cli, ProveWithAssumptionsFollowsTheModusPonensMode) {
  // Weak modus ponens needs a theorem as major premise, so an assumed p -> q is inert.
  std::vector<std::string> args = {"prove", "--logic", "F_full", "--size", "4", "--rounds", "3",
                                   "--assume", "p -> q", "--assume", "p", "q"};
  EXPECT_EQ(run(args).code, 1);
  args.insert(args.begin(), "--f-mp-unrestricted");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rule mp"), std::string::npos);
}

TEST(Cli, ChecksShippedFixtures) {
  for (const char* f : {"lemma2_13a.prf", "lemma2_13b.prf", "re_implies_r.prf", "separating_dhat.prf"}) {
    auto r = run({"check-proof", f});
    EXPECT_EQ(r.code, 0) << f << ": " << r.out << r.err;
    EXPECT_EQ(r.out, "Accepted\n") << f;
  }
}

TEST(Cli, CheckProofRejectsUnderAWeakerLogic) {
  auto r = run({"check-proof", "--logic", "WF_imp", "separating_dhat.prf"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("Rejected at step 3:", 0), 0u) << r.out;
}

TEST(Cli, MissingFileIsAUsageError) {
  auto r = run({"check-proof", "no_such_file.prf"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no_such_file.prf"), std::string::npos);
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST(Cli, EvalOnMinimalModel) {
  auto r = run({"eval", "--model", "minimal.json", "--world", "g", "p->p"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "true\n");
  r = run({"eval", "--model", "minimal.json", "--world", "g", "p"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "false\n");
  r = run({"eval", "--model", "minimal.json", "--world", "nowhere", "p"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ValidListsFailingWorlds) {
  auto r = run({"valid", "--model", "separating_countermodel.json", "((p->p)->r)->(q->r)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("not valid; fails at g", 0), 0u) << r.out;
  r = run({"valid", "--model", "separating_countermodel.json", "p -> p"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid\n");
}

TEST(Cli, FramePropsOfAKripkeModel) {
  auto r = run({"--json", "frame-props", "--model", "minimal.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["semantics"], "kripke");
  EXPECT_TRUE(j["properties"]["reflexive"]);
  EXPECT_TRUE(j["properties"]["transitive"]);
}

TEST(Cli, CountermodelEchoesSeedAndExitsOneWhenFound) {
  auto r = run({"countermodel", "--semantics", "k", "--seed", "9", "p & (p -> q) -> q"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("seed 9"), std::string::npos);
  r = run({"countermodel", "--semantics", "k", "--props", "reflexive", "p & (p -> q) -> q"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("seed 1"), std::string::npos);
}

TEST(Cli, CountermodelJsonCarriesALoadableModel) {
  auto r = run({"--json", "countermodel", "--semantics", "n", "(p -> q) -> (p -> p & q)"});
  ASSERT_EQ(r.code, 1) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["model"]["semantics"], "nbhd");
}

TEST(Cli, CorrespondExitCodeFollowsMismatches) {
  EXPECT_EQ(run({"correspond", "--axiom", "C", "--property", "intersection", "--worlds", "2", "--min-worlds", "2"}).code,
            0);
  EXPECT_EQ(run({"correspond", "--axiom", "C", "--property", "union", "--worlds", "2", "--min-worlds", "2"}).code, 1);
  EXPECT_EQ(run({"correspond", "--rule", "N", "--property", "equivalence", "--worlds", "2", "--min-worlds", "2"}).code,
            0);
}

TEST(Cli, SeparateFindsTheDhatWitness) {
  auto r = run({"--json", "separate", "--weaker", "WF_imp", "--stronger", "WFDhat_imp", "--max-size", "5",
                "--max-worlds", "2"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "separate");
  EXPECT_EQ(j["witness"], "((p -> p) -> p) -> q -> p");
  EXPECT_EQ(j["budget"]["seed"], 1);
}

TEST(Cli, SeparateNeedsBothLogicsOrAPreset) {
  EXPECT_EQ(run({"separate", "--weaker", "WF_imp"}).code, 2);
  EXPECT_EQ(run({"separate", "--preset", "bogus"}).code, 2);
}

TEST(Cli, ParseAndFragments) {
  auto r = run({"parse", "p->q->r"});
  EXPECT_EQ(r.out, "p -> q -> r\n");
  r = run({"parse", "--fragment", "ImpOnly", "p & q"});
  EXPECT_EQ(r.code, 2);
  r = run({"parse", "p ->"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("position"), std::string::npos);
}

TEST(Cli, RegistryFlagsReachTheCatalog) {
  // Letter P only: a compound antecedent needs --schematic-P.
  std::vector<std::string> args = {"prove", "--logic", "FP_imp", "--size", "5", "--rounds", "2",
                                   "(p -> q) -> (top -> p -> q)"};
  auto plain = run(args);
  args.insert(args.begin(), "--schematic-P");
  auto lifted = run(args);
  EXPECT_EQ(lifted.code, 0) << lifted.err;
  EXPECT_EQ(plain.code, 1);
}

TEST(Cli, LogicsListsTheCatalog) {
  auto r = run({"--json", "logics"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["logics"].size(), subint::list_logics().size());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--model", "minimal.json", "p"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"logics", "--logic", "x"}).code, 2);
}

TEST(Cli, FixturesFlagListsTheCorpus) {
  auto r = run({"--fixtures"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("proofs/lemma2_13a.prf"), std::string::npos);
  EXPECT_NE(r.out.find("models/minimal.json"), std::string::npos);
}
