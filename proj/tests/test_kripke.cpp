#include <gtest/gtest.h>

#include <random>
#include <set>

#include "subint/kripke.hpp"

using namespace subint;

namespace {

// Direct recursive forcing relation, used as an oracle for the bitmask evaluator.
bool oracle_forces(const KripkeModel& m, int w, Formula f) {
  switch (f.kind()) {
    case Connective::Atom:
      return (m.valuation(f.name()) >> w) & 1u;
    case Connective::Top:
      return true;
    case Connective::Bot:
      return false;
    case Connective::And:
      return oracle_forces(m, w, f.left()) && oracle_forces(m, w, f.right());
    case Connective::Or:
      return oracle_forces(m, w, f.left()) || oracle_forces(m, w, f.right());
    case Connective::Imp:
      for (int v = 0; v < m.frame.size(); ++v)
        if (m.frame.related(w, v) && oracle_forces(m, v, f.left()) && !oracle_forces(m, v, f.right()))
          return false;
      return true;
  }
  return false;
}

Formula random_formula(std::mt19937& rng, int depth) {
  static const char* atoms[] = {"p", "q", "r"};
  int pick = std::uniform_int_distribution<int>(0, depth == 0 ? 4 : 7)(rng);
  if (pick < 3) return Formula::atom(atoms[pick]);
  if (pick == 3) return Formula::top();
  if (pick == 4) return Formula::bot();
  Formula a = random_formula(rng, depth - 1), b = random_formula(rng, depth - 1);
  if (pick == 5) return Formula::conj(a, b);
  if (pick == 6) return Formula::disj(a, b);
  return Formula::imp(a, b);
}

KripkeModel random_model(std::mt19937& rng, int n) {
  KripkeModel m;
  m.frame.worlds = default_world_names(n);
  m.frame.succ.assign(n, 0);
  m.frame.succ[0] = m.frame.all();
  for (int w = 1; w < n; ++w) m.frame.succ[w] = rng() & m.frame.all();
  for (const char* a : {"p", "q", "r"}) m.V[a] = rng() & m.frame.all();
  return m;
}

const char* kChain = R"({"semantics":"kripke","worlds":["g","a","b"],"root":"g",
  "R":[["g","g"],["g","a"],["g","b"],["a","b"]],"V":{"p":["a"],"q":["b"]}})";

}  // namespace

TEST(Kripke, FrameCountsMatchFreePairCount) {
  EXPECT_EQ(enumerate_frames(1).size(), 1u);
  EXPECT_EQ(enumerate_frames(2).size(), 4u);
  EXPECT_EQ(enumerate_frames(3).size(), 64u);
}

TEST(Kripke, EnumeratedFramesAreRootedAndDistinct) {
  auto frames = enumerate_frames(3);
  std::set<std::vector<WorldSet>> seen;
  for (auto& f : frames) {
    EXPECT_TRUE(f.omniscience_problem().empty());
    seen.insert(f.succ);
  }
  EXPECT_EQ(seen.size(), frames.size());
}

TEST(Kripke, ShardsPartitionTheFrames) {
  std::size_t total = 0;
  for (int s = 0; s < 5; ++s) total += enumerate_frames(3, s, 5).size();
  EXPECT_EQ(total, 64u);
}

TEST(Kripke, ValuationCount) {
  auto f = enumerate_frames(2)[3];
  EXPECT_EQ(enumerate_valuations(f, {"p", "q"}).size(), 16u);
}

TEST(Kripke, EvaluatorAgreesWithRecursiveOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    KripkeModel m = random_model(rng, 1 + trial % 4);
    Formula f = random_formula(rng, 4);
    KripkeEvaluator ev(m);
    WorldSet s = ev.truth_set(f);
    for (int w = 0; w < m.frame.size(); ++w) ASSERT_EQ(((s >> w) & 1u) != 0, oracle_forces(m, w, f)) << print(f);
  }
}

TEST(Kripke, ForcingOnChainModel) {
  KripkeModel m = parse_kripke_model(kChain);
  Formula pq = parse("p -> q");
  EXPECT_TRUE(forces(m, "g", parse("q -> q")));
  EXPECT_TRUE(forces(m, "a", pq));  // a sees only b, where q holds
  EXPECT_FALSE(forces(m, "g", pq));  // g sees a
  EXPECT_TRUE(forces(m, "b", pq));  // b sees nothing
  EXPECT_FALSE(forces(m, "g", parse("r")));  // absent atoms are false
  EXPECT_THROW(forces(m, "z", pq), ModelError);
}

TEST(Kripke, ValidityAndConsequence) {
  KripkeModel m = parse_kripke_model(kChain);
  EXPECT_TRUE(valid_on_model(m, parse("p -> p")));
  EXPECT_FALSE(valid_on_model(m, parse("p")));
  EXPECT_TRUE(valid_consequence(m, {parse("p")}, parse("p | q")));
  EXPECT_FALSE(valid_consequence(m, {parse("p | q")}, parse("p")));
}

TEST(Kripke, FrameProperties) {
  KripkeModel m = parse_kripke_model(kChain);
  EXPECT_FALSE(has_property(m.frame, KripkeProperty::Reflexive));
  EXPECT_TRUE(has_property(m.frame, KripkeProperty::Transitive));
  EXPECT_FALSE(has_property(m, KripkeProperty::PersistentValuation));  // p at a, a R b, not p at b
  EXPECT_THROW(has_property(m.frame, KripkeProperty::PersistentValuation), std::invalid_argument);
}

TEST(Kripke, PropertyCountsMatchBruteForce) {
  int refl = 0, trans = 0, refl_oracle = 0, trans_oracle = 0;
  for (auto& f : enumerate_frames(3)) {
    refl += has_property(f, KripkeProperty::Reflexive);
    trans += has_property(f, KripkeProperty::Transitive);
    bool r = true, t = true;
    for (int a = 0; a < 3; ++a) {
      r = r && f.related(a, a);
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          if (f.related(a, b) && f.related(b, c) && !f.related(a, c)) t = false;
    }
    refl_oracle += r;
    trans_oracle += t;
  }
  EXPECT_EQ(refl, refl_oracle);
  EXPECT_EQ(trans, trans_oracle);
  EXPECT_EQ(refl, 16);  // root row fixed, two free diagonal bits forced on: 2^4
}

TEST(Kripke, OmniscienceViolationNamesTheRepair) {
  const char* bad = R"({"semantics":"kripke","worlds":["g","a"],"root":"g","R":[["g","g"]],"V":{}})";
  try {
    parse_kripke_model(bad);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("[\"g\",\"a\"]"), std::string::npos) << e.what();
  }
}

TEST(Kripke, MalformedInputsAreRejected) {
  EXPECT_THROW(parse_kripke_model("{"), ModelError);
  EXPECT_THROW(parse_kripke_model(R"({"semantics":"nbhd","worlds":["g"],"root":"g"})"), ModelError);
  EXPECT_THROW(parse_kripke_model(R"({"semantics":"kripke","worlds":["g"],"root":"h"})"), ModelError);
  EXPECT_THROW(parse_kripke_model(R"({"semantics":"kripke","worlds":["g","g"],"root":"g"})"), ModelError);
  EXPECT_THROW(parse_kripke_model(R"({"semantics":"kripke","worlds":["g"],"root":"g","R":[["g","x"]]})"),
               ModelError);
}

TEST(Kripke, JsonRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    KripkeModel m = random_model(rng, 1 + i % 5);
    KripkeModel back = parse_kripke_model(kripke_model_json(m));
    EXPECT_EQ(back.frame.worlds, m.frame.worlds);
    EXPECT_EQ(back.frame.succ, m.frame.succ);
    EXPECT_EQ(back.V, m.V);
  }
}
