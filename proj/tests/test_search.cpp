#include <gtest/gtest.h>

#include <chrono>

#include "subint/search.hpp"

using namespace subint;

namespace {

SemanticsClass kripke(std::set<KripkeProperty> ps = {}) { return {SemanticsKind::Kripke, std::move(ps), {}}; }
SemanticsClass nbhd(std::set<NbhdProperty> ps = {}) { return {SemanticsKind::Nbhd, {}, std::move(ps)}; }

int model_worlds(const Countermodel& c) {
  return std::visit([](const auto& m) { return m.frame.size(); }, c.model);
}

}  // namespace

TEST(Countermodel, ReflexionFailsOnTwoWorldIrreflexiveModel) {
  Formula r = parse("p & (p -> q) -> q");
  SearchBudget b;
  b.max_worlds = 3;
  auto cm = find_countermodel(kripke(), r, b);
  ASSERT_TRUE(cm);
  // One world is reflexive by omniscience, so the smallest countermodel has two.
  EXPECT_EQ(model_worlds(*cm), 2);
  const auto& m = std::get<KripkeModel>(cm->model);
  EXPECT_FALSE(has_property(m.frame, KripkeProperty::Reflexive));
  EXPECT_FALSE(forces(m, cm->world, r));
}

TEST(Countermodel, NoneOnReflexiveFramesUpToThreeWorlds) {
  SearchBudget b;
  auto res = search_countermodel(kripke({KripkeProperty::Reflexive}), parse("p & (p -> q) -> q"), b);
  EXPECT_FALSE(res.found);
  EXPECT_EQ(res.exhaustive_up_to, 3);
}

TEST(Countermodel, PersistenceClassValidatesLetterP) {
  SearchBudget b;
  Formula p = parse("p -> (top -> p)");
  EXPECT_TRUE(find_countermodel(kripke(), p, b));
  EXPECT_FALSE(find_countermodel(kripke({KripkeProperty::PersistentValuation}), p, b));
}

TEST(Countermodel, NbInstanceFailsOnPlainNeighborhoodFrames) {
  SearchBudget b;
  Formula nb1 = parse("(p -> q) -> (p -> p & q)");
  auto cm = find_countermodel(nbhd(), nb1, b);
  ASSERT_TRUE(cm);
  EXPECT_LE(model_worlds(*cm), 3);
  EXPECT_FALSE(find_countermodel(nbhd({NbhdProperty::Equivalence}), nb1, b));
  EXPECT_FALSE(find_countermodel(nbhd({NbhdProperty::NbCondition}), nb1, b));
}

TEST(Countermodel, DownsetFramesValidateTheSeparatingFormula) {
  SearchBudget b;
  b.max_worlds = 2;
  Formula f = parse("((p -> p) -> r) -> (q -> r)");
  auto res = search_countermodel(nbhd({NbhdProperty::Downset}), f, b);
  EXPECT_FALSE(res.found);
  EXPECT_EQ(res.exhaustive_up_to, 2);
  auto plain = find_countermodel(nbhd(), f, b);
  ASSERT_TRUE(plain);
  EXPECT_FALSE(truth(std::get<NbhdModel>(plain->model), plain->world, f));
}

TEST(Countermodel, ReturnedModelsRoundTripThroughJson) {
  SearchBudget b;
  auto k = find_countermodel(kripke(), parse("p -> (q -> p)"), b);
  ASSERT_TRUE(k);
  KripkeModel km = parse_kripke_model(k->to_json());
  EXPECT_FALSE(forces(km, k->world_name(), parse("p -> (q -> p)")));
  auto n = find_countermodel(nbhd(), parse("(p -> q) -> (p -> p & q)"), b);
  ASSERT_TRUE(n);
  NbhdModel nm = parse_nbhd_model(n->to_json());
  EXPECT_FALSE(truth(nm, n->world_name(), parse("(p -> q) -> (p -> p & q)")));
}

TEST(Countermodel, SearchIsDeterministic) {
  SearchBudget b;
  b.max_worlds = 4;
  b.seed = 42;
  Formula f = parse("(p -> q) -> ((q -> r) -> (p -> r))");
  auto a = search_countermodel(kripke({KripkeProperty::Reflexive}), f, b);
  auto c = search_countermodel(kripke({KripkeProperty::Reflexive}), f, b);
  ASSERT_EQ(bool(a.found), bool(c.found));
  if (a.found) EXPECT_EQ(a.found->to_json(), c.found->to_json());
  EXPECT_EQ(a.describe(), c.describe());
}

TEST(Countermodel, RandomModelsHaveTheirClassProperties) {
  std::mt19937_64 rng(5);
  std::set<KripkeProperty> all_k(std::begin(kAllKripkeProperties), std::end(kAllKripkeProperties));
  for (int i = 0; i < 100; ++i) {
    KripkeModel m = random_kripke_model(all_k, 1 + i % 5, {"p", "q"}, rng);
    for (auto p : all_k) EXPECT_TRUE(has_property(m, p));
  }
  for (auto p : kAllNbhdProperties) {
    NbhdModel m = random_nbhd_model({p}, 3, {"p"}, rng);
    EXPECT_TRUE(has_property(m.frame, p)) << property_name(p);
  }
}

TEST(Correspondence, IntersectionMatchesAxiomC) {
  auto r = correspondence_sweep("C", "intersection", 2, 2);
  EXPECT_EQ(r.rows.size(), 128u);
  EXPECT_TRUE(r.mismatches.empty()) << r.table();
  EXPECT_GT(r.with_property, 0u);
  EXPECT_LT(r.with_property, 128u);
}

TEST(Correspondence, SweepDetectsWrongPairing) {
  auto r = correspondence_sweep("C", "union", 2, 2);
  EXPECT_FALSE(r.mismatches.empty());
}

TEST(Correspondence, RuleNMatchesEquivalence) {
  auto r = correspondence_sweep("N", "equivalence", 2, 2);
  EXPECT_TRUE(r.rule);
  EXPECT_EQ(r.rows.size(), 128u);
  EXPECT_TRUE(r.mismatches.empty()) << r.table();
}

TEST(Correspondence, KripkeReflexiveUpToThreeWorlds) {
  auto r = correspondence_sweep("R", "reflexive", 3);
  EXPECT_EQ(r.rows.size(), 1u + 4u + 64u);
  EXPECT_TRUE(r.mismatches.empty()) << r.table();
}

TEST(Correspondence, PersistenceIsCheckedPerModel) {
  auto r = correspondence_sweep("P", "persistent", 2);
  EXPECT_TRUE(r.model_level);
  // one atom: 2 valuations on 1 world, 4 on each of the 4 two-world frames
  EXPECT_EQ(r.rows.size(), 2u + 16u);
  EXPECT_TRUE(r.mismatches.empty()) << r.table();
}

TEST(Correspondence, GroupNamesExpand) {
  EXPECT_EQ(lookup_scheme("N_b").axioms.size(), 2u);
  EXPECT_EQ(lookup_scheme("N").rules.size(), 2u);
  EXPECT_EQ(lookup_scheme("N2").rules.size(), 1u);
  EXPECT_THROW(lookup_scheme("nonsense"), RegistryError);
  EXPECT_EQ(default_semantics("T1"), SemanticsKind::Kripke);
  EXPECT_EQ(default_semantics("Chat"), SemanticsKind::Nbhd);
}

TEST(Separate, CanonicalAtoms) {
  EXPECT_EQ(canonical_atoms(parse("(r -> s) -> r")), parse("(p -> q) -> p"));
  EXPECT_EQ(canonical_atoms(parse("top -> x")), parse("top -> p"));
}

TEST(Separate, DhatSeparatesFromPlainWF) {
  SearchBudget b;
  b.max_formula_size = 5;
  b.max_rounds = 4;
  b.max_worlds = 2;
  auto t0 = std::chrono::steady_clock::now();
  auto rep = separate(get_logic("WF_imp"), get_logic("WFDhat_imp"), b);
  ASSERT_TRUE(rep.witness) << rep.table();
  // Smallest witness in canonical order: the I_R instance with r read as p.
  EXPECT_EQ(*rep.witness, parse("((p -> p) -> p) -> (q -> p)"));
  ASSERT_TRUE(rep.proof);
  EXPECT_TRUE(check_proof(*rep.proof, get_logic("WFDhat_imp")).accepted());
  NbhdModel m = std::get<NbhdModel>(rep.countermodel->model);
  EXPECT_FALSE(valid_on_model(m, *rep.witness));
  RecordProperty("seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

TEST(Separate, NoWitnessAgainstAnInclusion) {
  SearchBudget b;
  b.max_formula_size = 5;
  b.max_rounds = 4;
  b.max_worlds = 2;
  auto rep = separate(get_logic("WFDhat_imp"), get_logic("WF_imp"), b);
  EXPECT_FALSE(rep.witness);
  EXPECT_EQ(rep.candidates, 0u);
}

TEST(Separate, ReportsAreDeterministic) {
  SearchBudget b;
  b.max_formula_size = 4;
  b.max_rounds = 4;
  b.max_worlds = 2;
  auto a = separate(get_logic("WF_imp"), get_logic("WFDhat_imp"), b);
  auto c = separate(get_logic("WF_imp"), get_logic("WFDhat_imp"), b);
  EXPECT_EQ(a.to_json(), c.to_json());
}

TEST(Separate, RejectsFragmentOutsideALogic) {
  SearchBudget b;
  EXPECT_THROW(separate(get_logic("WF_imp"), get_logic("WFDhat_imp"), b, Fragment::Full), std::invalid_argument);
}

TEST(Separate, RuleNYieldsAnNbInstanceOverConjunctionFormulas) {
  SearchBudget b;
  b.max_formula_size = 5;
  b.max_rounds = 6;
  b.max_atoms = 2;
  auto rep = separate(get_logic("WF_impand"), get_logic("WF_N"), b, Fragment::ImpAnd);
  ASSERT_TRUE(rep.witness) << rep.table();
  Formula w = *rep.witness;
  bool nb_instance = !match_schema(standard_axiom("N_b1").schema, w).empty() ||
                     !match_schema(standard_axiom("N_b2").schema, w).empty();
  EXPECT_TRUE(nb_instance) << print(w);
  EXPECT_TRUE(check_proof(*rep.proof, get_logic("WF_N")).accepted());
}
