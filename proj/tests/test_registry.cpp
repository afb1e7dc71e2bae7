#include <gtest/gtest.h>

#include "subint/registry.hpp"

using namespace subint;

namespace {
bool listed(const std::string& name) {
  for (auto& s : list_logics()) {
    if (s.name == name) return true;
    for (auto& a : s.aliases)
      if (a == name) return true;
  }
  return false;
}
}  // namespace

TEST(Registry, FImp) {
  LogicSpec s = get_logic("F_imp");
  EXPECT_EQ(s.fragment, Fragment::ImpOnly);
  ASSERT_EQ(s.axioms.size(), 1u);
  EXPECT_EQ(s.axioms[0].schema.text(), "A -> A");
  ASSERT_EQ(s.rules.size(), 3u);
  EXPECT_EQ(s.rules[0].mode, RuleMode::WeakMajor);
  EXPECT_EQ(s.rules[0].major, 1);
  EXPECT_EQ(s.rules[1].mode, RuleMode::TheoremOnly);
  EXPECT_EQ(s.rules[2].mode, RuleMode::TheoremOnly);
  EXPECT_TRUE(s.rules[2].conclusion.telescoped());
}

TEST(Registry, WFImp) {
  LogicSpec s = get_logic("WF_imp");
  ASSERT_EQ(s.rules.size(), 4u);
  EXPECT_EQ(s.rules[0].mode, RuleMode::WeakMajor);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(s.rules[i].mode, RuleMode::TheoremOnly);
  EXPECT_EQ(s.rules[3].premises.size(), 4u);
  EXPECT_EQ(s.semantics.kind, SemanticsKind::Nbhd);
}

TEST(Registry, WFIImp) {
  LogicSpec s = get_logic("WFI_imp");
  ASSERT_NE(s.find_rule("I_Tran"), nullptr);
  EXPECT_EQ(s.find_rule("I_Tran")->mode, RuleMode::TheoremOnly);
  ASSERT_NE(s.find_rule("trans_u"), nullptr);
  EXPECT_EQ(s.find_rule("trans_u")->mode, RuleMode::Unrestricted);
  EXPECT_TRUE(s.semantics.nbhd.count(NbhdProperty::Transitive));
}

TEST(Registry, ExtendAddsComponentsAndProperties) {
  LogicSpec ft = extend(get_logic("F_imp"), {standard_axiom("T")}, {});
  EXPECT_EQ(ft.name, "F_imp+T");
  EXPECT_TRUE(ft.semantics.kripke.count(KripkeProperty::Transitive));
  EXPECT_EQ(ft.axioms.size(), 2u);

  LogicSpec fr = extend(get_logic("F_imp"), {}, {standard_rule("I_Refl")});
  EXPECT_EQ(fr.find_rule("I_Refl")->mode, RuleMode::Unrestricted);
  EXPECT_TRUE(fr.semantics.kripke.count(KripkeProperty::Reflexive));

  LogicSpec wfc = extend(get_logic("WF_impand"), {standard_axiom("C")}, {});
  EXPECT_TRUE(wfc.semantics.nbhd.count(NbhdProperty::Intersection));
}

TEST(Registry, ExtendRejectsFragmentViolation) {
  EXPECT_THROW(extend(get_logic("F_imp"), {standard_axiom("R")}, {}), RegistryError);
  EXPECT_NO_THROW(extend(get_logic("F_imp"), {standard_axiom("R")}, {}, Fragment::Full));
  EXPECT_THROW(extend(get_logic("F_full"), {}, {}, Fragment::ImpOnly), RegistryError);
}

TEST(Registry, ListContainsCatalogNames) {
  EXPECT_TRUE(listed("F_full"));
  EXPECT_TRUE(listed("WF_N"));
  EXPECT_TRUE(listed("BPC"));
  for (auto& s : list_logics())
    if (s.name == "F_full") {
      EXPECT_EQ(s.semantics.kind, SemanticsKind::Kripke);
      EXPECT_TRUE(s.semantics.kripke.empty());
    } else if (s.name == "WF_N") {
      EXPECT_EQ(s.semantics.nbhd, std::set<NbhdProperty>{NbhdProperty::Equivalence});
    }
}

TEST(Registry, CatalogClosure) {
  const char* names[] = {"F_imp", "FT_imp", "FT1_imp", "FT2_imp", "FP_imp", "FP_T_imp", "FR_imp",
                         "FRT_imp", "FRP_imp", "F_impand", "F", "FR", "FR_E", "FT", "FT1", "FT2",
                         "FP", "FP_T", "BPC", "FRT", "FRP", "WF_imp", "WF_imp_minus", "WFI_imp",
                         "WFChat_imp", "WFDhat_imp", "WFChatDhat_imp", "WF_impand", "WFC_impand",
                         "WFC_W_impand", "WFN_b_impand", "WF", "WF_N", "WF_N2", "WF_Nprime",
                         "WF_N2prime", "WFI", "WFC", "WFD", "WFChat", "WFDhat", "WFN_b", "WFC_W",
                         "WFChatDhat", "WF^C", "WF_Chat", "wf-n"};
  for (const char* n : names) EXPECT_NO_THROW(get_logic(n)) << n;
}

TEST(Registry, UnknownNameListsCatalog) {
  try {
    get_logic("nonsense");
    FAIL();
  } catch (const RegistryError& e) {
    EXPECT_NE(std::string(e.what()).find("WFDhat_imp"), std::string::npos);
  }
}

TEST(Registry, EveryConclusionMetavarBoundOrDeclaredFree) {
  for (auto& sum : list_logics()) {
    LogicSpec s = get_logic(sum.name);
    for (auto& r : s.rules)
      for (int m : r.conclusion.metavars()) {
        bool bound = false;
        for (auto& p : r.premises)
          for (int pm : p.metavars()) bound = bound || pm == m;
        bool declared = std::find(r.free_metas.begin(), r.free_metas.end(), m) != r.free_metas.end();
        EXPECT_NE(bound, declared) << s.name << "/" << r.name;
      }
  }
  // Only weakening introduces a fresh conclusion metavariable.
  EXPECT_EQ(standard_rule("weaken").free_metas.size(), 1u);
  EXPECT_TRUE(standard_rule("mp").free_metas.empty());
}

TEST(Registry, EveryFormulaInsideFragment) {
  for (auto& sum : list_logics()) {
    LogicSpec s = get_logic(sum.name);
    for (auto& a : s.axioms) EXPECT_TRUE(a.schema.in_fragment(s.fragment)) << s.name << a.name;
    for (auto& r : s.rules) {
      EXPECT_TRUE(r.conclusion.in_fragment(s.fragment));
      for (auto& p : r.premises) EXPECT_TRUE(p.in_fragment(s.fragment));
    }
  }
}

TEST(Registry, AxiomPLetterRestrictedUnlessFlagged) {
  EXPECT_EQ(get_logic("FP_imp").find_axiom("P")->schema.text(), "?X -> (top -> ?X)");
  RegistryOptions o;
  o.schematic_p = true;
  EXPECT_EQ(get_logic("FP_imp", o).find_axiom("P")->schema.text(), "A -> (top -> A)");
}

TEST(Registry, FModusPonensToggle) {
  EXPECT_EQ(get_logic("F_full").find_rule("mp")->mode, RuleMode::WeakMajor);
  RegistryOptions o;
  o.f_mp_unrestricted = true;
  EXPECT_EQ(get_logic("F_full", o).find_rule("mp")->mode, RuleMode::Unrestricted);
}
