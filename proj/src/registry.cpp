#include "subint/registry.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace subint {

std::string_view mode_name(RuleMode m) {
  switch (m) {
    case RuleMode::Unrestricted:
      return "unrestricted";
    case RuleMode::TheoremOnly:
      return "theorem-only";
    case RuleMode::WeakMajor:
      return "weak-major";
  }
  return "?";
}

const AxiomSpec* LogicSpec::find_axiom(std::string_view n) const {
  for (auto& a : axioms)
    if (a.name == n) return &a;
  return nullptr;
}

const RuleSpec* LogicSpec::find_rule(std::string_view n) const {
  for (auto& r : rules)
    if (r.name == n) return &r;
  return nullptr;
}

AxiomSpec make_axiom(std::string name, std::string_view schema) {
  return AxiomSpec{std::move(name), Schema::parse(schema)};
}

RuleSpec make_rule(std::string name, const std::vector<std::string>& premises,
                   std::string_view conclusion, RuleMode mode, int major) {
  auto table = std::make_shared<MetaTable>();
  RuleSpec r;
  r.name = std::move(name);
  for (auto& p : premises) r.premises.push_back(Schema::parse(p, table));
  r.conclusion = Schema::parse(conclusion, table);
  r.mode = mode;
  r.major = major;
  for (int m : r.conclusion.metavars()) {
    bool bound = false;
    for (auto& p : r.premises)
      for (int pm : p.metavars()) bound = bound || pm == m;
    if (!bound) r.free_metas.push_back(m);
  }
  return r;
}

namespace {

const std::map<std::string, std::string, std::less<>>& axiom_texts() {
  static const std::map<std::string, std::string, std::less<>> texts = {
      {"id", "A -> A"},
      {"and_l", "A & B -> A"},
      {"and_r", "A & B -> B"},
      {"or_l", "A -> A | B"},
      {"or_r", "B -> A | B"},
      {"distrib", "A & (B | C) -> (A & B) | (A & C)"},
      {"imp_trans", "(A -> B) & (B -> C) -> (A -> C)"},
      {"imp_and", "(A -> B) & (A -> C) -> (A -> B & C)"},
      {"or_imp", "(A -> C) & (B -> C) -> (A | B -> C)"},
      {"bot_elim", "bot -> A"},
      {"T", "(A -> B) -> ((B -> C) -> (A -> C))"},
      {"T1", "(A -> B) -> (C -> (A -> B))"},
      {"T2", "(A -> B) -> ((B -> C) -> (A -> C))"},
      {"P_T", "A -> (B -> A)"},
      {"R", "A & (A -> B) -> B"},
      {"R_E", "(A -> (A -> B)) -> (A -> B)"},
      {"I", "(A -> B) & (B -> C) -> (A -> C)"},
      {"C", "(A -> B) & (A -> C) -> (A -> B & C)"},
      {"D", "(A -> C) & (B -> C) -> (A | B -> C)"},
      {"Chat", "(A -> B & C) -> (A -> B) & (A -> C)"},
      {"Dhat", "(A | B -> C) -> (A -> C) & (B -> C)"},
      {"N_b1", "(A -> B) -> (A -> A & B)"},
      {"N_b2", "(A -> A & B) -> (A -> B)"},
      {"C_W", "(A -> B) -> (C & A -> C & B)"},
  };
  return texts;
}

struct RuleText {
  std::vector<std::string> premises;
  std::string conclusion;
  RuleMode mode;
  int major = -1;
};

const std::map<std::string, RuleText, std::less<>>& rule_texts() {
  using M = RuleMode;
  static const std::map<std::string, RuleText, std::less<>> texts = {
      {"mp", {{"A", "A -> B"}, "B", M::WeakMajor, 1}},
      {"weaken", {{"A"}, "B -> A", M::TheoremOnly}},
      {"trans_tele", {{"..(B -> C)", "..(C -> D)"}, "..(B -> D)", M::TheoremOnly}},
      {"trans", {{"A -> B", "B -> C"}, "A -> C", M::TheoremOnly}},
      {"trans_u", {{"A -> B", "B -> C"}, "A -> C", M::Unrestricted}},
      {"equiv", {{"A -> B", "B -> A", "C -> D", "D -> C"}, "(A -> C) -> (B -> D)", M::TheoremOnly}},
      {"equiv_fwd",
       {{"A -> B", "B -> A", "C -> D", "D -> C"}, "(A -> C) -> (B -> D)", M::TheoremOnly}},
      {"equiv_bwd",
       {{"A -> B", "B -> A", "C -> D", "D -> C"}, "(B -> D) -> (A -> C)", M::TheoremOnly}},
      {"I_Refl", {{"..B", "..(B -> C)"}, "..C", M::Unrestricted}},
      {"I_Tran", {{"A -> (B -> C)", "A -> (C -> D)"}, "A -> (B -> D)", M::TheoremOnly}},
      {"I_L", {{"A -> B"}, "(C -> A) -> (C -> B)", M::TheoremOnly}},
      {"I_R", {{"A -> B"}, "(B -> C) -> (A -> C)", M::TheoremOnly}},
      {"I_LR", {{"A -> B", "C -> D"}, "(B -> C) -> (A -> D)", M::TheoremOnly}},
      {"and_intro", {{"A", "B"}, "A & B", M::Unrestricted}},
      {"and_intro_thm", {{"A", "B"}, "A & B", M::TheoremOnly}},
      {"imp_and_rule", {{"A -> B", "A -> C"}, "A -> B & C", M::TheoremOnly}},
      {"or_rule", {{"A -> C", "B -> C"}, "A | B -> C", M::TheoremOnly}},
      {"N_fwd",
       {{"A -> B | C", "C -> A | D", "A & C & D -> B", "A & C & B -> D"},
        "(A -> B) -> (C -> D)",
        M::TheoremOnly}},
      {"N_bwd",
       {{"A -> B | C", "C -> A | D", "A & C & D -> B", "A & C & B -> D"},
        "(C -> D) -> (A -> B)",
        M::TheoremOnly}},
      {"N2", {{"C -> A | D", "A & C & B -> D"}, "(A -> B) -> (C -> D)", M::TheoremOnly}},
      {"Nprime_fwd",
       {{"A -> B | C", "C -> A | D", "A & D -> B", "C & B -> D"},
        "(A -> B) -> (C -> D)",
        M::TheoremOnly}},
      {"Nprime_bwd",
       {{"A -> B | C", "C -> A | D", "A & D -> B", "C & B -> D"},
        "(C -> D) -> (A -> B)",
        M::TheoremOnly}},
      {"N2prime", {{"C -> A | D", "C & B -> D"}, "(A -> B) -> (C -> D)", M::TheoremOnly}},
  };
  return texts;
}

// Properties whose frames validate the component and, conversely, force it.
void add_correspondents(std::string_view component, SemanticsClass& sem) {
  using K = KripkeProperty;
  using N = NbhdProperty;
  if (sem.kind == SemanticsKind::Kripke) {
    static const std::map<std::string, std::vector<K>, std::less<>> k = {
        {"T", {K::Transitive}},  {"T1", {K::Transitive}},   {"T2", {K::Transitive}},
        {"R", {K::Reflexive}},   {"R_E", {K::Reflexive}},   {"I_Refl", {K::Reflexive}},
        {"P", {K::PersistentValuation}}, {"P_T", {K::Transitive, K::PersistentValuation}},
    };
    if (auto it = k.find(component); it != k.end()) sem.kripke.insert(it->second.begin(), it->second.end());
  } else if (sem.kind == SemanticsKind::Nbhd) {
    static const std::map<std::string, std::vector<N>, std::less<>> n = {
        {"I", {N::Transitive}},
        {"I_Tran", {N::Transitive}},
        {"trans_u", {N::Transitive}},
        {"C", {N::Intersection}},
        {"D", {N::Union}},
        {"Chat", {N::Upset}},
        {"I_L", {N::Upset}},
        {"Dhat", {N::Downset}},
        {"I_R", {N::Downset}},
        {"I_LR", {N::Upset, N::Downset}},
        {"N_b1", {N::NbCondition}},
        {"N_b2", {N::NbCondition}},
        {"C_W", {N::WeakIntersection}},
        {"N_fwd", {N::Equivalence}},
        {"N_bwd", {N::Equivalence}},
        {"Nprime_fwd", {N::Equivalence}},
        {"Nprime_bwd", {N::Equivalence}},
        {"N2", {N::SupersetEquivalence}},
        {"N2prime", {N::SupersetEquivalence}},
    };
    if (auto it = n.find(component); it != n.end()) sem.nbhd.insert(it->second.begin(), it->second.end());
  }
}

std::string squash_name(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '_' || c == '-' || c == ' ') continue;
    if (c == '^' && i + 1 < s.size()) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(s[i + 1])));
      out += "hat";
      ++i;
      continue;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

LogicSpec base_logic(std::string name, Fragment fr, SemanticsKind sk,
                     const std::vector<std::string>& axioms, const std::vector<std::string>& rules,
                     std::string description, const RegistryOptions& opts) {
  LogicSpec s;
  s.name = std::move(name);
  s.fragment = fr;
  s.semantics.kind = sk;
  s.description = std::move(description);
  for (auto& a : axioms) s.axioms.push_back(standard_axiom(a, opts));
  for (auto& r : rules) s.rules.push_back(standard_rule(r));
  return s;
}

LogicSpec with(LogicSpec base, std::string name, const std::vector<std::string>& axioms,
               const std::vector<std::string>& rules, std::string description,
               const RegistryOptions& opts) {
  std::vector<AxiomSpec> ax;
  std::vector<RuleSpec> rs;
  for (auto& a : axioms) ax.push_back(standard_axiom(a, opts));
  for (auto& r : rules) rs.push_back(standard_rule(r));
  LogicSpec out = extend(base, ax, rs);
  out.name = std::move(name);
  out.description = std::move(description);
  return out;
}

LogicSpec f_imp(const RegistryOptions& o) {
  return base_logic("F_imp", Fragment::ImpOnly, SemanticsKind::Kripke, {"id"},
                    {"mp", "weaken", "trans_tele"}, "implicational fragment of F", o);
}

LogicSpec f_impand(const RegistryOptions& o) {
  return base_logic("F_impand", Fragment::ImpAnd, SemanticsKind::Kripke,
                    {"id", "and_l", "and_r", "imp_and", "imp_trans"}, {"mp", "weaken", "and_intro"},
                    "implication-conjunction fragment of F", o);
}

LogicSpec f_full(const RegistryOptions& o) {
  LogicSpec s = base_logic("F_full", Fragment::Full, SemanticsKind::Kripke,
                    {"or_l", "or_r", "and_l", "and_r", "distrib", "imp_trans", "imp_and", "id", "or_imp"},
                    {"and_intro", "mp", "weaken"}, "basic logic of rooted Kripke frames", o);
  if (o.f_mp_unrestricted)
    for (auto& r : s.rules)
      if (r.name == "mp") r.mode = RuleMode::Unrestricted;
  return s;
}

LogicSpec wf_imp(const RegistryOptions& o) {
  return base_logic("WF_imp", Fragment::ImpOnly, SemanticsKind::Nbhd, {"id"},
                    {"mp", "weaken", "trans", "equiv"}, "implicational fragment of WF", o);
}

LogicSpec wf_impand(const RegistryOptions& o) {
  return base_logic("WF_impand", Fragment::ImpAnd, SemanticsKind::Nbhd, {"id", "and_l", "and_r"},
                    {"mp", "weaken", "trans", "equiv", "and_intro", "imp_and_rule"},
                    "implication-conjunction fragment of WF", o);
}

LogicSpec wf_full(const RegistryOptions& o) {
  return base_logic("WF", Fragment::Full, SemanticsKind::Nbhd,
                    {"or_l", "or_r", "and_l", "and_r", "distrib", "bot_elim", "id"},
                    {"imp_and_rule", "or_rule", "mp", "and_intro_thm", "weaken", "trans", "equiv_fwd",
                     "equiv_bwd"},
                    "basic logic of neighborhood frames", o);
}

struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  std::function<LogicSpec(const RegistryOptions&)> build;
};

const std::vector<CatalogEntry>& catalog() {
  using O = const RegistryOptions&;
  static const std::vector<CatalogEntry> entries = {
      {"F_imp", {"F_[->]"}, f_imp},
      {"FT_imp", {"FT2_imp"}, [](O o) { return with(f_imp(o), "FT_imp", {"T"}, {}, "F_imp + T", o); }},
      {"FT1_imp", {}, [](O o) { return with(f_imp(o), "FT1_imp", {"T1"}, {}, "F_imp + T1", o); }},
      {"FP_imp", {}, [](O o) { return with(f_imp(o), "FP_imp", {"P"}, {}, "F_imp + P", o); }},
      {"FP_T_imp",
       {"FPT_imp", "BPC_imp"},
       [](O o) { return with(f_imp(o), "FP_T_imp", {"P_T"}, {}, "F_imp + P_T", o); }},
      {"FR_imp", {}, [](O o) { return with(f_imp(o), "FR_imp", {}, {"I_Refl"}, "F_imp + I_Refl", o); }},
      {"FRT_imp",
       {"FTR_imp"},
       [](O o) { return with(f_imp(o), "FRT_imp", {"T"}, {"I_Refl"}, "F_imp + I_Refl + T", o); }},
      {"FRP_imp",
       {"FPR_imp"},
       [](O o) { return with(f_imp(o), "FRP_imp", {"P"}, {"I_Refl"}, "F_imp + I_Refl + P", o); }},
      {"F_impand", {}, f_impand},
      {"F_full", {"F"}, f_full},
      {"FR", {}, [](O o) { return with(f_full(o), "FR", {"R"}, {}, "F + R", o); }},
      {"FR_E", {}, [](O o) { return with(f_full(o), "FR_E", {"R_E"}, {}, "F + R_E", o); }},
      {"FT", {"FT2"}, [](O o) { return with(f_full(o), "FT", {"T2"}, {}, "F + T2", o); }},
      {"FT1", {}, [](O o) { return with(f_full(o), "FT1", {"T1"}, {}, "F + T1", o); }},
      {"FP", {}, [](O o) { return with(f_full(o), "FP", {"P"}, {}, "F + P", o); }},
      {"FP_T",
       {"FPT", "FTP", "BPC"},
       [](O o) { return with(f_full(o), "FP_T", {"P_T"}, {}, "F + P_T", o); }},
      {"FRT", {"FTR"}, [](O o) { return with(f_full(o), "FRT", {"R", "T2"}, {}, "F + R + T2", o); }},
      {"FRP", {"FPR"}, [](O o) { return with(f_full(o), "FRP", {"R", "P"}, {}, "F + R + P", o); }},
      {"WF_imp", {"WF_[->]"}, wf_imp},
      {"WF_imp_minus",
       {"WF_minus_imp"},
       [](O o) {
         return base_logic("WF_imp_minus", Fragment::ImpOnly, SemanticsKind::Nbhd, {"id"},
                           {"mp", "weaken", "trans"}, "WF_imp without the equivalence rule", o);
       }},
      {"WFI_imp",
       {},
       [](O o) { return with(wf_imp(o), "WFI_imp", {}, {"I_Tran", "trans_u"}, "WF_imp + I_Tran", o); }},
      {"WFChat_imp",
       {"WF^C_imp"},
       [](O o) { return with(wf_imp(o), "WFChat_imp", {}, {"I_L"}, "WF_imp + I_L", o); }},
      {"WFDhat_imp",
       {"WF^D_imp"},
       [](O o) { return with(wf_imp(o), "WFDhat_imp", {}, {"I_R"}, "WF_imp + I_R", o); }},
      {"WFChatDhat_imp",
       {"WF^C^D_imp"},
       [](O o) { return with(wf_imp(o), "WFChatDhat_imp", {}, {"I_LR"}, "WF_imp + I_LR", o); }},
      {"WF_impand", {}, wf_impand},
      {"WFC_impand", {}, [](O o) { return with(wf_impand(o), "WFC_impand", {"C"}, {}, "WF_impand + C", o); }},
      {"WFC_W_impand",
       {},
       [](O o) { return with(wf_impand(o), "WFC_W_impand", {"C_W"}, {}, "WF_impand + C_W", o); }},
      {"WFN_b_impand",
       {},
       [](O o) {
         return with(wf_impand(o), "WFN_b_impand", {"N_b1", "N_b2"}, {}, "WF_impand + N_b", o);
       }},
      {"WF", {"WF_full"}, wf_full},
      {"WF_N", {}, [](O o) { return with(wf_full(o), "WF_N", {}, {"N_fwd", "N_bwd"}, "WF + N", o); }},
      {"WF_N2", {}, [](O o) { return with(wf_full(o), "WF_N2", {}, {"N2"}, "WF + N2", o); }},
      {"WF_Nprime",
       {"WF_N'"},
       [](O o) { return with(wf_full(o), "WF_Nprime", {}, {"Nprime_fwd", "Nprime_bwd"}, "WF + N'", o); }},
      {"WF_N2prime",
       {"WF_N2'"},
       [](O o) { return with(wf_full(o), "WF_N2prime", {}, {"N2prime"}, "WF + N2'", o); }},
      {"WFI", {}, [](O o) { return with(wf_full(o), "WFI", {"I"}, {}, "WF + I", o); }},
      {"WFC", {}, [](O o) { return with(wf_full(o), "WFC", {"C"}, {}, "WF + C", o); }},
      {"WFD", {}, [](O o) { return with(wf_full(o), "WFD", {"D"}, {}, "WF + D", o); }},
      {"WFChat", {"WF^C"}, [](O o) { return with(wf_full(o), "WFChat", {"Chat"}, {}, "WF + C^", o); }},
      {"WFDhat", {"WF^D"}, [](O o) { return with(wf_full(o), "WFDhat", {"Dhat"}, {}, "WF + D^", o); }},
      {"WFChatDhat",
       {"WF^C^D"},
       [](O o) { return with(wf_full(o), "WFChatDhat", {"Chat", "Dhat"}, {}, "WF + C^ + D^", o); }},
      {"WFChatC", {"WF^CC"}, [](O o) { return with(wf_full(o), "WFChatC", {"Chat", "C"}, {}, "WF + C^ + C", o); }},
      {"WFN_b", {}, [](O o) { return with(wf_full(o), "WFN_b", {"N_b1", "N_b2"}, {}, "WF + N_b", o); }},
      {"WFC_W", {}, [](O o) { return with(wf_full(o), "WFC_W", {"C_W"}, {}, "WF + C_W", o); }},
      {"WF_NC",
       {},
       [](O o) { return with(wf_full(o), "WF_NC", {"C"}, {"N_fwd", "N_bwd"}, "WF + N + C", o); }},
  };
  return entries;
}

}  // namespace

AxiomSpec standard_axiom(std::string_view name, const RegistryOptions& opts) {
  if (name == "P")
    return make_axiom("P", opts.schematic_p ? "A -> (top -> A)" : "?X -> (top -> ?X)");
  auto it = axiom_texts().find(name);
  if (it == axiom_texts().end()) throw RegistryError("unknown axiom '" + std::string(name) + "'");
  return make_axiom(it->first, it->second);
}

RuleSpec standard_rule(std::string_view name) {
  auto it = rule_texts().find(name);
  if (it == rule_texts().end()) throw RegistryError("unknown rule '" + std::string(name) + "'");
  const RuleText& t = it->second;
  return make_rule(it->first, t.premises, t.conclusion, t.mode, t.major);
}

LogicSpec extend(const LogicSpec& base, const std::vector<AxiomSpec>& axioms,
                 const std::vector<RuleSpec>& rules, std::optional<Fragment> widen_to) {
  LogicSpec out = base;
  if (widen_to) {
    if (!fragment_le(base.fragment, *widen_to))
      throw RegistryError("extend cannot narrow the fragment of " + base.name);
    out.fragment = *widen_to;
  }
  for (auto& a : axioms) {
    if (!a.schema.in_fragment(out.fragment))
      throw RegistryError("axiom " + a.name + " lies outside " + std::string(fragment_name(out.fragment)));
    out.axioms.push_back(a);
    out.name += "+" + a.name;
    add_correspondents(a.name, out.semantics);
  }
  for (auto& r : rules) {
    bool ok = r.conclusion.in_fragment(out.fragment);
    for (auto& p : r.premises) ok = ok && p.in_fragment(out.fragment);
    if (!ok)
      throw RegistryError("rule " + r.name + " lies outside " + std::string(fragment_name(out.fragment)));
    out.rules.push_back(r);
    out.name += "+" + r.name;
    add_correspondents(r.name, out.semantics);
  }
  validate(out);
  return out;
}

void validate(const LogicSpec& spec) {
  for (auto& a : spec.axioms)
    if (!a.schema.in_fragment(spec.fragment))
      throw RegistryError(spec.name + ": axiom " + a.name + " outside fragment");
  for (auto& r : spec.rules) {
    if (!r.conclusion.in_fragment(spec.fragment))
      throw RegistryError(spec.name + ": rule " + r.name + " outside fragment");
    if (r.mode == RuleMode::WeakMajor) {
      if (r.major < 0 || r.major >= static_cast<int>(r.premises.size()))
        throw RegistryError(spec.name + ": rule " + r.name + " has no major premise");
      const SchemaNode& m = r.premises[r.major].root();
      if (m.kind != SchemaNode::Kind::Imp)
        throw RegistryError(spec.name + ": major premise of " + r.name + " is not an implication");
    }
    // Conclusion metavariables are either bound by a premise or declared free
    // (instantiated from the term universe during saturation).
    for (int m : r.conclusion.metavars()) {
      bool ok = std::find(r.free_metas.begin(), r.free_metas.end(), m) != r.free_metas.end();
      for (auto& p : r.premises)
        for (int pm : p.metavars()) ok = ok || pm == m;
      if (!ok) throw RegistryError(spec.name + ": unbound metavariable in " + r.name);
    }
  }
}

LogicSpec get_logic(std::string_view name, const RegistryOptions& opts) {
  std::string key = squash_name(name);
  for (auto& e : catalog()) {
    bool hit = squash_name(e.name) == key;
    for (auto& a : e.aliases) hit = hit || squash_name(a) == key;
    if (hit) {
      LogicSpec s = e.build(opts);
      validate(s);
      return s;
    }
  }
  std::string names;
  for (auto& e : catalog()) names += (names.empty() ? "" : ", ") + e.name;
  throw RegistryError("unknown logic '" + std::string(name) + "'; known logics: " + names);
}

std::vector<LogicSummary> list_logics() {
  std::vector<LogicSummary> out;
  for (auto& e : catalog()) {
    LogicSpec s = e.build(RegistryOptions{});
    out.push_back({e.name, s.fragment, s.semantics, e.aliases, s.description});
  }
  return out;
}

}  // namespace subint
