#include "subint/search.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>

#include "subint/proof.hpp"

namespace subint {

using nlohmann::json;

void SearchBudget::validate() const {
  if (max_worlds < 1 || max_formula_size < 0 || max_rounds < 1 || sample_count < 1 || max_atoms < 1 ||
      term_size < 0)
    throw std::invalid_argument("search budget fields must be positive");
}

std::vector<std::string> canonical_atom_names(int n) {
  static const char* base[] = {"p", "q", "r", "s", "t", "u"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(i < 6 ? base[i] : "p" + std::to_string(i + 1));
  return out;
}

namespace {

Formula rename(Formula f, const std::map<std::string, std::string>& m) {
  switch (f.kind()) {
    case Connective::Atom: return Formula::atom(m.at(f.name()));
    case Connective::Top:
    case Connective::Bot: return f;
    default: return Formula::make(f.kind(), rename(f.left(), m), rename(f.right(), m));
  }
}

}  // namespace

Formula canonical_atoms(Formula f) {
  auto atoms = atoms_of(f);
  auto names = canonical_atom_names(static_cast<int>(atoms.size()));
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < atoms.size(); ++i) m[atoms[i]] = names[i];
  return rename(f, m);
}

// ---------------------------------------------------------------- models

std::string Countermodel::world_name() const {
  return std::visit([&](const auto& m) { return m.frame.worlds[world]; }, model);
}

std::string Countermodel::to_json() const {
  if (auto* k = std::get_if<KripkeModel>(&model)) return kripke_model_json(*k);
  return nbhd_model_json(std::get<NbhdModel>(model));
}

std::string CountermodelSearch::describe() const {
  std::ostringstream os;
  if (found)
    os << "countermodel with " << std::visit([](const auto& m) { return m.frame.size(); }, found->model)
       << " worlds, failing at " << found->world_name();
  else
    os << "no countermodel within budget";
  os << "; exhaustive up to " << exhaustive_up_to << " worlds";
  if (sampled_up_to > exhaustive_up_to) os << ", sampled up to " << sampled_up_to << " worlds";
  os << "; " << models_checked << " models checked; seed " << seed;
  return os.str();
}

namespace {

WorldSet reach_closure(const KripkeFrame& f, WorldSet s) {
  WorldSet prev = ~s;
  while (prev != s) {
    prev = s;
    for (int w = 0; w < f.size(); ++w)
      if ((s >> w) & 1u) s |= f.succ[w];
  }
  return s;
}

void close_kripke(KripkeFrame& f, const std::set<KripkeProperty>& props) {
  if (props.count(KripkeProperty::Reflexive))
    for (int w = 0; w < f.size(); ++w) f.succ[w] |= WorldSet{1} << w;
  if (props.count(KripkeProperty::Transitive))
    for (int w = 0; w < f.size(); ++w) f.succ[w] = reach_closure(f, f.succ[w]);
}

bool frame_ok(const KripkeFrame& f, const std::set<KripkeProperty>& props) {
  for (auto p : props)
    if (p != KripkeProperty::PersistentValuation && !has_property(f, p)) return false;
  return true;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Valuations of `atoms` over n worlds: all of them when there are few, else
// a seeded sample. Calls fn(V) until it returns true.
template <class Fn>
bool each_valuation(int n, const std::vector<std::string>& atoms, int samples, std::mt19937_64& rng, Fn&& fn) {
  WorldSet all = (WorldSet{1} << n) - 1;
  int bits = n * static_cast<int>(atoms.size());
  std::map<std::string, WorldSet> V;
  if (bits <= 16) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
      for (std::size_t a = 0; a < atoms.size(); ++a) V[atoms[a]] = (mask >> (a * n)) & all;
      if (fn(V)) return true;
    }
    return false;
  }
  for (int i = 0; i < samples; ++i) {
    for (auto& a : atoms) V[a] = rng() & all;
    if (fn(V)) return true;
  }
  return false;
}

int failing_world(WorldSet truth, WorldSet all, int root) {
  WorldSet bad = all & ~truth;
  if ((bad >> root) & 1u) return root;
  return std::countr_zero(bad);
}

}  // namespace

KripkeModel random_kripke_model(const std::set<KripkeProperty>& props, int n, const std::vector<std::string>& atoms,
                                std::mt19937_64& rng) {
  KripkeModel m;
  m.frame.worlds = default_world_names(n);
  m.frame.succ.assign(n, 0);
  m.frame.succ[0] = m.frame.all();
  for (int w = 1; w < n; ++w) m.frame.succ[w] = rng() & m.frame.all();
  close_kripke(m.frame, props);
  for (auto& a : atoms) {
    WorldSet s = rng() & m.frame.all();
    if (props.count(KripkeProperty::PersistentValuation)) s = reach_closure(m.frame, s);
    m.V[a] = s;
  }
  return m;
}

NbhdModel random_nbhd_model(const std::set<NbhdProperty>& props, int n, const std::vector<std::string>& atoms,
                            std::mt19937_64& rng) {
  static constexpr double densities[] = {0.02, 0.05, 0.1, 0.25};
  NbhdModel m;
  m.frame.worlds = default_world_names(n);
  m.frame.nb.assign(n, base_pairs(n));
  std::bernoulli_distribution coin(densities[rng() % 4]);
  PairSet base = m.frame.nb[0];
  for (int w = 1; w < n; ++w)
    for (std::size_t i = 0; i < (std::size_t{1} << (2 * n)); ++i)
      if (!base.test(i) && coin(rng)) m.frame.nb[w].set(i);
  close_under(m.frame, props);
  for (auto& a : atoms) m.V[a] = rng() & m.frame.all();
  return m;
}

CountermodelSearch search_countermodel(const SemanticsClass& cls, Formula f, const SearchBudget& b) {
  b.validate();
  CountermodelSearch out;
  out.seed = b.seed;
  auto atoms = atoms_of(f);
  auto verify = [&](Countermodel cm) {
    bool ok = std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, KripkeModel>) {
            for (auto p : cls.kripke)
              if (!has_property(m, p)) return false;
            return !forces(m, cm.world, f);
          } else {
            for (auto p : cls.nbhd)
              if (!has_property(m.frame, p)) return false;
            return !truth(m, cm.world, f);
          }
        },
        cm.model);
    if (!ok) throw std::logic_error("countermodel failed re-verification for " + print(f));
    out.found = std::move(cm);
  };

  if (cls.kind == SemanticsKind::Kripke) {
    bool persistent = cls.kripke.count(KripkeProperty::PersistentValuation) > 0;
    for (int n = 1; n <= b.max_worlds && !out.found; ++n) {
      std::mt19937_64 rng(mix(b.seed, n));
      auto try_model = [&](const KripkeModel& m) {
        if (persistent && !has_property(m, KripkeProperty::PersistentValuation)) return false;
        ++out.models_checked;
        WorldSet t = KripkeEvaluator(m).truth_set(f);
        if (t == m.frame.all()) return false;
        verify({m, failing_world(t, m.frame.all(), m.frame.root)});
        return true;
      };
      if (n <= kKripkeExhaustive) {
        for (auto& fr : enumerate_frames(n)) {
          if (!frame_ok(fr, cls.kripke)) continue;
          KripkeModel m{fr, {}};
          bool hit = each_valuation(n, atoms, b.sample_count, rng, [&](const auto& V) {
            m.V = V;
            return try_model(m);
          });
          if (hit) break;
        }
        if (!out.found) {
          if (n * static_cast<int>(atoms.size()) <= 16)
            out.exhaustive_up_to = n;
          else
            out.sampled_up_to = n;
        }
      } else {
        for (int i = 0; i < b.sample_count && !out.found; ++i) try_model(random_kripke_model(cls.kripke, n, atoms, rng));
        out.sampled_up_to = n;
      }
    }
  } else if (cls.kind == SemanticsKind::Nbhd) {
    for (int n = 1; n <= std::min(b.max_worlds, kMaxNbhdWorlds) && !out.found; ++n) {
      std::mt19937_64 rng(mix(b.seed, n));
      auto frames = enumerate_nbhd_frames(n, cls.nbhd, {b.sample_count, mix(b.seed, 100 + n)});
      for (auto& fr : frames) {
        NbhdModel m{fr, {}};
        bool hit = each_valuation(n, atoms, b.sample_count, rng, [&](const auto& V) {
          m.V = V;
          ++out.models_checked;
          WorldSet t = NbhdEvaluator(m).truth_set(f);
          if (t == m.frame.all()) return false;
          verify({m, failing_world(t, m.frame.all(), m.frame.root)});
          return true;
        });
        if (hit) break;
      }
      if (!out.found) {
        if (n <= kNbhdExhaustive && n * static_cast<int>(atoms.size()) <= 16)
          out.exhaustive_up_to = n;
        else
          out.sampled_up_to = n;
      }
    }
  }
  if (out.sampled_up_to < out.exhaustive_up_to) out.sampled_up_to = out.exhaustive_up_to;
  return out;
}

std::optional<Countermodel> find_countermodel(const SemanticsClass& cls, Formula f, const SearchBudget& b) {
  return search_countermodel(cls, f, b).found;
}

// ---------------------------------------------------------- correspondence

Scheme lookup_scheme(std::string_view component) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> axiom_groups = {
      {"N_b", {"N_b1", "N_b2"}}, {"Nb", {"N_b1", "N_b2"}}};
  static const std::map<std::string, std::vector<std::string>, std::less<>> rule_groups = {
      {"N", {"N_fwd", "N_bwd"}}, {"N'", {"Nprime_fwd", "Nprime_bwd"}}, {"Nprime", {"Nprime_fwd", "Nprime_bwd"}},
      {"N2'", {"N2prime"}}};
  Scheme s;
  s.name = std::string(component);
  if (auto it = axiom_groups.find(component); it != axiom_groups.end()) {
    for (auto& n : it->second) s.axioms.push_back(standard_axiom(n));
    return s;
  }
  if (auto it = rule_groups.find(component); it != rule_groups.end()) {
    for (auto& n : it->second) s.rules.push_back(standard_rule(n));
    return s;
  }
  try {
    s.axioms.push_back(standard_axiom(component));
    return s;
  } catch (const RegistryError&) {
  }
  try {
    s.rules.push_back(standard_rule(component));
    return s;
  } catch (const RegistryError&) {
  }
  throw RegistryError("unknown axiom or rule '" + std::string(component) + "'");
}

SemanticsKind default_semantics(std::string_view component) {
  static const std::set<std::string, std::less<>> kripke = {"T", "T1", "T2", "P", "P_T", "R", "R_E", "I_Refl"};
  return kripke.count(component) ? SemanticsKind::Kripke : SemanticsKind::Nbhd;
}

namespace {

// Each metavariable becomes the atom spelled by its lowercased name;
// telescopes are empty.
Formula fresh_instance(const Schema& s) {
  Assignment a;
  for (auto& name : s.table().names) {
    std::string atom = name;
    for (auto& c : atom) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    a.bindings[name] = Formula::atom(atom);
  }
  return instantiate(s, a);
}

template <class Model, class Eval>
bool scheme_holds(const Model& m, const std::vector<Formula>& axioms,
                  const std::vector<std::pair<std::vector<Formula>, Formula>>& rules) {
  Eval ev(m);
  const WorldSet all = m.frame.all();
  for (Formula a : axioms)
    if (ev.truth_set(a) != all) return false;
  for (auto& [prem, concl] : rules) {
    bool premises_valid = true;
    for (Formula p : prem) premises_valid = premises_valid && ev.truth_set(p) == all;
    if (premises_valid && ev.truth_set(concl) != all) return false;
  }
  return true;
}

}  // namespace

CorrespondenceReport correspondence_sweep(std::string_view component, std::string_view property, int max_worlds,
                                          int min_worlds, SemanticsKind semantics) {
  if (min_worlds < 1 || max_worlds < min_worlds) throw std::invalid_argument("bad world range");
  Scheme scheme = lookup_scheme(component);
  CorrespondenceReport r;
  r.component = scheme.name;
  r.semantics = semantics == SemanticsKind::None ? default_semantics(component) : semantics;
  r.min_worlds = min_worlds;
  r.max_worlds = max_worlds;
  r.rule = !scheme.rules.empty();

  std::vector<Formula> axioms;
  std::vector<std::pair<std::vector<Formula>, Formula>> rules;
  for (auto& a : scheme.axioms) axioms.push_back(fresh_instance(a.schema));
  for (auto& rs : scheme.rules) {
    std::vector<Formula> prem;
    for (auto& p : rs.premises) prem.push_back(fresh_instance(p));
    rules.emplace_back(prem, fresh_instance(rs.conclusion));
  }
  std::vector<std::string> atoms;
  auto add_atoms = [&](Formula f) {
    for (auto& a : atoms_of(f))
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
    r.instances.push_back(f);
  };
  for (Formula a : axioms) add_atoms(a);
  for (auto& [prem, concl] : rules) {
    for (Formula p : prem) add_atoms(p);
    add_atoms(concl);
  }

  auto push = [&](CorrespondenceRow row) {
    r.with_property += row.has_property;
    r.valid += row.scheme_valid;
    if (row.has_property != row.scheme_valid) r.mismatches.push_back(r.rows.size());
    r.rows.push_back(row);
  };

  if (r.semantics == SemanticsKind::Kripke) {
    KripkeProperty p = parse_kripke_property(property);
    r.property = std::string(property_name(p));
    r.model_level = p == KripkeProperty::PersistentValuation;
    for (int n = min_worlds; n <= max_worlds; ++n) {
      auto frames = enumerate_frames(n);
      for (std::size_t i = 0; i < frames.size(); ++i) {
        CorrespondenceRow row{n, static_cast<int>(i)};
        if (r.model_level) {
          int v = 0;
          for_each_valuation(frames[i], atoms, [&](const KripkeModel& m) {
            CorrespondenceRow mr{n, static_cast<int>(i), v++};
            mr.has_property = has_property(m, p);
            mr.scheme_valid = scheme_holds<KripkeModel, KripkeEvaluator>(m, axioms, rules);
            push(mr);
          });
          continue;
        }
        row.has_property = has_property(frames[i], p);
        row.scheme_valid = true;
        for_each_valuation(frames[i], atoms, [&](const KripkeModel& m) {
          if (row.scheme_valid) row.scheme_valid = scheme_holds<KripkeModel, KripkeEvaluator>(m, axioms, rules);
        });
        push(row);
      }
    }
  } else {
    NbhdProperty p = parse_nbhd_property(property);
    r.property = std::string(property_name(p));
    for (int n = min_worlds; n <= max_worlds; ++n) {
      auto frames = enumerate_nbhd_frames(n, {});
      for (std::size_t i = 0; i < frames.size(); ++i) {
        CorrespondenceRow row{n, static_cast<int>(i)};
        row.has_property = has_property(frames[i], p);
        row.scheme_valid = true;
        for (auto& m : enumerate_valuations(frames[i], atoms))
          if (!scheme_holds<NbhdModel, NbhdEvaluator>(m, axioms, rules)) {
            row.scheme_valid = false;
            break;
          }
        push(row);
      }
    }
  }
  return r;
}

namespace {

std::string_view semantics_word(SemanticsKind k) {
  return k == SemanticsKind::Kripke ? "kripke" : k == SemanticsKind::Nbhd ? "nbhd" : "none";
}

}  // namespace

std::string CorrespondenceReport::table() const {
  std::ostringstream os;
  os << "scheme " << component << " vs " << property << " (" << semantics_word(semantics) << ", " << min_worlds
     << ".." << max_worlds << " worlds, " << (model_level ? "per model" : "per frame")
     << (rule ? ", validity preservation" : "") << ")\n";
  for (Formula f : instances) os << "  instance " << print(f) << "\n";
  os << (model_level ? "models " : "frames ") << rows.size() << "  with property " << with_property
     << "  scheme valid " << valid << "  mismatches " << mismatches.size() << "\n";
  for (std::size_t i : mismatches) {
    auto& row = rows[i];
    os << "  mismatch: worlds " << row.worlds << " frame " << row.frame;
    if (row.valuation >= 0) os << " valuation " << row.valuation;
    os << " property " << (row.has_property ? "yes" : "no") << " scheme " << (row.scheme_valid ? "valid" : "invalid")
       << "\n";
  }
  return os.str();
}

std::string CorrespondenceReport::to_json() const {
  json j;
  j["component"] = component;
  j["property"] = property;
  j["semantics"] = semantics_word(semantics);
  j["model_level"] = model_level;
  j["rule"] = rule;
  j["min_worlds"] = min_worlds;
  j["max_worlds"] = max_worlds;
  j["instances"] = json::array();
  for (Formula f : instances) j["instances"].push_back(print(f));
  j["rows"] = rows.size();
  j["with_property"] = with_property;
  j["scheme_valid"] = valid;
  j["mismatches"] = json::array();
  for (std::size_t i : mismatches) {
    auto& row = rows[i];
    j["mismatches"].push_back({{"worlds", row.worlds},
                               {"frame", row.frame},
                               {"valuation", row.valuation},
                               {"has_property", row.has_property},
                               {"scheme_valid", row.scheme_valid}});
  }
  return j.dump(2);
}

// -------------------------------------------------------------- separation

SeparationReport separate(const LogicSpec& weaker, const LogicSpec& stronger, const SearchBudget& b,
                          std::optional<Fragment> fragment) {
  b.validate();
  Fragment common = fragment_le(weaker.fragment, stronger.fragment) ? weaker.fragment : stronger.fragment;
  Fragment frag = fragment.value_or(common);
  if (!fragment_le(frag, weaker.fragment) || !fragment_le(frag, stronger.fragment))
    throw std::invalid_argument("incompatible fragments: " + std::string(fragment_name(frag)) + " is not inside both " +
                                weaker.name + " and " + stronger.name);
  SeparationReport rep;
  rep.weaker = weaker.name;
  rep.stronger = stronger.name;
  rep.fragment = frag;
  rep.budget = b;

  Budget sb;
  sb.max_size = b.max_formula_size;
  sb.max_rounds = b.max_rounds;
  sb.term_size = b.term_size;
  sb.atoms = canonical_atom_names(b.max_atoms);
  ClosureSet strong = saturate(stronger, {}, sb);
  ClosureSet weak = saturate(weaker, {}, sb);

  std::vector<Formula> cands;
  for (Formula f : strong.theorems())
    if (in_fragment(f, frag) && canonical_atoms(f) == f && !weak.theorem(f)) cands.push_back(f);
  std::sort(cands.begin(), cands.end(), [](Formula x, Formula y) { return compare(x, y) < 0; });
  rep.candidates = cands.size();
  rep.exhaustive_up_to = b.max_formula_size;

  for (Formula f : cands) {
    auto cm = weaker.semantics.kind == SemanticsKind::None ? std::nullopt : find_countermodel(weaker.semantics, f, b);
    if (!cm) {
      rep.unconfirmed.push_back(f);
      continue;
    }
    auto script = strong.extract(f);
    if (!script || !check_proof(*script, stronger).accepted())
      throw std::logic_error("separation witness " + print(f) + " has no checkable proof");
    rep.witness = f;
    rep.proof = std::move(script);
    rep.countermodel = std::move(cm);
    rep.exhaustive_up_to = f.size() - 1;
    break;
  }
  return rep;
}

std::string SeparationReport::table() const {
  std::ostringstream os;
  os << "separate " << weaker << " < " << stronger << " in " << fragment_name(fragment) << "\n";
  os << "budget: size " << budget.max_formula_size << ", rounds " << budget.max_rounds << ", atoms "
     << budget.max_atoms << ", worlds " << budget.max_worlds << ", samples " << budget.sample_count << ", seed "
     << budget.seed << "\n";
  os << "candidates (theorems of " << stronger << " missing from " << weaker << " within budget): " << candidates
     << "\n";
  if (witness) {
    os << "witness: " << print(*witness) << "\n";
    os << "countermodel in " << weaker << " semantics fails at world " << countermodel->world_name() << "\n";
    os << "proof in " << stronger << ":\n" << format_script(*proof);
  } else {
    os << "no witness within budget; every candidate up to size " << exhaustive_up_to << " lacks a countermodel\n";
  }
  for (std::size_t i = 0; i < unconfirmed.size() && i < 10; ++i)
    os << "unconfirmed: " << print(unconfirmed[i]) << "\n";
  if (unconfirmed.size() > 10) os << "unconfirmed: ... " << unconfirmed.size() - 10 << " more\n";
  return os.str();
}

std::string SeparationReport::to_json() const {
  json j;
  j["weaker"] = weaker;
  j["stronger"] = stronger;
  j["fragment"] = fragment_name(fragment);
  j["budget"] = {{"max_formula_size", budget.max_formula_size}, {"max_rounds", budget.max_rounds},
                 {"max_atoms", budget.max_atoms},               {"term_size", budget.term_size},
                 {"max_worlds", budget.max_worlds},             {"sample_count", budget.sample_count},
                 {"seed", budget.seed}};
  j["candidates"] = candidates;
  j["exhaustive_up_to"] = exhaustive_up_to;
  j["within_budget"] = true;
  if (witness) {
    j["witness"] = print(*witness);
    j["proof"] = format_script(*proof);
    j["countermodel"] = json::parse(countermodel->to_json());
    j["countermodel_world"] = countermodel->world_name();
  } else {
    j["witness"] = nullptr;
  }
  j["unconfirmed"] = json::array();
  for (Formula f : unconfirmed) j["unconfirmed"].push_back(print(f));
  return j.dump(2);
}

const std::vector<ConjecturePreset>& conjecture_presets() {
  static const std::vector<ConjecturePreset> presets = {
      {"WF-vs-WF_N", "WF", "WF_N", Fragment::ImpOnly},
      {"WF-vs-WFI", "WF", "WFI", Fragment::ImpOnly},
      {"WF-vs-WFChat", "WF", "WFChat", Fragment::ImpOnly},
      {"WFChatDhat-vs-WF_N2", "WFChatDhat", "WF_N2", Fragment::ImpOnly},
  };
  return presets;
}

}  // namespace subint
