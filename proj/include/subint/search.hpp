// Countermodel search, correspondence sweeps and separation mining.
#ifndef SUBINT_SEARCH_HPP
#define SUBINT_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "subint/formula.hpp"
#include "subint/kripke.hpp"
#include "subint/nbhd.hpp"
#include "subint/properties.hpp"
#include "subint/registry.hpp"
#include "subint/saturate.hpp"

namespace subint {

struct SearchBudget {
  int max_worlds = 3;
  int max_formula_size = 5;
  int max_rounds = 8;
  int sample_count = 200;
  std::uint64_t seed = 1;
  // Saturation parameters used by separate().
  int max_atoms = 3;
  int term_size = 1;

  void validate() const;  // throws std::invalid_argument unless all positive
};

// Frames with at most this many worlds are enumerated exhaustively.
inline constexpr int kKripkeExhaustive = 3;
inline constexpr int kNbhdExhaustive = 2;

struct Countermodel {
  std::variant<KripkeModel, NbhdModel> model;
  int world = 0;  // a world where the formula fails

  SemanticsKind kind() const { return model.index() == 0 ? SemanticsKind::Kripke : SemanticsKind::Nbhd; }
  std::string world_name() const;
  std::string to_json() const;  // the model file format of its semantics
};

struct CountermodelSearch {
  std::optional<Countermodel> found;
  int exhaustive_up_to = 0;  // every model up to this many worlds was checked
  int sampled_up_to = 0;     // larger sizes were sampled, up to this many worlds
  std::uint64_t models_checked = 0;
  std::uint64_t seed = 0;

  std::string describe() const;
};

// Searches the models of `cls` (its kind and required properties) for one
// falsifying f at some world. A returned model has been re-verified with a
// fresh evaluator and satisfies the class properties.
CountermodelSearch search_countermodel(const SemanticsClass& cls, Formula f, const SearchBudget& b);
std::optional<Countermodel> find_countermodel(const SemanticsClass& cls, Formula f, const SearchBudget& b);

// Random models of a class with n worlds over the given atoms. Nbhd frames
// are closed under the required properties, Kripke frames under reflexive
// and transitive closure, and persistent valuations are upward closed.
KripkeModel random_kripke_model(const std::set<KripkeProperty>& props, int n, const std::vector<std::string>& atoms,
                                std::mt19937_64& rng);
NbhdModel random_nbhd_model(const std::set<NbhdProperty>& props, int n, const std::vector<std::string>& atoms,
                            std::mt19937_64& rng);

// An axiom or rule scheme given by a catalog component name. Group names
// expand to their halves: "N_b" to N_b1 and N_b2, "N" to N_fwd and N_bwd,
// "N'" to Nprime_fwd and Nprime_bwd.
struct Scheme {
  std::string name;
  std::vector<AxiomSpec> axioms;
  std::vector<RuleSpec> rules;
};
Scheme lookup_scheme(std::string_view component);
// Kripke for T, T1, T2, P, P_T, R, R_E and I_Refl; Nbhd otherwise.
SemanticsKind default_semantics(std::string_view component);

struct CorrespondenceRow {
  int worlds = 0;
  int frame = 0;              // index within the frames of that size
  int valuation = -1;         // model-level rows only
  bool has_property = false;
  bool scheme_valid = false;
};

struct CorrespondenceReport {
  std::string component;
  std::string property;
  SemanticsKind semantics = SemanticsKind::None;
  bool model_level = false;   // rows are models instead of frames
  bool rule = false;          // validity preservation instead of validity
  int min_worlds = 1, max_worlds = 1;
  std::vector<Formula> instances;  // canonical instances, fresh atoms
  std::vector<CorrespondenceRow> rows;
  std::size_t with_property = 0, valid = 0;
  std::vector<std::size_t> mismatches;  // indices into rows

  std::string table() const;
  std::string to_json() const;
};

// Checks, for every frame with min_worlds..max_worlds worlds, that the frame
// has the property iff the scheme's canonical instance is valid on it under
// every valuation of its atoms. Rule schemes are checked per model: premises
// valid on the model imply the conclusion valid on it. Persistence is a
// valuation property, so P-style sweeps also work per model.
CorrespondenceReport correspondence_sweep(std::string_view component, std::string_view property, int max_worlds,
                                          int min_worlds = 1,
                                          SemanticsKind semantics = SemanticsKind::None);

struct SeparationReport {
  std::string weaker, stronger;
  Fragment fragment = Fragment::ImpOnly;
  SearchBudget budget;
  std::optional<Formula> witness;
  std::optional<ProofScript> proof;          // of the witness in the stronger logic
  std::optional<Countermodel> countermodel;  // for the witness, in the weaker logic's class
  int exhaustive_up_to = 0;  // every candidate up to this size was examined
  std::size_t candidates = 0;  // stronger theorems missing from the weaker saturation
  std::vector<Formula> unconfirmed;  // candidates without a countermodel within budget

  std::string table() const;
  std::string to_json() const;
};

// Candidate witnesses are the stronger logic's saturated theorems inside the
// common fragment (or `fragment` if given), with canonical atom names, in
// order of size and then structure, that are missing from the weaker
// logic's saturation at the same budget. The first candidate with a
// countermodel in the weaker logic's semantics class is the witness.
SeparationReport separate(const LogicSpec& weaker, const LogicSpec& stronger, const SearchBudget& b,
                          std::optional<Fragment> fragment = std::nullopt);

struct ConjecturePreset {
  std::string name, weaker, stronger;
  Fragment fragment;
};
const std::vector<ConjecturePreset>& conjecture_presets();

// Renames atoms by first occurrence to p, q, r, s, ...
Formula canonical_atoms(Formula f);
std::vector<std::string> canonical_atom_names(int n);

}  // namespace subint

#endif
