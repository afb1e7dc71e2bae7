// Catalog of Hilbert-style systems: axioms, rules and rule application modes.
//
// Application modes:
//   Unrestricted  premises may depend on assumptions;
//   TheoremOnly   every premise must be assumption-free;
//   WeakMajor     the designated premise (the implication) must be
//                 assumption-free, the others are unrestricted.
#ifndef SUBINT_REGISTRY_HPP
#define SUBINT_REGISTRY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subint/formula.hpp"
#include "subint/properties.hpp"
#include "subint/schema.hpp"

namespace subint {

enum class RuleMode : std::uint8_t { Unrestricted, TheoremOnly, WeakMajor };

std::string_view mode_name(RuleMode m);

struct AxiomSpec {
  std::string name;
  Schema schema;
};

struct RuleSpec {
  std::string name;
  std::vector<Schema> premises;
  Schema conclusion;
  RuleMode mode = RuleMode::TheoremOnly;
  int major = -1;  // WeakMajor: index of the implication premise
  // Conclusion metavariables that no premise binds (e.g. B in A / B -> A).
  std::vector<int> free_metas;

  const MetaTable& table() const { return conclusion.table(); }
};

struct LogicSpec {
  std::string name;
  Fragment fragment = Fragment::Full;
  std::vector<AxiomSpec> axioms;
  std::vector<RuleSpec> rules;
  SemanticsClass semantics;
  std::string description;

  const AxiomSpec* find_axiom(std::string_view name) const;
  const RuleSpec* find_rule(std::string_view name) const;
};

struct RegistryOptions {
  // Lift the letter restriction on axiom P so it applies to any formula.
  bool schematic_p = false;
  // Read modus ponens of the full logic F (and its Kripke extensions) as
  // unrestricted instead of weak.
  bool f_mp_unrestricted = false;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AxiomSpec make_axiom(std::string name, std::string_view schema);
// premises and conclusion share one metavariable table.
RuleSpec make_rule(std::string name, const std::vector<std::string>& premises,
                   std::string_view conclusion, RuleMode mode, int major = -1);

// Named building blocks ("T", "P", "I_Refl", "N_b1", ...), as used by the
// catalog. Throws RegistryError for unknown names.
AxiomSpec standard_axiom(std::string_view name, const RegistryOptions& opts = {});
RuleSpec standard_rule(std::string_view name);

LogicSpec get_logic(std::string_view name, const RegistryOptions& opts = {});

struct LogicSummary {
  std::string name;
  Fragment fragment;
  SemanticsClass semantics;
  std::vector<std::string> aliases;
  std::string description;
};
std::vector<LogicSummary> list_logics();

// Adds axioms and rules to base. The result keeps base's fragment unless
// widen_to is given; every addition must lie in the resulting fragment.
// Frame properties known to correspond to an added component are added to
// the semantics class.
LogicSpec extend(const LogicSpec& base, const std::vector<AxiomSpec>& axioms,
                 const std::vector<RuleSpec>& rules,
                 std::optional<Fragment> widen_to = std::nullopt);

// Consistency checks run for every catalog entry: fragment membership,
// WeakMajor premises are implications, metavariable limits.
void validate(const LogicSpec& spec);

}  // namespace subint

#endif
