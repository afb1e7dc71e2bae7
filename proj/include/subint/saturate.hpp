// Bounded forward saturation with a theorem stratum and an assumption stratum.
//
// Stratum T holds the theorems: axiom instances closed under every rule.
// Stratum D holds Gamma together with T, closed under the unrestricted rules
// and under weak-major rules whose major premise is a theorem.
//
// Axiom instances and metavariables that occur only in a rule's conclusion
// (B in A / B -> A) are drawn from a finite term universe: every formula of
// the logic's fragment over the budget atoms with at most term_size
// connectives, plus the seed formulas and their subformulas.
#ifndef SUBINT_SATURATE_HPP
#define SUBINT_SATURATE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "subint/formula.hpp"
#include "subint/proof.hpp"
#include "subint/registry.hpp"

namespace subint {

struct Budget {
  int max_size = 5;    // connectives per derived formula
  int max_rounds = 6;  // rule-application rounds per stratum
  int term_size = 2;   // connectives per term-universe formula
  std::vector<std::string> atoms;  // empty: atoms of Gamma, goal and seeds, else {p}
  bool with_top = false;
  bool with_bot = false;
  std::vector<Formula> seeds;
  std::size_t max_facts = 2'000'000;

  std::string describe() const;
};

struct Fact {
  enum class Kind : std::uint8_t { Axiom, Assumption, Rule };
  Formula formula;
  Kind kind = Kind::Axiom;
  std::int16_t index = 0;  // axiom or rule position in the LogicSpec
  std::int8_t npremises = 0;
  bool theorem = true;
  std::int32_t premises[4] = {-1, -1, -1, -1};
  std::int32_t round = 0;
};

namespace detail {
struct Stratum;
}

class ClosureSet {
 public:
  const LogicSpec& logic() const { return *logic_; }
  const std::vector<Formula>& assumptions() const { return gamma_; }
  const Budget& budget() const { return budget_; }

  bool derived(Formula f) const;
  bool theorem(Formula f) const;
  std::vector<Formula> theorems() const;      // in derivation order
  std::vector<Formula> derived_set() const;   // theorems first, then the rest
  std::size_t theorem_count() const;
  std::size_t derived_count() const;

  // True when both strata reached a fixpoint inside the size bound without
  // hitting the round or fact limits.
  bool saturated() const { return theorems_saturated_ && derived_saturated_; }
  bool theorems_saturated() const { return theorems_saturated_; }
  int rounds_used() const { return rounds_used_; }

  std::optional<int> id_of(Formula f) const;
  const Fact& fact(int id) const;

  // A script for f using only the recorded justifications; nullopt if f is
  // not derived.
  std::optional<ProofScript> extract(Formula f) const;

 private:
  friend ClosureSet saturate_impl(const LogicSpec&, const std::vector<Formula>&, const Budget&, Formula);
  std::shared_ptr<const LogicSpec> logic_;
  std::vector<Formula> gamma_;
  Budget budget_;
  std::shared_ptr<const detail::Stratum> thm_;
  std::shared_ptr<const detail::Stratum> der_;
  bool theorems_saturated_ = false;
  bool derived_saturated_ = false;
  int rounds_used_ = 0;
};

ClosureSet saturate(const LogicSpec& logic, const std::vector<Formula>& gamma, const Budget& budget);

struct DeriveResult {
  enum class Status : std::uint8_t { Proved, NotWithinBudget };
  Status status = Status::NotWithinBudget;
  std::optional<ProofScript> script;
  bool proved() const { return status == Status::Proved; }
};

// Saturates with the goal and its subformulas added to the term universe and
// stops as soon as the goal is derived. A Proved script always re-checks.
DeriveResult derives(const LogicSpec& logic, const std::vector<Formula>& gamma, Formula goal,
                     const Budget& budget);

// True iff f = B1 -> (... -> (Bn -> (A -> A))) for some n >= 0.
bool shape_wfminus(Formula f);

// Closure-condition failures of a finite candidate theory, witnessed inside
// the budget: (a) a telescoped-transitivity step (or an unrestricted rule
// step) on candidate members whose conclusion is missing, (b) a theorem
// A -> B with A in the candidate but B missing, (c) a theorem of the logic
// missing from the candidate.
struct TheoryViolation {
  char condition;  // 'a', 'b' or 'c'
  Formula missing;
  std::string rule;
  std::vector<Formula> premises;
};
std::vector<TheoryViolation> theory_violations(const LogicSpec& logic, const std::vector<Formula>& candidate,
                                               const Budget& budget);

// Worker count from SUBINT_THREADS (default 1).
int worker_count();

}  // namespace subint

#endif
