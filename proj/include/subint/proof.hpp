// Proof scripts and the proof checker.
//
// Script file format (one item per line, '#' starts a comment):
//   logic: <name>
//   option: schematic-P | f-mp-unrestricted
//   assume: <formula>              (repeatable; the assumption list)
//   hypothesis: <formula>          (repeatable; premises treated as theorems)
//   <n>. <formula> ; axiom <name> [A=<formula>, ..=<formula>, ...]
//   <n>. <formula> ; assume
//   <n>. <formula> ; hypothesis
//   <n>. <formula> ; rule <name> <n1>,<n2>,... [bindings]
// Bindings are optional; "..=" entries list telescope arguments in order.
#ifndef SUBINT_PROOF_HPP
#define SUBINT_PROOF_HPP

#include <optional>
#include <string>
#include <vector>

#include "subint/formula.hpp"
#include "subint/registry.hpp"
#include "subint/schema.hpp"

namespace subint {

struct Justification {
  enum class Kind : std::uint8_t { Axiom, Assumption, Hypothesis, Rule };
  Kind kind = Kind::Assumption;
  std::string name;             // axiom or rule name
  std::vector<int> premises;    // step numbers, in the rule's premise order
  std::optional<Assignment> assignment;
};

struct ProofLine {
  int index = 0;
  Formula formula;
  Justification just;
};

struct ProofScript {
  std::string logic;
  RegistryOptions options;
  std::vector<Formula> assumptions;
  std::vector<Formula> hypotheses;
  std::vector<ProofLine> lines;

  Formula conclusion() const { return lines.empty() ? Formula() : lines.back().formula; }
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(const std::string& msg, int line) : std::runtime_error(msg), line_(line) {}
  int line() const { return line_; }  // 1-based line of the script text

 private:
  int line_;
};

ProofScript parse_script(std::string_view text);
ProofScript load_script(const std::string& path);
std::string format_script(const ProofScript& script);

struct Verdict {
  enum class Status : std::uint8_t { Accepted, Rejected };
  Status status = Status::Rejected;
  int line = 0;  // step number of the earliest failing line (Rejected)
  std::string reason;
  Formula conclusion;

  bool accepted() const { return status == Status::Accepted; }
};

Verdict check_proof(const ProofScript& script);
Verdict check_proof(const ProofScript& script, const LogicSpec& logic);

// Returns a binding under which the rule's premises instantiate to premises
// and its conclusion to conclusion (and which agrees with given, when set).
std::optional<Binding> match_rule(const RuleSpec& rule, const std::vector<Formula>& premises,
                                  Formula conclusion, const std::optional<Assignment>& given = {});
std::optional<Binding> match_axiom(const AxiomSpec& axiom, Formula f,
                                   const std::optional<Assignment>& given = {});

}  // namespace subint

#endif
