// Shared lexer/parser for formulas and schemas. Produces an untyped tree that
// the formula and schema front ends convert into their own representations.
#ifndef SUBINT_SRC_SYNTAX_HPP
#define SUBINT_SRC_SYNTAX_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace subint::syntax {

enum class RawKind { Atom, Top, Bot, Imp, And, Or, Meta, AtomMeta, Tele };

struct RawNode {
  RawKind kind;
  std::string name;
  std::size_t pos = 0;
  std::unique_ptr<RawNode> left, right;  // Tele uses left as its body
};

// With schema_mode, uppercase identifiers become metavariables, "?X" becomes
// an atom-only metavariable and a ".." prefix marks a telescope position.
std::unique_ptr<RawNode> parse_raw(std::string_view text, bool schema_mode);

}  // namespace subint::syntax

#endif
