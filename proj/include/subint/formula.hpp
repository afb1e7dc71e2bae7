// Propositional formulas over atoms, top, bot and the connectives ->, &, |.
//
// Formulas are hash-consed: structurally equal formulas share one node, so
// equality and hashing are O(1). Nodes live for the whole process and are
// never mutated, which makes Formula a cheap, thread-safe value type.
#ifndef SUBINT_FORMULA_HPP
#define SUBINT_FORMULA_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subint {

enum class Connective : std::uint8_t { Atom, Top, Bot, Imp, And, Or };

namespace detail {
struct Node {
  Connective kind;
  std::uint16_t size;  // number of binary connectives
  std::uint64_t hash;
  const Node* left;
  const Node* right;
  std::string name;  // atoms only
};
}  // namespace detail

class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string_view name);
  static Formula top();
  static Formula bot();
  static Formula imp(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula make(Connective c, Formula a, Formula b);

  // Returns the existing node for c(a, b), or a null Formula if no such
  // formula has ever been built. Never allocates.
  static Formula lookup(Connective c, Formula a, Formula b);

  Connective kind() const { return n_->kind; }
  bool is(Connective c) const { return n_ && n_->kind == c; }
  bool is_binary() const {
    return n_->kind == Connective::Imp || n_->kind == Connective::And ||
           n_->kind == Connective::Or;
  }
  Formula left() const { return Formula(n_->left); }
  Formula right() const { return Formula(n_->right); }
  const std::string& name() const { return n_->name; }
  int size() const { return n_->size; }
  std::uint64_t hash() const { return n_->hash; }
  const detail::Node* node() const { return n_; }

  explicit operator bool() const { return n_ != nullptr; }
  friend bool operator==(Formula a, Formula b) { return a.n_ == b.n_; }

 private:
  explicit Formula(const detail::Node* n) : n_(n) {}
  const detail::Node* n_ = nullptr;
};

// Deterministic structural total order: size, then constructor, then atom
// name, then children left to right. Independent of allocation order.
int compare(Formula a, Formula b);
struct FormulaLess {
  bool operator()(Formula a, Formula b) const { return compare(a, b) < 0; }
};

enum class Fragment : std::uint8_t { ImpOnly, ImpAnd, Full };

std::string_view fragment_name(Fragment f);
Fragment parse_fragment(std::string_view s);
bool in_fragment(Formula f, Fragment fr);
// Smallest fragment containing f.
Fragment fragment_of(Formula f);
bool fragment_le(Fragment a, Fragment b);
bool admits(Fragment fr, Connective c);

// args[0] -> (args[1] -> ... -> (args[n-1] -> body)); body when args is empty.
Formula telescope(std::span<const Formula> args, Formula body);

int imp_depth(Formula f);  // length of the right spine of implications
std::vector<std::string> atoms_of(Formula f);  // first-occurrence order
void collect_subformulas(Formula f, std::vector<Formula>& out);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class FragmentError : public std::runtime_error {
 public:
  FragmentError(Connective offending, Fragment fragment);
  Connective offending() const { return offending_; }

 private:
  Connective offending_;
};

std::string_view connective_symbol(Connective c);

Formula parse(std::string_view text, Fragment fragment = Fragment::Full);
std::string print(Formula f);

}  // namespace subint

template <>
struct std::hash<subint::Formula> {
  std::size_t operator()(subint::Formula f) const noexcept {
    return static_cast<std::size_t>(f.hash());
  }
};

#endif  // SUBINT_FORMULA_HPP
