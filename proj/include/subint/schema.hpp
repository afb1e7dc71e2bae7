// Axiom and rule templates: formulas whose leaves may be metavariables
// (uppercase names, "?X" for letter-only ones) or a telescope position
// written "..X", standing for A1 -> (A2 -> ... -> (An -> X)) with n >= 0.
#ifndef SUBINT_SCHEMA_HPP
#define SUBINT_SCHEMA_HPP

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "subint/formula.hpp"

namespace subint {

inline constexpr int kMaxMetavars = 8;

// Metavariable names shared by all schemas of one axiom or rule.
struct MetaTable {
  std::vector<std::string> names;
  std::vector<bool> letter_only;
  int index_of(std::string_view name) const;
  int intern(std::string_view name, bool letter_only);
};

struct SchemaNode {
  enum class Kind : std::uint8_t { Meta, Tele, Ground, Imp, And, Or };
  Kind kind;
  int meta = -1;           // Meta
  bool letter_only = false;
  Formula ground;          // Ground: a metavariable-free subtree
  std::shared_ptr<const SchemaNode> left, right;  // Tele keeps its body in left
  bool closed = false;     // no metavariables or telescopes below
  int fixed_size = 0;      // connectives contributed by the template itself
};

struct Assignment {
  std::map<std::string, Formula> bindings;
  std::vector<Formula> telescope_args;
  bool operator==(const Assignment&) const = default;
};

// Internal binding state: slots indexed by MetaTable position.
struct Binding {
  std::array<Formula, kMaxMetavars> slot{};
  std::vector<Formula> tele;
  bool tele_bound = false;
};

class Schema {
 public:
  Schema() = default;
  static Schema parse(std::string_view text);
  static Schema parse(std::string_view text, const std::shared_ptr<MetaTable>& table);

  const SchemaNode& root() const { return *root_; }
  const MetaTable& table() const { return *table_; }
  const std::shared_ptr<MetaTable>& table_ptr() const { return table_; }
  // Metavariable indices that occur in this schema, in first-occurrence order.
  const std::vector<int>& metavars() const { return metas_; }
  std::vector<std::string> metavar_names() const;
  bool telescoped() const { return tele_count_ > 0; }
  int telescope_count() const { return tele_count_; }
  const std::string& text() const { return text_; }
  // Connectives of the minimal instance (every metavariable an atom, n = 0).
  int min_size() const { return root_->fixed_size; }
  bool in_fragment(Fragment fr) const;

 private:
  std::shared_ptr<const SchemaNode> root_;
  std::shared_ptr<MetaTable> table_;
  std::vector<int> metas_;
  int tele_count_ = 0;
  std::string text_;
};

class InstantiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Formula instantiate(const Schema& s, const Assignment& a);
std::vector<Assignment> match_schema(const Schema& s, Formula f);

Binding to_binding(const Schema& s, const Assignment& a);
Assignment to_assignment(const MetaTable& table, const Binding& b, bool with_telescope);

// Type-erased non-owning callable, used for continuation-passing matching.
class Continuation {
 public:
  template <class F>
  Continuation(F& f) : obj_(&f), call_([](void* o) { (*static_cast<F*>(o))(); }) {}
  void operator()() const { call_(obj_); }

 private:
  void* obj_;
  void (*call_)(void*);
};

namespace schema_ops {
// Calls k once per extension of b under which node matches f; b is restored
// before returning.
void match(const SchemaNode& node, Formula f, Binding& b, Continuation k);
bool determined(const SchemaNode& node, const Binding& b);
Formula build(const SchemaNode& node, const Binding& b);   // interns
Formula find(const SchemaNode& node, const Binding& b);    // lookup only; null if absent
int size_under(const SchemaNode& node, const Binding& b);  // unbound leaves count 0
// Adds the number of occurrences of each unbound metavariable to counts.
void count_unbound(const SchemaNode& node, const Binding& b, std::array<int, kMaxMetavars>& counts);
}  // namespace schema_ops

}  // namespace subint

#endif
