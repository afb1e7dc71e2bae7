#include "subint/formula.hpp"

#include <array>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

#include "syntax.hpp"

namespace subint {
namespace {

using detail::Node;

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::uint64_t hash_compound(Connective c, const Node* l, const Node* r) {
  std::uint64_t h = mix(static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL);
  h = mix(h ^ (l->hash + 0x632be59bd9b4e019ULL));
  h = mix(h ^ (r->hash * 3 + 0x85ebca6b));
  return h;
}

std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return mix(h);
}

struct CompoundKey {
  Connective kind;
  const Node* left;
  const Node* right;
  bool operator==(const CompoundKey&) const = default;
};

struct CompoundKeyHash {
  std::size_t operator()(const CompoundKey& k) const {
    return static_cast<std::size_t>(hash_compound(k.kind, k.left, k.right));
  }
};

constexpr std::size_t kShards = 64;

struct Shard {
  std::shared_mutex mu;
  std::deque<Node> nodes;
  std::unordered_map<CompoundKey, const Node*, CompoundKeyHash> compounds;
  std::unordered_map<std::string, const Node*> atoms;
};

class Interner {
 public:
  static Interner& instance() {
    static Interner in;
    return in;
  }

  const Node* constant(Connective c) { return c == Connective::Top ? top_ : bot_; }

  const Node* atom(std::string_view name) {
    std::uint64_t h = hash_name(name);
    Shard& s = shards_[h % kShards];
    {
      std::shared_lock lock(s.mu);
      auto it = s.atoms.find(std::string(name));
      if (it != s.atoms.end()) return it->second;
    }
    std::unique_lock lock(s.mu);
    auto [it, inserted] = s.atoms.try_emplace(std::string(name), nullptr);
    if (inserted) {
      s.nodes.push_back(Node{Connective::Atom, 0, h, nullptr, nullptr, std::string(name)});
      it->second = &s.nodes.back();
    }
    return it->second;
  }

  const Node* compound(Connective c, const Node* l, const Node* r, bool create) {
    CompoundKey key{c, l, r};
    std::uint64_t h = hash_compound(c, l, r);
    Shard& s = shards_[h % kShards];
    {
      std::shared_lock lock(s.mu);
      auto it = s.compounds.find(key);
      if (it != s.compounds.end()) return it->second;
    }
    if (!create) return nullptr;
    std::unique_lock lock(s.mu);
    auto [it, inserted] = s.compounds.try_emplace(key, nullptr);
    if (inserted) {
      auto sz = static_cast<std::uint16_t>(l->size + r->size + 1);
      s.nodes.push_back(Node{c, sz, h, l, r, {}});
      it->second = &s.nodes.back();
    }
    return it->second;
  }

 private:
  Interner() {
    top_ = &consts_.emplace_back(Node{Connective::Top, 0, mix(11), nullptr, nullptr, "top"});
    bot_ = &consts_.emplace_back(Node{Connective::Bot, 0, mix(13), nullptr, nullptr, "bot"});
  }
  std::array<Shard, kShards> shards_;
  std::deque<Node> consts_;
  const Node* top_;
  const Node* bot_;
};

bool is_binary_kind(Connective c) {
  return c == Connective::Imp || c == Connective::And || c == Connective::Or;
}

}  // namespace

Formula Formula::atom(std::string_view name) { return Formula(Interner::instance().atom(name)); }
Formula Formula::top() { return Formula(Interner::instance().constant(Connective::Top)); }
Formula Formula::bot() { return Formula(Interner::instance().constant(Connective::Bot)); }

Formula Formula::make(Connective c, Formula a, Formula b) {
  if (!is_binary_kind(c)) throw std::invalid_argument("Formula::make needs a binary connective");
  return Formula(Interner::instance().compound(c, a.n_, b.n_, true));
}
Formula Formula::imp(Formula a, Formula b) { return make(Connective::Imp, a, b); }
Formula Formula::conj(Formula a, Formula b) { return make(Connective::And, a, b); }
Formula Formula::disj(Formula a, Formula b) { return make(Connective::Or, a, b); }

Formula Formula::lookup(Connective c, Formula a, Formula b) {
  if (!a || !b) return {};
  return Formula(Interner::instance().compound(c, a.n_, b.n_, false));
}

int compare(Formula a, Formula b) {
  if (a == b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Connective::Atom:
      return a.name() < b.name() ? -1 : 1;
    case Connective::Top:
    case Connective::Bot:
      return 0;
    default:
      if (int c = compare(a.left(), b.left())) return c;
      return compare(a.right(), b.right());
  }
}

std::string_view fragment_name(Fragment f) {
  switch (f) {
    case Fragment::ImpOnly:
      return "ImpOnly";
    case Fragment::ImpAnd:
      return "ImpAnd";
    case Fragment::Full:
      return "Full";
  }
  return "?";
}

Fragment parse_fragment(std::string_view s) {
  if (s == "ImpOnly" || s == "imp") return Fragment::ImpOnly;
  if (s == "ImpAnd" || s == "impand") return Fragment::ImpAnd;
  if (s == "Full" || s == "full") return Fragment::Full;
  throw std::invalid_argument("unknown fragment '" + std::string(s) + "'");
}

bool admits(Fragment fr, Connective c) {
  switch (c) {
    case Connective::Atom:
    case Connective::Top:
    case Connective::Imp:
      return true;
    case Connective::And:
      return fr != Fragment::ImpOnly;
    case Connective::Or:
    case Connective::Bot:
      return fr == Fragment::Full;
  }
  return false;
}

namespace {
// First constructor (preorder) not admitted by fr, or Atom if none.
bool find_offending(Formula f, Fragment fr, Connective& out) {
  if (!admits(fr, f.kind())) {
    out = f.kind();
    return true;
  }
  if (f.is_binary()) return find_offending(f.left(), fr, out) || find_offending(f.right(), fr, out);
  return false;
}
}  // namespace

bool in_fragment(Formula f, Fragment fr) {
  Connective c;
  return !find_offending(f, fr, c);
}

Fragment fragment_of(Formula f) {
  if (in_fragment(f, Fragment::ImpOnly)) return Fragment::ImpOnly;
  if (in_fragment(f, Fragment::ImpAnd)) return Fragment::ImpAnd;
  return Fragment::Full;
}

bool fragment_le(Fragment a, Fragment b) {
  return static_cast<int>(a) <= static_cast<int>(b);
}

Formula telescope(std::span<const Formula> args, Formula body) {
  Formula out = body;
  for (auto it = args.rbegin(); it != args.rend(); ++it) out = Formula::imp(*it, out);
  return out;
}

int imp_depth(Formula f) {
  int d = 0;
  while (f.is(Connective::Imp)) {
    ++d;
    f = f.right();
  }
  return d;
}

std::vector<std::string> atoms_of(Formula f) {
  std::vector<std::string> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.is(Connective::Atom)) {
      bool seen = false;
      for (auto& s : out) seen = seen || s == g.name();
      if (!seen) out.push_back(g.name());
    } else if (g.is_binary()) {
      stack.push_back(g.right());
      stack.push_back(g.left());
    }
  }
  return out;
}

void collect_subformulas(Formula f, std::vector<Formula>& out) {
  std::unordered_set<Formula> seen(out.begin(), out.end());
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    out.push_back(g);
    if (g.is_binary()) {
      stack.push_back(g.right());
      stack.push_back(g.left());
    }
  }
}

ParseError::ParseError(const std::string& msg, std::size_t position)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + msg),
      position_(position) {}

std::string_view connective_symbol(Connective c) {
  switch (c) {
    case Connective::Atom:
      return "atom";
    case Connective::Top:
      return "top";
    case Connective::Bot:
      return "bot";
    case Connective::Imp:
      return "->";
    case Connective::And:
      return "&";
    case Connective::Or:
      return "|";
  }
  return "?";
}

FragmentError::FragmentError(Connective offending, Fragment fragment)
    : std::runtime_error("fragment violation: '" + std::string(connective_symbol(offending)) +
                         "' is not admitted in " + std::string(fragment_name(fragment))),
      offending_(offending) {}

namespace {

Formula from_raw(const syntax::RawNode& n) {
  using syntax::RawKind;
  switch (n.kind) {
    case RawKind::Atom:
      return Formula::atom(n.name);
    case RawKind::Top:
      return Formula::top();
    case RawKind::Bot:
      return Formula::bot();
    case RawKind::Imp:
      return Formula::imp(from_raw(*n.left), from_raw(*n.right));
    case RawKind::And:
      return Formula::conj(from_raw(*n.left), from_raw(*n.right));
    case RawKind::Or:
      return Formula::disj(from_raw(*n.left), from_raw(*n.right));
    default:
      throw ParseError("metavariables are not allowed in formulas", n.pos);
  }
}

int precedence(Connective c) {
  switch (c) {
    case Connective::Imp:
      return 1;
    case Connective::Or:
      return 2;
    case Connective::And:
      return 3;
    default:
      return 4;
  }
}

void print_into(Formula f, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out += f.name();
      return;
    case Connective::Top:
      out += "top";
      return;
    case Connective::Bot:
      out += "bot";
      return;
    default:
      break;
  }
  int p = precedence(f.kind());
  bool right_assoc = f.kind() == Connective::Imp;
  Formula l = f.left(), r = f.right();
  bool paren_l = right_assoc ? precedence(l.kind()) <= p : precedence(l.kind()) < p;
  bool paren_r = right_assoc ? precedence(r.kind()) < p : precedence(r.kind()) <= p;
  if (paren_l) out += '(';
  print_into(l, out);
  if (paren_l) out += ')';
  out += ' ';
  out += connective_symbol(f.kind());
  out += ' ';
  if (paren_r) out += '(';
  print_into(r, out);
  if (paren_r) out += ')';
}

}  // namespace

Formula parse(std::string_view text, Fragment fragment) {
  Formula f = from_raw(*syntax::parse_raw(text, false));
  Connective bad;
  if (find_offending(f, fragment, bad)) throw FragmentError(bad, fragment);
  return f;
}

std::string print(Formula f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace subint
