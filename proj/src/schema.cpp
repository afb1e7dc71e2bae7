#include "subint/schema.hpp"

#include "syntax.hpp"

namespace subint {

int MetaTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int MetaTable::intern(std::string_view name, bool only_letters) {
  int i = index_of(name);
  if (i >= 0) {
    if (letter_only[i] != only_letters)
      throw std::invalid_argument("metavariable " + std::string(name) +
                                  " used both as letter-only and unrestricted");
    return i;
  }
  if (names.size() >= kMaxMetavars) throw std::invalid_argument("too many metavariables");
  names.emplace_back(name);
  letter_only.push_back(only_letters);
  return static_cast<int>(names.size() - 1);
}

namespace {

using Kind = SchemaNode::Kind;

std::shared_ptr<const SchemaNode> convert(const syntax::RawNode& n, MetaTable& table,
                                          std::vector<int>& metas, int& teles) {
  using syntax::RawKind;
  auto out = std::make_shared<SchemaNode>();
  switch (n.kind) {
    case RawKind::Atom:
      out->kind = Kind::Ground;
      out->ground = Formula::atom(n.name);
      break;
    case RawKind::Top:
      out->kind = Kind::Ground;
      out->ground = Formula::top();
      break;
    case RawKind::Bot:
      out->kind = Kind::Ground;
      out->ground = Formula::bot();
      break;
    case RawKind::Meta:
    case RawKind::AtomMeta: {
      out->kind = Kind::Meta;
      out->meta = table.intern(n.name, n.kind == RawKind::AtomMeta);
      out->letter_only = n.kind == RawKind::AtomMeta;
      bool seen = false;
      for (int m : metas) seen = seen || m == out->meta;
      if (!seen) metas.push_back(out->meta);
      break;
    }
    case RawKind::Tele:
      out->kind = Kind::Tele;
      ++teles;
      out->left = convert(*n.left, table, metas, teles);
      out->fixed_size = out->left->fixed_size;
      return out;
    case RawKind::Imp:
    case RawKind::And:
    case RawKind::Or: {
      out->kind = n.kind == RawKind::Imp ? Kind::Imp : n.kind == RawKind::And ? Kind::And : Kind::Or;
      out->left = convert(*n.left, table, metas, teles);
      out->right = convert(*n.right, table, metas, teles);
      out->fixed_size = out->left->fixed_size + out->right->fixed_size + 1;
      if (out->left->kind == Kind::Ground && out->right->kind == Kind::Ground) {
        Connective c = out->kind == Kind::Imp   ? Connective::Imp
                       : out->kind == Kind::And ? Connective::And
                                                : Connective::Or;
        Formula g = Formula::make(c, out->left->ground, out->right->ground);
        out = std::make_shared<SchemaNode>();
        out->kind = Kind::Ground;
        out->ground = g;
        out->fixed_size = g.size();
      }
      break;
    }
  }
  if (out->kind == Kind::Ground) {
    out->closed = true;
    out->fixed_size = out->ground.size();
  }
  return out;
}

Connective connective_of(Kind k) {
  return k == Kind::Imp ? Connective::Imp : k == Kind::And ? Connective::And : Connective::Or;
}

bool node_in_fragment(const SchemaNode& n, Fragment fr) {
  switch (n.kind) {
    case Kind::Meta:
      return true;
    case Kind::Ground:
      return subint::in_fragment(n.ground, fr);
    case Kind::Tele:
      return node_in_fragment(*n.left, fr);
    default:
      return admits(fr, connective_of(n.kind)) && node_in_fragment(*n.left, fr) &&
             node_in_fragment(*n.right, fr);
  }
}

}  // namespace

Schema Schema::parse(std::string_view text) { return parse(text, std::make_shared<MetaTable>()); }

Schema Schema::parse(std::string_view text, const std::shared_ptr<MetaTable>& table) {
  Schema s;
  s.table_ = table;
  auto raw = syntax::parse_raw(text, true);
  s.root_ = convert(*raw, *table, s.metas_, s.tele_count_);
  s.text_ = std::string(text);
  return s;
}

std::vector<std::string> Schema::metavar_names() const {
  std::vector<std::string> out;
  for (int m : metas_) out.push_back(table_->names[m]);
  return out;
}

bool Schema::in_fragment(Fragment fr) const { return node_in_fragment(*root_, fr); }

namespace schema_ops {

void match(const SchemaNode& node, Formula f, Binding& b, Continuation k) {
  switch (node.kind) {
    case Kind::Ground:
      if (node.ground == f) k();
      return;
    case Kind::Meta: {
      Formula& slot = b.slot[node.meta];
      if (slot) {
        if (slot == f) k();
        return;
      }
      if (node.letter_only && !f.is(Connective::Atom)) return;
      slot = f;
      k();
      slot = Formula();
      return;
    }
    case Kind::Tele: {
      if (b.tele_bound) {
        Formula g = f;
        for (Formula a : b.tele) {
          if (!g.is(Connective::Imp) || g.left() != a) return;
          g = g.right();
        }
        match(*node.left, g, b, k);
        return;
      }
      b.tele_bound = true;
      b.tele.clear();
      Formula g = f;
      while (true) {
        match(*node.left, g, b, k);
        if (!g.is(Connective::Imp)) break;
        b.tele.push_back(g.left());
        g = g.right();
      }
      b.tele_bound = false;
      b.tele.clear();
      return;
    }
    default: {
      if (!f || f.kind() != connective_of(node.kind)) return;
      Formula r = f.right();
      auto rest = [&] { match(*node.right, r, b, k); };
      match(*node.left, f.left(), b, Continuation(rest));
      return;
    }
  }
}

bool determined(const SchemaNode& node, const Binding& b) {
  switch (node.kind) {
    case Kind::Ground:
      return true;
    case Kind::Meta:
      return static_cast<bool>(b.slot[node.meta]);
    case Kind::Tele:
      return b.tele_bound && determined(*node.left, b);
    default:
      return node.closed || (determined(*node.left, b) && determined(*node.right, b));
  }
}

Formula build(const SchemaNode& node, const Binding& b) {
  switch (node.kind) {
    case Kind::Ground:
      return node.ground;
    case Kind::Meta:
      return b.slot[node.meta];
    case Kind::Tele:
      return telescope(b.tele, build(*node.left, b));
    default:
      return Formula::make(connective_of(node.kind), build(*node.left, b), build(*node.right, b));
  }
}

Formula find(const SchemaNode& node, const Binding& b) {
  switch (node.kind) {
    case Kind::Ground:
      return node.ground;
    case Kind::Meta:
      return b.slot[node.meta];
    case Kind::Tele: {
      Formula body = find(*node.left, b);
      for (auto it = b.tele.rbegin(); it != b.tele.rend() && body; ++it)
        body = Formula::lookup(Connective::Imp, *it, body);
      return body;
    }
    default: {
      Formula l = find(*node.left, b);
      if (!l) return {};
      Formula r = find(*node.right, b);
      if (!r) return {};
      return Formula::lookup(connective_of(node.kind), l, r);
    }
  }
}

int size_under(const SchemaNode& node, const Binding& b) {
  switch (node.kind) {
    case Kind::Ground:
      return node.ground.size();
    case Kind::Meta:
      return b.slot[node.meta] ? b.slot[node.meta].size() : 0;
    case Kind::Tele: {
      int s = size_under(*node.left, b);
      if (b.tele_bound)
        for (Formula a : b.tele) s += a.size() + 1;
      return s;
    }
    default:
      if (node.closed) return node.fixed_size;
      return size_under(*node.left, b) + size_under(*node.right, b) + 1;
  }
}

void count_unbound(const SchemaNode& node, const Binding& b, std::array<int, kMaxMetavars>& counts) {
  switch (node.kind) {
    case Kind::Ground:
      return;
    case Kind::Meta:
      if (!b.slot[node.meta]) ++counts[node.meta];
      return;
    case Kind::Tele:
      count_unbound(*node.left, b, counts);
      return;
    default:
      count_unbound(*node.left, b, counts);
      count_unbound(*node.right, b, counts);
  }
}

}  // namespace schema_ops

Binding to_binding(const Schema& s, const Assignment& a) {
  Binding b;
  for (int m : s.metavars()) {
    const std::string& name = s.table().names[m];
    auto it = a.bindings.find(name);
    if (it == a.bindings.end() || !it->second)
      throw InstantiationError("missing binding for metavariable " + name);
    if (s.table().letter_only[m] && !it->second.is(Connective::Atom))
      throw InstantiationError("metavariable " + name + " only accepts propositional letters");
    b.slot[m] = it->second;
  }
  b.tele = a.telescope_args;
  b.tele_bound = true;
  return b;
}

Assignment to_assignment(const MetaTable& table, const Binding& b, bool with_telescope) {
  Assignment a;
  for (std::size_t i = 0; i < table.names.size(); ++i)
    if (b.slot[i]) a.bindings[table.names[i]] = b.slot[i];
  if (with_telescope && b.tele_bound) a.telescope_args = b.tele;
  return a;
}

Formula instantiate(const Schema& s, const Assignment& a) {
  return schema_ops::build(s.root(), to_binding(s, a));
}

std::vector<Assignment> match_schema(const Schema& s, Formula f) {
  std::vector<Assignment> out;
  Binding b;
  auto collect = [&] {
    out.push_back(to_assignment(s.table(), b, s.telescoped()));
  };
  schema_ops::match(s.root(), f, b, Continuation(collect));
  return out;
}

}  // namespace subint
