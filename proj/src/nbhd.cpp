#include "subint/nbhd.hpp"

#include <json.hpp>
#include <random>

namespace subint {

namespace {

bool subset(WorldSet a, WorldSet b) { return (a & ~b) == 0; }

// Calls fn(x, y) for every pair present in NB(w).
template <class Fn>
void for_each_pair(const NbhdFrame& f, int w, Fn&& fn) {
  const PairSet& s = f.nb[w];
  WorldSet full = f.all();
  for (WorldSet x = 0; x <= full; ++x)
    for (WorldSet y = 0; y <= full; ++y)
      if (s.test(f.pair_index(x, y))) fn(x, y);
}

void check_size(int n) {
  if (n < 1) throw ModelError("a frame needs at least one world");
  if (n > kMaxNbhdWorlds) throw ModelError("neighborhood models are limited to " + std::to_string(kMaxNbhdWorlds) + " worlds");
}

}  // namespace

int NbhdFrame::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (worlds[i] == name) return i;
  throw ModelError("unknown world '" + std::string(name) + "'");
}

WorldSet NbhdModel::valuation(const std::string& atom) const {
  auto it = V.find(atom);
  return it == V.end() ? 0 : it->second;
}

PairSet base_pairs(int n) {
  check_size(n);
  PairSet s;
  WorldSet full = (WorldSet{1} << n) - 1;
  for (WorldSet x = 0; x <= full; ++x)
    for (WorldSet y = 0; y <= full; ++y)
      if (subset(x, y)) s.set((x << n) | y);
  return s;
}

void complete_base(NbhdFrame& f) {
  check_size(f.size());
  f.nb.resize(f.size());
  PairSet base = base_pairs(f.size());
  if ((f.nb[f.root] & ~base).any()) {
    throw ModelError("root " + f.worlds[f.root] + " is omniscient and may only hold pairs (X, Y) with X a subset of Y");
  }
  for (auto& s : f.nb) s |= base;
}

WorldSet NbhdEvaluator::truth_set(Formula f) {
  auto it = memo_.find(f.node());
  if (it != memo_.end()) return it->second;
  const NbhdFrame& fr = m_.frame;
  WorldSet out = 0;
  switch (f.kind()) {
    case Connective::Atom: out = m_.valuation(f.name()) & fr.all(); break;
    case Connective::Top: out = fr.all(); break;
    case Connective::Bot: out = 0; break;
    case Connective::And: out = truth_set(f.left()) & truth_set(f.right()); break;
    case Connective::Or: out = truth_set(f.left()) | truth_set(f.right()); break;
    case Connective::Imp: {
      std::size_t idx = fr.pair_index(truth_set(f.left()), truth_set(f.right()));
      for (int w = 0; w < fr.size(); ++w)
        if (fr.nb[w].test(idx)) out |= WorldSet{1} << w;
      break;
    }
  }
  memo_.emplace(f.node(), out);
  return out;
}

bool truth(const NbhdModel& m, int w, Formula f) {
  if (w < 0 || w >= m.frame.size()) throw ModelError("unknown world index " + std::to_string(w));
  return (NbhdEvaluator(m).truth_set(f) >> w) & 1u;
}

bool truth(const NbhdModel& m, std::string_view world, Formula f) { return truth(m, m.frame.index_of(world), f); }

bool valid_on_model(const NbhdModel& m, Formula f) { return NbhdEvaluator(m).truth_set(f) == m.frame.all(); }

bool valid_consequence(const NbhdModel& m, const std::vector<Formula>& gamma, Formula f) {
  NbhdEvaluator ev(m);
  WorldSet prem = m.frame.all();
  for (Formula g : gamma) prem &= ev.truth_set(g);
  return subset(prem, ev.truth_set(f));
}

namespace {

// One pass of the closure condition for p over NB(w). Without `out` it
// returns at the first missing pair. With `out` it records every missing
// pair there and reports whether any was found.
bool step(const NbhdFrame& f, int w, NbhdProperty p, PairSet* out) {
  const WorldSet full = f.all();
  bool missing = false;
  auto need = [&](WorldSet x, WorldSet y) {
    if (f.has(w, x, y)) return false;
    missing = true;
    if (!out) return true;  // stop scanning
    out->set(f.pair_index(x, y));
    return false;
  };
  std::vector<std::pair<WorldSet, WorldSet>> pairs;
  for_each_pair(f, w, [&](WorldSet x, WorldSet y) { pairs.emplace_back(x, y); });
  auto has_pair = [&](WorldSet x, WorldSet y) { return f.has(w, x, y); };
  for (auto [x, y] : pairs) {
    switch (p) {
      case NbhdProperty::Intersection:
        for (auto [x2, z] : pairs)
          if (x2 == x && need(x, y & z)) return true;
        break;
      case NbhdProperty::Union:
        for (auto [z, y2] : pairs)
          if (y2 == y && need(x | z, y)) return true;
        break;
      case NbhdProperty::Transitive:
        for (auto [y2, z] : pairs)
          if (y2 == y && need(x, z)) return true;
        break;
      case NbhdProperty::Upset:
        for (WorldSet z = 0; z <= full; ++z)
          if (subset(y, z) && need(x, z)) return true;
        break;
      case NbhdProperty::Downset:
        for (WorldSet z = 0; z <= full; ++z)
          if (subset(z, x) && need(z, y)) return true;
        break;
      case NbhdProperty::Equivalence:
      case NbhdProperty::SupersetEquivalence: {
        WorldSet key = (~x | y) & full;
        for (WorldSet x2 = 0; x2 <= full; ++x2)
          for (WorldSet y2 = 0; y2 <= full; ++y2) {
            WorldSet key2 = (~x2 | y2) & full;
            bool ok = p == NbhdProperty::Equivalence ? key2 == key : subset(key, key2);
            if (ok && need(x2, y2)) return true;
          }
        break;
      }
      case NbhdProperty::NbCondition:
        if (need(x, x & y)) return true;
        break;
      case NbhdProperty::WeakIntersection:
        for (WorldSet z = 0; z <= full; ++z)
          if (need(x & z, y & z)) return true;
        break;
    }
  }
  if (p == NbhdProperty::NbCondition) {
    // Converse half: (X, X n Y) present forces (X, Y).
    for (WorldSet x = 0; x <= full; ++x)
      for (WorldSet y = 0; y <= full; ++y)
        if (has_pair(x, x & y) && need(x, y)) return true;
  }
  return missing;
}

}  // namespace

bool has_property(const NbhdFrame& f, NbhdProperty p) {
  for (int w = 0; w < f.size(); ++w)
    if (step(f, w, p, nullptr)) return false;
  return true;
}

bool has_properties(const NbhdFrame& f, const std::set<NbhdProperty>& ps) {
  for (auto p : ps)
    if (!has_property(f, p)) return false;
  return true;
}

void close_under(NbhdFrame& f, const std::set<NbhdProperty>& ps) {
  for (int w = 0; w < f.size(); ++w) {
    if (w == f.root) continue;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto p : ps) {
        PairSet next = f.nb[w];
        if (step(f, w, p, &next)) {
          f.nb[w] = next;
          changed = true;
        }
      }
    }
  }
}

std::vector<NbhdFrame> enumerate_nbhd_frames(int n, const std::set<NbhdProperty>& required, const NbhdEnumeration& opts) {
  check_size(n);
  NbhdFrame proto;
  proto.worlds = default_world_names(n);
  proto.root = 0;
  proto.nb.assign(n, base_pairs(n));
  std::vector<NbhdFrame> out;
  if (n == 1) {
    out.push_back(proto);
    return out;
  }
  std::vector<std::size_t> free;  // indices of non-base pairs
  PairSet base = base_pairs(n);
  for (std::size_t i = 0; i < (std::size_t{1} << (2 * n)); ++i)
    if (!base.test(i)) free.push_back(i);

  if (n == 2) {
    for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
      NbhdFrame f = proto;
      for (std::size_t b = 0; b < free.size(); ++b)
        if ((mask >> b) & 1u) f.nb[1].set(free[b]);
      if (has_properties(f, required)) out.push_back(std::move(f));
    }
    return out;
  }

  std::mt19937_64 rng(opts.seed);
  static constexpr double densities[] = {0.02, 0.05, 0.1, 0.25};
  std::set<std::vector<std::string>> seen;
  for (int i = 0; i < opts.sample_count; ++i) {
    NbhdFrame f = proto;
    std::bernoulli_distribution coin(densities[rng() % 4]);
    for (int w = 1; w < n; ++w)
      for (std::size_t idx : free)
        if (coin(rng)) f.nb[w].set(idx);
    close_under(f, required);
    if (!has_properties(f, required)) throw std::logic_error("closure did not establish the required properties");
    std::vector<std::string> key;
    for (auto& s : f.nb) key.push_back(s.to_string());
    if (seen.insert(std::move(key)).second) out.push_back(std::move(f));
  }
  return out;
}

std::vector<NbhdModel> enumerate_valuations(const NbhdFrame& f, const std::vector<std::string>& atoms) {
  int n = f.size();
  int bits = n * static_cast<int>(atoms.size());
  if (bits > 24) throw std::invalid_argument("too many valuations to enumerate");
  std::vector<NbhdModel> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    NbhdModel m{f, {}};
    for (std::size_t a = 0; a < atoms.size(); ++a) m.V[atoms[a]] = (mask >> (a * n)) & f.all();
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

using nlohmann::json;

WorldSet set_from_json(const NbhdFrame& f, const json& arr) {
  if (!arr.is_array()) throw ModelError("expected an array of world names");
  WorldSet s = 0;
  for (auto& w : arr) s |= WorldSet{1} << f.index_of(w.get<std::string>());
  return s;
}

json set_to_json(const NbhdFrame& f, WorldSet s) {
  json arr = json::array();
  for (int w = 0; w < f.size(); ++w)
    if ((s >> w) & 1u) arr.push_back(f.worlds[w]);
  return arr;
}

}  // namespace

NbhdModel parse_nbhd_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.value("semantics", "") != "nbhd") throw ModelError("expected \"semantics\": \"nbhd\"");
    NbhdModel m;
    NbhdFrame& f = m.frame;
    for (auto& w : j.at("worlds")) f.worlds.push_back(w.get<std::string>());
    check_size(f.size());
    for (int a = 0; a < f.size(); ++a)
      for (int b = a + 1; b < f.size(); ++b)
        if (f.worlds[a] == f.worlds[b]) throw ModelError("duplicate world '" + f.worlds[a] + "'");
    f.root = f.index_of(j.at("root").get<std::string>());
    f.nb.assign(f.size(), PairSet{});
    if (j.contains("NB"))
      for (auto& [world, pairs] : j.at("NB").items()) {
        int w = f.index_of(world);
        for (auto& pr : pairs) {
          if (!pr.is_array() || pr.size() != 2) throw ModelError("NB entries must be [X, Y] pairs of world lists");
          f.add(w, set_from_json(f, pr[0]), set_from_json(f, pr[1]));
        }
      }
    if (j.value("strict", false)) {
      PairSet base = base_pairs(f.size());
      for (int w = 0; w < f.size(); ++w)
        if ((f.nb[w] & base) != base)
          throw ModelError("strict model: NB(" + f.worlds[w] + ") is missing base pairs (X, Y) with X a subset of Y");
    }
    complete_base(f);
    if (j.contains("V"))
      for (auto& [atom, arr] : j.at("V").items()) m.V[atom] = set_from_json(f, arr);
    return m;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed neighborhood model: ") + e.what());
  }
}

std::string nbhd_model_json(const NbhdModel& m) {
  const NbhdFrame& f = m.frame;
  json j;
  j["semantics"] = "nbhd";
  j["worlds"] = f.worlds;
  j["root"] = f.worlds[f.root];
  json nb = json::object();
  for (int w = 0; w < f.size(); ++w) {
    json pairs = json::array();
    for_each_pair(f, w, [&](WorldSet x, WorldSet y) {
      if (!subset(x, y)) pairs.push_back(json::array({set_to_json(f, x), set_to_json(f, y)}));
    });
    if (!pairs.empty()) nb[f.worlds[w]] = pairs;
  }
  j["NB"] = nb;
  json v = json::object();
  for (auto& [atom, set] : m.V) v[atom] = set_to_json(f, set);
  j["V"] = v;
  return j.dump(2);
}

}  // namespace subint
