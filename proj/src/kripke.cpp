#include "subint/kripke.hpp"

#include <bit>
#include <json.hpp>

namespace subint {

int KripkeFrame::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (worlds[i] == name) return i;
  throw ModelError("unknown world '" + std::string(name) + "'");
}

std::string KripkeFrame::omniscience_problem() const {
  std::string missing;
  for (int w = 0; w < size(); ++w)
    if (!related(root, w)) missing += (missing.empty() ? "" : ", ") + ("[\"" + worlds[root] + "\",\"" + worlds[w] + "\"]");
  if (missing.empty()) return {};
  return "root " + worlds[root] + " must see every world; add " + missing + " to R";
}

WorldSet KripkeModel::valuation(const std::string& atom) const {
  auto it = V.find(atom);
  return it == V.end() ? 0 : it->second;
}

WorldSet KripkeEvaluator::truth_set(Formula f) {
  auto it = memo_.find(f.node());
  if (it != memo_.end()) return it->second;
  const KripkeFrame& fr = m_.frame;
  WorldSet out = 0;
  switch (f.kind()) {
    case Connective::Atom:
      out = m_.valuation(f.name()) & fr.all();
      break;
    case Connective::Top:
      out = fr.all();
      break;
    case Connective::Bot:
      out = 0;
      break;
    case Connective::And:
      out = truth_set(f.left()) & truth_set(f.right());
      break;
    case Connective::Or:
      out = truth_set(f.left()) | truth_set(f.right());
      break;
    case Connective::Imp: {
      WorldSet bad = truth_set(f.left()) & ~truth_set(f.right());
      for (int w = 0; w < fr.size(); ++w)
        if ((fr.succ[w] & bad) == 0) out |= WorldSet{1} << w;
      break;
    }
  }
  memo_.emplace(f.node(), out);
  return out;
}

bool forces(const KripkeModel& m, int w, Formula f) {
  if (w < 0 || w >= m.frame.size()) throw ModelError("unknown world index " + std::to_string(w));
  return (KripkeEvaluator(m).truth_set(f) >> w) & 1u;
}

bool forces(const KripkeModel& m, std::string_view world, Formula f) {
  return forces(m, m.frame.index_of(world), f);
}

bool valid_on_model(const KripkeModel& m, Formula f) {
  return KripkeEvaluator(m).truth_set(f) == m.frame.all();
}

bool valid_consequence(const KripkeModel& m, const std::vector<Formula>& gamma, Formula f) {
  KripkeEvaluator ev(m);
  WorldSet premises = m.frame.all();
  for (Formula g : gamma) premises &= ev.truth_set(g);
  return (premises & ~ev.truth_set(f)) == 0;
}

bool has_property(const KripkeFrame& f, KripkeProperty p) {
  switch (p) {
    case KripkeProperty::Reflexive:
      for (int w = 0; w < f.size(); ++w)
        if (!f.related(w, w)) return false;
      return true;
    case KripkeProperty::Transitive:
      for (int w = 0; w < f.size(); ++w)
        for (int v = 0; v < f.size(); ++v)
          if (f.related(w, v) && (f.succ[v] & ~f.succ[w])) return false;
      return true;
    case KripkeProperty::PersistentValuation:
      throw std::invalid_argument("persistence is a property of models, not frames");
  }
  return false;
}

bool has_property(const KripkeModel& m, KripkeProperty p) {
  if (p != KripkeProperty::PersistentValuation) return has_property(m.frame, p);
  for (auto& [atom, set] : m.V)
    for (int w = 0; w < m.frame.size(); ++w)
      if (((set >> w) & 1u) && (m.frame.succ[w] & ~set & m.frame.all())) return false;
  return true;
}

std::vector<std::string> default_world_names(int n) {
  std::vector<std::string> out{"g"};
  for (int i = 1; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

std::vector<KripkeFrame> enumerate_frames(int n, int shard, int shards) {
  if (n < 1) throw std::invalid_argument("a frame needs at least one world");
  if (n > 5) throw std::invalid_argument("exhaustive Kripke enumeration is limited to 5 worlds");
  // Free pairs: (w, v) with w != root; the root's row is fixed to all worlds.
  int free_bits = (n - 1) * n;
  std::vector<KripkeFrame> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
    if (static_cast<int>(mask % static_cast<std::uint64_t>(shards)) != shard) continue;
    KripkeFrame f;
    f.worlds = default_world_names(n);
    f.root = 0;
    f.succ.assign(n, 0);
    f.succ[0] = f.all();
    for (int w = 1; w < n; ++w) f.succ[w] = (mask >> ((w - 1) * n)) & ((WorldSet{1} << n) - 1);
    out.push_back(std::move(f));
  }
  return out;
}

void for_each_valuation(const KripkeFrame& f, const std::vector<std::string>& atoms,
                        const std::function<void(const KripkeModel&)>& fn) {
  int n = f.size();
  int bits = n * static_cast<int>(atoms.size());
  if (bits > 30) throw std::invalid_argument("too many valuations to enumerate");
  KripkeModel m;
  m.frame = f;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    for (std::size_t a = 0; a < atoms.size(); ++a) m.V[atoms[a]] = (mask >> (a * n)) & f.all();
    fn(m);
  }
}

std::vector<KripkeModel> enumerate_valuations(const KripkeFrame& f, const std::vector<std::string>& atoms) {
  std::vector<KripkeModel> out;
  for_each_valuation(f, atoms, [&](const KripkeModel& m) { out.push_back(m); });
  return out;
}

namespace {

using nlohmann::json;

WorldSet set_from_json(const KripkeFrame& f, const json& arr) {
  if (!arr.is_array()) throw ModelError("expected an array of world names");
  WorldSet s = 0;
  for (auto& w : arr) s |= WorldSet{1} << f.index_of(w.get<std::string>());
  return s;
}

json set_to_json(const KripkeFrame& f, WorldSet s) {
  json arr = json::array();
  for (int w = 0; w < f.size(); ++w)
    if ((s >> w) & 1u) arr.push_back(f.worlds[w]);
  return arr;
}

}  // namespace

KripkeModel parse_kripke_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.value("semantics", "") != "kripke") throw ModelError("expected \"semantics\": \"kripke\"");
    KripkeModel m;
    KripkeFrame& f = m.frame;
    for (auto& w : j.at("worlds")) f.worlds.push_back(w.get<std::string>());
    if (f.worlds.empty()) throw ModelError("a model needs at least one world");
    if (f.size() > kMaxKripkeWorlds) throw ModelError("too many worlds");
    for (int a = 0; a < f.size(); ++a)
      for (int b = a + 1; b < f.size(); ++b)
        if (f.worlds[a] == f.worlds[b]) throw ModelError("duplicate world '" + f.worlds[a] + "'");
    f.root = f.index_of(j.at("root").get<std::string>());
    f.succ.assign(f.size(), 0);
    for (auto& pair : j.value("R", json::array())) {
      if (!pair.is_array() || pair.size() != 2) throw ModelError("R entries must be [w, v] pairs");
      f.succ[f.index_of(pair[0].get<std::string>())] |= WorldSet{1} << f.index_of(pair[1].get<std::string>());
    }
    std::string problem = f.omniscience_problem();
    if (!problem.empty()) throw ModelError("model violates omniscience: " + problem);
    if (j.contains("V"))
      for (auto& [atom, arr] : j.at("V").items()) m.V[atom] = set_from_json(f, arr);
    return m;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed Kripke model: ") + e.what());
  }
}

std::string kripke_model_json(const KripkeModel& m) {
  const KripkeFrame& f = m.frame;
  json j;
  j["semantics"] = "kripke";
  j["worlds"] = f.worlds;
  j["root"] = f.worlds[f.root];
  json r = json::array();
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v)
      if (f.related(w, v)) r.push_back(json::array({f.worlds[w], f.worlds[v]}));
  j["R"] = r;
  json v = json::object();
  for (auto& [atom, set] : m.V) v[atom] = set_to_json(f, set);
  j["V"] = v;
  return j.dump(2);
}

}  // namespace subint
