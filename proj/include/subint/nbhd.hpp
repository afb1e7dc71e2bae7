// Finite pair-neighborhood models.
//
// A world set is a bitmask over world indices. NB(w) is a set of ordered
// pairs (X, Y) of world sets, stored as a bitset indexed by X * 2^n + Y.
// Every NB(w) contains the base pairs (X subset of Y) and NB(root) is exactly
// the base.
#ifndef SUBINT_NBHD_HPP
#define SUBINT_NBHD_HPP

#include <bitset>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "subint/formula.hpp"
#include "subint/kripke.hpp"  // WorldSet, ModelError, default_world_names
#include "subint/properties.hpp"

namespace subint {

inline constexpr int kMaxNbhdWorlds = 5;
using PairSet = std::bitset<(1u << (2 * kMaxNbhdWorlds))>;

struct NbhdFrame {
  std::vector<std::string> worlds;
  int root = 0;
  std::vector<PairSet> nb;

  int size() const { return static_cast<int>(worlds.size()); }
  WorldSet all() const { return (WorldSet{1} << size()) - 1; }
  std::size_t pair_index(WorldSet x, WorldSet y) const { return (x << size()) | y; }
  bool has(int w, WorldSet x, WorldSet y) const { return nb[w].test(pair_index(x, y)); }
  void add(int w, WorldSet x, WorldSet y) { nb[w].set(pair_index(x, y)); }
  int index_of(std::string_view name) const;
};

struct NbhdModel {
  NbhdFrame frame;
  std::map<std::string, WorldSet> V;

  WorldSet valuation(const std::string& atom) const;
};

// The base pairs over n worlds.
PairSet base_pairs(int n);

// Adds the base pairs at every world. Throws ModelError if the root carries
// a pair (X, Y) with X not a subset of Y.
void complete_base(NbhdFrame& f);

// Memoised truth sets. Build once per model on one thread; afterwards
// truth_set on already-seen formulas is a pure lookup.
class NbhdEvaluator {
 public:
  explicit NbhdEvaluator(const NbhdModel& m) : m_(m) {}
  WorldSet truth_set(Formula f);

 private:
  const NbhdModel& m_;
  std::unordered_map<const detail::Node*, WorldSet> memo_;
};

bool truth(const NbhdModel& m, int w, Formula f);
bool truth(const NbhdModel& m, std::string_view world, Formula f);
bool valid_on_model(const NbhdModel& m, Formula f);
bool valid_consequence(const NbhdModel& m, const std::vector<Formula>& gamma, Formula f);

bool has_property(const NbhdFrame& f, NbhdProperty p);
bool has_properties(const NbhdFrame& f, const std::set<NbhdProperty>& ps);

// Smallest superset of NB(w), for each non-root world, that is closed under
// the given properties. Every property is a Horn condition on pairs, so the
// closure exists; the base at the root is already closed.
void close_under(NbhdFrame& f, const std::set<NbhdProperty>& ps);

struct NbhdEnumeration {
  int sample_count = 200;  // frames drawn when n >= 3
  std::uint64_t seed = 1;
};

// n <= 2: every frame (free non-base pairs at each non-root world), filtered
// by `required`. n >= 3: seeded random frames closed under `required`; not
// exhaustive, duplicates removed.
std::vector<NbhdFrame> enumerate_nbhd_frames(int n, const std::set<NbhdProperty>& required,
                                        const NbhdEnumeration& opts = {});
std::vector<NbhdModel> enumerate_valuations(const NbhdFrame& f, const std::vector<std::string>& atoms);

// Loader completes the base unless the document sets "strict": true, in
// which case a missing base pair is an error.
NbhdModel parse_nbhd_model(std::string_view json_text);
// Emits only non-base pairs; the loader restores the rest.
std::string nbhd_model_json(const NbhdModel& m);

}  // namespace subint

#endif
