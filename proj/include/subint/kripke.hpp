// Finite rooted Kripke models. World sets are bitmasks over world indices.
#ifndef SUBINT_KRIPKE_HPP
#define SUBINT_KRIPKE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "subint/formula.hpp"
#include "subint/properties.hpp"

namespace subint {

using WorldSet = std::uint64_t;
inline constexpr int kMaxKripkeWorlds = 64;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KripkeFrame {
  std::vector<std::string> worlds;
  int root = 0;
  std::vector<WorldSet> succ;  // succ[w]: the R-successors of w

  int size() const { return static_cast<int>(worlds.size()); }
  WorldSet all() const { return size() == 64 ? ~WorldSet{0} : (WorldSet{1} << size()) - 1; }
  int index_of(std::string_view name) const;  // throws ModelError for unknown worlds
  bool related(int w, int v) const { return (succ[w] >> v) & 1u; }
  // Empty when the root reaches every world; otherwise describes the repair.
  std::string omniscience_problem() const;
};

struct KripkeModel {
  KripkeFrame frame;
  std::map<std::string, WorldSet> V;

  WorldSet valuation(const std::string& atom) const;
};

// Computes truth sets bottom-up with a per-formula memo. Not thread-safe;
// use one evaluator per thread.
class KripkeEvaluator {
 public:
  explicit KripkeEvaluator(const KripkeModel& m) : m_(m) {}
  WorldSet truth_set(Formula f);

 private:
  const KripkeModel& m_;
  std::unordered_map<const detail::Node*, WorldSet> memo_;
};

bool forces(const KripkeModel& m, int w, Formula f);
bool forces(const KripkeModel& m, std::string_view world, Formula f);
bool valid_on_model(const KripkeModel& m, Formula f);
bool valid_consequence(const KripkeModel& m, const std::vector<Formula>& gamma, Formula f);

bool has_property(const KripkeFrame& f, KripkeProperty p);  // throws for PersistentValuation
bool has_property(const KripkeModel& m, KripkeProperty p);

// All rooted frames on n worlds named g, w1, w2, ...; root g = world 0.
// shard/shards select the frames whose free-pair mask is congruent to shard.
std::vector<KripkeFrame> enumerate_frames(int n, int shard = 0, int shards = 1);
void for_each_valuation(const KripkeFrame& f, const std::vector<std::string>& atoms,
                        const std::function<void(const KripkeModel&)>& fn);
std::vector<KripkeModel> enumerate_valuations(const KripkeFrame& f, const std::vector<std::string>& atoms);

std::vector<std::string> default_world_names(int n);

KripkeModel parse_kripke_model(std::string_view json_text);
std::string kripke_model_json(const KripkeModel& m);

}  // namespace subint

#endif
