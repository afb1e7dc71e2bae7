#include "subint/saturate.hpp"

#include <algorithm>
#include <cstdlib>
#include <list>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace subint {

using detail::Node;

namespace detail {

// Facts indexed by connective, one child and their own size.
struct ChildKey {
  const Node* child;
  Connective kind;
  std::uint16_t size;
  bool operator==(const ChildKey&) const = default;
};

struct ChildKeyHash {
  std::size_t operator()(const ChildKey& k) const {
    return std::hash<const void*>()(k.child) * 131u + static_cast<std::size_t>(k.kind) * 17u + k.size;
  }
};

struct Stratum {
  std::shared_ptr<const Stratum> base;
  int offset = 0;
  std::vector<Fact> facts;
  std::unordered_map<const Node*, int> ids;
  std::unordered_map<ChildKey, std::vector<int>, ChildKeyHash> by_left, by_right;
  bool saturated = false;
  int rounds = 0;

  int total() const { return offset + static_cast<int>(facts.size()); }
  const Fact& get(int id) const { return id < offset ? base->get(id) : facts[id - offset]; }

  int find(Formula f) const {
    if (!f) return -1;
    if (base) {
      int i = base->find(f);
      if (i >= 0) return i;
    }
    auto it = ids.find(f.node());
    return it == ids.end() ? -1 : it->second;
  }

  // Calls fn(id) for facts of size at most max_size whose left (or right)
  // child is child. Ids ascend within each size; fn returning false skips the
  // rest of the current size.
  template <class Fn>
  void each_child(bool left, Connective c, Formula child, int max_size, Fn& fn) const {
    if (base) base->each_child(left, c, child, max_size, fn);
    auto& m = left ? by_left : by_right;
    for (int sz = child.size() + 1; sz <= max_size; ++sz) {
      auto it = m.find({child.node(), c, static_cast<std::uint16_t>(sz)});
      if (it == m.end()) continue;
      for (int id : it->second)
        if (!fn(id)) break;
    }
  }

  void add(const Fact& f) {
    int id = total();
    ids.emplace(f.formula.node(), id);
    if (f.formula.is_binary()) {
      auto sz = static_cast<std::uint16_t>(f.formula.size());
      by_left[{f.formula.left().node(), f.formula.kind(), sz}].push_back(id);
      by_right[{f.formula.right().node(), f.formula.kind(), sz}].push_back(id);
    }
    facts.push_back(f);
  }
};

}  // namespace detail

using detail::Stratum;

std::string Budget::describe() const {
  std::string out = "size=" + std::to_string(max_size) + " rounds=" + std::to_string(max_rounds) +
                    " terms=" + std::to_string(term_size) + " atoms=";
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? "," : "") + atoms[i];
  if (with_top) out += " +top";
  if (with_bot) out += " +bot";
  if (!seeds.empty()) {
    out += " seeds=";
    for (std::size_t i = 0; i < seeds.size(); ++i) out += (i ? "|" : "") + print(seeds[i]);
  }
  out += " facts<=" + std::to_string(max_facts);
  return out;
}

int worker_count() {
  if (const char* s = std::getenv("SUBINT_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return std::min(n, 256);
  }
  return 1;
}

namespace {

using SNode = SchemaNode;

// Sorted by size, then structurally.
struct Universe {
  std::vector<Formula> terms;
};

Universe build_universe(const LogicSpec& logic, const Budget& budget) {
  std::vector<std::string> atoms = budget.atoms;
  if (atoms.empty()) {
    for (Formula s : budget.seeds)
      for (auto& a : atoms_of(s))
        if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  }
  if (atoms.empty()) atoms = {"p", "q"};
  std::vector<std::vector<Formula>> level(std::max(budget.term_size, 0) + 1);
  for (auto& a : atoms) level[0].push_back(Formula::atom(a));
  if (budget.with_top) level[0].push_back(Formula::top());
  if (budget.with_bot && admits(logic.fragment, Connective::Bot)) level[0].push_back(Formula::bot());
  std::vector<Connective> conns;
  for (Connective c : {Connective::Imp, Connective::And, Connective::Or})
    if (admits(logic.fragment, c)) conns.push_back(c);
  for (int k = 1; k <= budget.term_size; ++k)
    for (Connective c : conns)
      for (int i = 0; i < k; ++i)
        for (Formula l : level[i])
          for (Formula r : level[k - 1 - i]) level[k].push_back(Formula::make(c, l, r));
  std::set<Formula, FormulaLess> all;
  for (auto& lv : level) all.insert(lv.begin(), lv.end());
  for (Formula s : budget.seeds) {
    std::vector<Formula> subs;
    collect_subformulas(s, subs);
    for (Formula t : subs)
      if (in_fragment(t, logic.fragment) && t.size() <= budget.max_size) all.insert(t);
  }
  Universe u;
  u.terms.assign(all.begin(), all.end());  // compare orders by size first
  return u;
}

struct Candidate {
  Formula formula;
  Fact::Kind kind;
  int index;
  int rank;  // position of the rule or axiom name in sorted order
  int npremises;
  int premises[4];
};

// Smaller is preferred: name rank, then premise ids.
bool better(const Candidate& a, const Candidate& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return std::lexicographical_compare(a.premises, a.premises + a.npremises, b.premises,
                                      b.premises + b.npremises);
}

using CandMap = std::unordered_map<const Node*, Candidate>;

void offer(CandMap& out, const Candidate& c) {
  auto [it, inserted] = out.try_emplace(c.formula.node(), c);
  if (!inserted && better(c, it->second)) it->second = c;
}

bool probe(const SNode& n, const Binding& b, bool& left, Connective& c, Formula& child) {
  switch (n.kind) {
    case SNode::Kind::Tele:
      if (!b.tele_bound) return false;
      if (!b.tele.empty()) {
        left = true;
        c = Connective::Imp;
        child = b.tele[0];
        return true;
      }
      return probe(*n.left, b, left, c, child);
    case SNode::Kind::Imp:
    case SNode::Kind::And:
    case SNode::Kind::Or:
      c = n.kind == SNode::Kind::Imp ? Connective::Imp : n.kind == SNode::Kind::And ? Connective::And : Connective::Or;
      if (schema_ops::determined(*n.left, b)) {
        left = true;
        child = schema_ops::find(*n.left, b);
        return true;
      }
      if (schema_ops::determined(*n.right, b)) {
        left = false;
        child = schema_ops::find(*n.right, b);
        return true;
      }
      return false;
    default:
      return false;
  }
}

struct Emitter {
  const Universe& uni;
  int max_size;
  const Stratum& st;
  CandMap& out;
};

// Binds the remaining free metavariables of `conclusion` from the universe
// and offers each resulting formula.
void close_free(const Emitter& e, const SNode& conclusion, const MetaTable& table,
                const std::vector<int>& free, std::size_t fi, Binding& b, Candidate& cand) {
  if (fi == free.size()) {
    if (schema_ops::size_under(conclusion, b) > e.max_size) return;
    Formula f = schema_ops::find(conclusion, b);
    if (f && e.st.find(f) >= 0) return;
    if (!f) f = schema_ops::build(conclusion, b);
    cand.formula = f;
    offer(e.out, cand);
    return;
  }
  int m = free[fi];
  if (b.slot[m]) {
    close_free(e, conclusion, table, free, fi + 1, b, cand);
    return;
  }
  std::array<int, kMaxMetavars> counts{};
  schema_ops::count_unbound(conclusion, b, counts);
  int remaining = e.max_size - schema_ops::size_under(conclusion, b);
  int mult = std::max(counts[m], 1);
  for (Formula t : e.uni.terms) {
    if (t.size() * mult > remaining) break;
    if (table.letter_only[m] && !t.is(Connective::Atom)) continue;
    b.slot[m] = t;
    close_free(e, conclusion, table, free, fi + 1, b, cand);
  }
  b.slot[m] = Formula();
}

struct RuleRun {
  const Emitter& e;
  const RuleSpec& rule;
  int rule_index;
  int rank;
  std::vector<int> order;
  int lo[4], hi[4];
  Binding b;
  int prem[4] = {-1, -1, -1, -1};

  void finish() {
    Candidate c;
    c.kind = Fact::Kind::Rule;
    c.index = rule_index;
    c.rank = rank;
    c.npremises = static_cast<int>(rule.premises.size());
    for (int i = 0; i < 4; ++i) c.premises[i] = prem[i];
    close_free(e, rule.conclusion.root(), rule.table(), rule.free_metas, 0, b, c);
  }

  void try_fact(std::size_t k, int i, int id) {
    const SNode& node = rule.premises[i].root();
    Formula f = e.st.get(id).formula;
    auto next = [&, k, i, id] {
      prem[i] = id;
      if (schema_ops::size_under(rule.conclusion.root(), b) <= e.max_size) go(k + 1);
      prem[i] = -1;
    };
    schema_ops::match(node, f, b, Continuation(next));
  }

  // Largest size a fact matching premise i can have while the conclusion
  // still fits: unbound premise metavariables that reappear in the conclusion
  // are limited by the conclusion's remaining room.
  int premise_cap(int i) const {
    const SNode& prem = rule.premises[i].root();
    const SNode& concl = rule.conclusion.root();
    if (rule.premises[i].telescoped() && !b.tele_bound) return e.max_size;
    std::array<int, kMaxMetavars> cp{}, cc{};
    schema_ops::count_unbound(prem, b, cp);
    schema_ops::count_unbound(concl, b, cc);
    int remaining = e.max_size - schema_ops::size_under(concl, b);
    long cap = schema_ops::size_under(prem, b);
    for (int m = 0; m < kMaxMetavars; ++m) {
      if (!cp[m]) continue;
      if (!cc[m]) return e.max_size;
      cap += static_cast<long>(cp[m]) * (remaining / cc[m]);
    }
    return static_cast<int>(std::min<long>(cap, e.max_size));
  }

  void go(std::size_t k) {
    if (k == order.size()) {
      finish();
      return;
    }
    int i = order[k];
    if (lo[i] >= hi[i]) return;
    const SNode& node = rule.premises[i].root();
    if (k > 0 && schema_ops::determined(node, b)) {
      int id = e.st.find(schema_ops::find(node, b));
      if (id >= lo[i] && id < hi[i]) try_fact(k, i, id);
      return;
    }
    bool left;
    Connective c;
    Formula child;
    if (k > 0 && probe(node, b, left, c, child)) {
      if (!child) return;
      auto visit = [&](int id) {
        if (id >= hi[i]) return false;
        if (id >= lo[i]) try_fact(k, i, id);
        return true;
      };
      e.st.each_child(left, c, child, premise_cap(i), visit);
      return;
    }
    int cap = premise_cap(i);
    for (int id = lo[i]; id < hi[i]; ++id)
      if (e.st.get(id).formula.size() <= cap) try_fact(k, i, id);
  }
};

std::vector<int> name_ranks(const std::vector<std::string>& names) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  for (auto& n : names)
    out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), n) - sorted.begin()));
  return out;
}

// Appends the merged candidates as facts of the given round; returns false
// when the fact cap was hit.
bool commit(Stratum& st, CandMap& cands, int round, std::size_t max_facts, bool theorem_stage) {
  std::vector<Candidate> v;
  v.reserve(cands.size());
  for (auto& [_, c] : cands) v.push_back(c);
  std::sort(v.begin(), v.end(), [](const Candidate& a, const Candidate& b) {
    return compare(a.formula, b.formula) < 0;
  });
  bool ok = true;
  for (auto& c : v) {
    if (static_cast<std::size_t>(st.total()) >= max_facts) {
      ok = false;
      break;
    }
    Fact f;
    f.formula = c.formula;
    f.kind = c.kind;
    f.index = static_cast<std::int16_t>(c.index);
    f.npremises = static_cast<std::int8_t>(c.npremises);
    for (int i = 0; i < 4; ++i) f.premises[i] = c.premises[i];
    f.round = round;
    f.theorem = theorem_stage;
    st.add(f);
  }
  return ok;
}

// Runs rounds 1..max_rounds of semi-naive closure. delta_begin marks the
// first fact of round 0's delta. In the assumption stage, theorem-only rules
// are skipped and weak-major premises are restricted to ids < t_count.
void run_rounds(Stratum& st, const LogicSpec& logic, const Universe& uni, const Budget& budget,
                int delta_begin, bool theorem_stage, int t_count, Formula goal) {
  std::vector<std::string> names;
  for (auto& r : logic.rules) names.push_back(r.name);
  std::vector<int> ranks = name_ranks(names);
  int workers = worker_count();
  int d0 = delta_begin, d1 = st.total();
  st.saturated = false;
  st.rounds = 0;
  if (goal && st.find(goal) >= 0) return;
  for (int round = 1; round <= budget.max_rounds; ++round) {
    std::vector<CandMap> maps(workers);
    auto work = [&](int w) {
      int span = d1 - d0;
      int c0 = d0 + static_cast<int>(static_cast<long long>(span) * w / workers);
      int c1 = d0 + static_cast<int>(static_cast<long long>(span) * (w + 1) / workers);
      Emitter e{uni, budget.max_size, st, maps[w]};
      for (std::size_t ri = 0; ri < logic.rules.size(); ++ri) {
        const RuleSpec& rule = logic.rules[ri];
        if (!theorem_stage && rule.mode == RuleMode::TheoremOnly) continue;
        int np = static_cast<int>(rule.premises.size());
        for (int j = 0; j < np; ++j) {
          bool major_thm = !theorem_stage && rule.mode == RuleMode::WeakMajor;
          if (major_thm && j == rule.major) continue;  // delta holds no theorems here
          RuleRun run{e, rule, static_cast<int>(ri), ranks[ri], {}, {}, {}, {}};
          run.order.push_back(j);
          for (int i = 0; i < np; ++i) {
            if (i != j) run.order.push_back(i);
            run.lo[i] = 0;
            run.hi[i] = i < j ? d0 : d1;
            if (major_thm && i == rule.major) run.hi[i] = std::min(run.hi[i], t_count);
          }
          run.lo[j] = c0;
          run.hi[j] = c1;
          run.go(0);
        }
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    CandMap merged = std::move(maps[0]);
    for (int w = 1; w < workers; ++w)
      for (auto& [_, c] : maps[w]) offer(merged, c);
    st.rounds = round;
    if (merged.empty()) {
      st.saturated = true;
      return;
    }
    bool ok = commit(st, merged, round, budget.max_facts, theorem_stage);
    d0 = d1;
    d1 = st.total();
    if (!ok) return;
    if (goal && st.find(goal) >= 0) return;
  }
}

void add_axiom_instances(const AxiomSpec& ax, int index, int rank, const Universe& uni, int max_size,
                         const Stratum& st, CandMap& out) {
  const Schema& s = ax.schema;
  const auto& metas = s.metavars();
  Binding b;
  Candidate c;
  c.kind = Fact::Kind::Axiom;
  c.index = index;
  c.rank = rank;
  c.npremises = 0;
  for (int& p : c.premises) p = -1;
  Emitter e{uni, max_size, st, out};
  std::function<void()> tele_step = [&] {
    close_free(e, s.root(), s.table(), metas, 0, b, c);
    if (!s.telescoped()) return;
    std::array<int, kMaxMetavars> counts{};
    schema_ops::count_unbound(s.root(), b, counts);
    int occurrences = s.telescope_count();
    int remaining = max_size - schema_ops::size_under(s.root(), b);
    for (Formula t : uni.terms) {
      if ((t.size() + 1) * occurrences > remaining) break;
      b.tele.push_back(t);
      tele_step();
      b.tele.pop_back();
    }
  };
  b.tele_bound = s.telescoped();
  tele_step();
}

std::string logic_fingerprint(const LogicSpec& l) {
  std::string out = l.name + "|" + std::string(fragment_name(l.fragment));
  for (auto& a : l.axioms) out += "|A:" + a.name + "=" + a.schema.text();
  for (auto& r : l.rules) {
    out += "|R:" + r.name + ":" + std::string(mode_name(r.mode)) + ":" + std::to_string(r.major);
    for (auto& p : r.premises) out += "," + p.text();
    out += "=>" + r.conclusion.text();
  }
  return out;
}

std::string universe_fingerprint(const Universe& u) {
  std::string out;
  for (Formula t : u.terms) out += print(t) + ";";
  return out;
}

struct ThmCache {
  std::mutex mu;
  std::list<std::pair<std::string, std::shared_ptr<const Stratum>>> entries;
  static constexpr std::size_t kCapacity = 6;
};

ThmCache& thm_cache() {
  static ThmCache c;
  return c;
}

std::shared_ptr<const Stratum> theorem_stratum(const LogicSpec& logic, const Universe& uni, const Budget& budget,
                                               Formula goal) {
  std::string key = logic_fingerprint(logic) + "#" + std::to_string(budget.max_size) + "/" +
                    std::to_string(budget.max_rounds) + "/" + std::to_string(budget.max_facts) + "#" +
                    universe_fingerprint(uni);
  ThmCache& cache = thm_cache();
  {
    std::lock_guard lock(cache.mu);
    for (auto it = cache.entries.begin(); it != cache.entries.end(); ++it)
      if (it->first == key) {
        auto st = it->second;
        cache.entries.splice(cache.entries.begin(), cache.entries, it);
        return st;
      }
  }
  auto st = std::make_shared<Stratum>();
  {
    std::vector<std::string> names;
    for (auto& a : logic.axioms) names.push_back(a.name);
    std::vector<int> ranks = name_ranks(names);
    CandMap axioms;
    for (std::size_t i = 0; i < logic.axioms.size(); ++i)
      add_axiom_instances(logic.axioms[i], static_cast<int>(i), ranks[i], uni, budget.max_size, *st, axioms);
    commit(*st, axioms, 0, budget.max_facts, true);
  }
  run_rounds(*st, logic, uni, budget, 0, true, 0, goal);
  bool complete = !goal || st->saturated || st->rounds == budget.max_rounds;
  if (complete && static_cast<std::size_t>(st->total()) < budget.max_facts) {
    std::lock_guard lock(cache.mu);
    cache.entries.emplace_front(key, st);
    if (cache.entries.size() > ThmCache::kCapacity) cache.entries.pop_back();
  }
  return st;
}

Connective first_outside(Formula f, Fragment fr) {
  if (!admits(fr, f.kind())) return f.kind();
  if (f.is_binary()) {
    if (!in_fragment(f.left(), fr)) return first_outside(f.left(), fr);
    return first_outside(f.right(), fr);
  }
  return f.kind();
}

void require_fragment(Formula f, Fragment fr) {
  if (!in_fragment(f, fr)) throw FragmentError(first_outside(f, fr), fr);
}

}  // namespace

ClosureSet saturate_impl(const LogicSpec& logic, const std::vector<Formula>& gamma, const Budget& budget,
                         Formula goal) {
  if (budget.max_size < 0 || budget.max_rounds < 0) throw std::invalid_argument("budget must be non-negative");
  for (Formula g : gamma) require_fragment(g, logic.fragment);
  ClosureSet cs;
  cs.logic_ = std::make_shared<LogicSpec>(logic);
  cs.gamma_ = gamma;
  cs.budget_ = budget;
  Universe uni = build_universe(logic, budget);
  cs.thm_ = theorem_stratum(logic, uni, budget, goal);
  cs.theorems_saturated_ = cs.thm_->saturated && static_cast<std::size_t>(cs.thm_->total()) < budget.max_facts;

  auto der = std::make_shared<Stratum>();
  der->base = cs.thm_;
  der->offset = cs.thm_->total();
  for (Formula g : gamma) {
    if (der->find(g) >= 0) continue;
    Fact f;
    f.formula = g;
    f.kind = Fact::Kind::Assumption;
    f.theorem = false;
    der->add(f);
  }
  if (!(goal && der->find(goal) >= 0))
    run_rounds(*der, logic, uni, budget, der->offset, false, der->offset, goal);
  cs.derived_saturated_ = der->saturated && static_cast<std::size_t>(der->total()) < budget.max_facts;
  cs.rounds_used_ = std::max(cs.thm_->rounds, der->rounds);
  cs.der_ = der;
  return cs;
}

ClosureSet saturate(const LogicSpec& logic, const std::vector<Formula>& gamma, const Budget& budget) {
  return saturate_impl(logic, gamma, budget, Formula());
}

bool ClosureSet::derived(Formula f) const { return der_->find(f) >= 0; }
bool ClosureSet::theorem(Formula f) const { return thm_->find(f) >= 0; }
std::size_t ClosureSet::theorem_count() const { return thm_->facts.size(); }
std::size_t ClosureSet::derived_count() const { return static_cast<std::size_t>(der_->total()); }

std::vector<Formula> ClosureSet::theorems() const {
  std::vector<Formula> out;
  out.reserve(thm_->facts.size());
  for (auto& f : thm_->facts) out.push_back(f.formula);
  return out;
}

std::vector<Formula> ClosureSet::derived_set() const {
  std::vector<Formula> out = theorems();
  for (auto& f : der_->facts) out.push_back(f.formula);
  return out;
}

std::optional<int> ClosureSet::id_of(Formula f) const {
  int id = der_->find(f);
  if (id < 0) return std::nullopt;
  return id;
}

const Fact& ClosureSet::fact(int id) const { return der_->get(id); }

std::optional<ProofScript> ClosureSet::extract(Formula target) const {
  int root = der_->find(target);
  if (root < 0) return std::nullopt;
  std::set<int> needed;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!needed.insert(id).second) continue;
    const Fact& f = der_->get(id);
    for (int i = 0; i < f.npremises; ++i) stack.push_back(f.premises[i]);
  }
  ProofScript s;
  s.logic = logic_->name;
  s.assumptions = gamma_;
  std::map<int, int> step;
  for (int id : needed) {
    const Fact& f = der_->get(id);
    ProofLine l;
    l.index = static_cast<int>(step.size()) + 1;
    l.formula = f.formula;
    switch (f.kind) {
      case Fact::Kind::Assumption:
        l.just.kind = Justification::Kind::Assumption;
        break;
      case Fact::Kind::Axiom: {
        const AxiomSpec& ax = logic_->axioms[f.index];
        l.just.kind = Justification::Kind::Axiom;
        l.just.name = ax.name;
        if (auto b = match_axiom(ax, f.formula))
          l.just.assignment = to_assignment(ax.schema.table(), *b, ax.schema.telescoped());
        break;
      }
      case Fact::Kind::Rule: {
        const RuleSpec& rule = logic_->rules[f.index];
        l.just.kind = Justification::Kind::Rule;
        l.just.name = rule.name;
        std::vector<Formula> prem;
        for (int i = 0; i < f.npremises; ++i) {
          l.just.premises.push_back(step.at(f.premises[i]));
          prem.push_back(der_->get(f.premises[i]).formula);
        }
        bool tele = rule.conclusion.telescoped();
        for (auto& p : rule.premises) tele = tele || p.telescoped();
        if (auto b = match_rule(rule, prem, f.formula)) l.just.assignment = to_assignment(rule.table(), *b, tele);
        break;
      }
    }
    step[id] = l.index;
    s.lines.push_back(std::move(l));
  }
  return s;
}

DeriveResult derives(const LogicSpec& logic, const std::vector<Formula>& gamma, Formula goal,
                     const Budget& budget) {
  require_fragment(goal, logic.fragment);
  Budget b = budget;
  b.seeds.push_back(goal);
  for (Formula g : gamma) b.seeds.push_back(g);
  if (b.atoms.empty()) {
    for (Formula s : b.seeds)
      for (auto& a : atoms_of(s))
        if (std::find(b.atoms.begin(), b.atoms.end(), a) == b.atoms.end()) b.atoms.push_back(a);
  }
  DeriveResult r;
  if (goal.size() > b.max_size) return r;
  ClosureSet cs = saturate_impl(logic, gamma, b, goal);
  if (!cs.derived(goal)) return r;
  r.script = cs.extract(goal);
  Verdict v = check_proof(*r.script, logic);
  if (!v.accepted())
    throw std::logic_error("extracted proof rejected at line " + std::to_string(v.line) + ": " + v.reason);
  r.status = DeriveResult::Status::Proved;
  return r;
}

bool shape_wfminus(Formula f) {
  require_fragment(f, Fragment::ImpOnly);
  for (Formula g = f; g.is(Connective::Imp); g = g.right())
    if (g.left() == g.right()) return true;
  return false;
}

std::vector<TheoryViolation> theory_violations(const LogicSpec& logic, const std::vector<Formula>& candidate,
                                               const Budget& budget) {
  std::vector<TheoryViolation> out;
  std::unordered_map<const Node*, bool> in;
  for (Formula c : candidate) in[c.node()] = true;
  auto member = [&](Formula f) { return f && in.count(f.node()); };
  ClosureSet thm = saturate(logic, {}, budget);
  std::vector<Formula> theorems = thm.theorems();
  for (const RuleSpec& rule : logic.rules) {
    bool applies = rule.mode == RuleMode::Unrestricted || rule.name == "trans_tele";
    if (!applies || !rule.free_metas.empty() || rule.premises.size() > 2) continue;
    std::vector<Formula> prem(rule.premises.size());
    std::function<void(std::size_t)> pick = [&](std::size_t k) {
      if (k == prem.size()) {
        // Every conclusion the premises admit (telescopes may split several ways).
        Binding b;
        std::function<void(std::size_t)> chain = [&](std::size_t i) {
          if (i == prem.size()) {
            if (schema_ops::size_under(rule.conclusion.root(), b) > budget.max_size) return;
            Formula c = schema_ops::build(rule.conclusion.root(), b);
            if (!member(c)) {
              for (auto& v : out)
                if (v.condition == 'a' && v.missing == c) return;
              out.push_back({'a', c, rule.name, prem});
            }
            return;
          }
          auto next = [&, i] { chain(i + 1); };
          schema_ops::match(rule.premises[i].root(), prem[i], b, Continuation(next));
        };
        chain(0);
        return;
      }
      for (Formula c : candidate) {
        prem[k] = c;
        pick(k + 1);
      }
    };
    pick(0);
  }
  for (Formula t : theorems)
    if (t.is(Connective::Imp) && member(t.left()) && !member(t.right()))
      out.push_back({'b', t.right(), "theorem", {t, t.left()}});
  for (Formula t : theorems)
    if (!member(t)) out.push_back({'c', t, "theorem", {}});
  return out;
}

}  // namespace subint
