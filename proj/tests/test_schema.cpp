#include <gtest/gtest.h>

#include <random>

#include "subint/schema.hpp"

using namespace subint;

namespace {

Assignment assign(std::initializer_list<std::pair<const char*, const char*>> kv,
                  std::vector<std::string> tele = {}) {
  Assignment a;
  for (auto& [k, v] : kv) a.bindings[k] = parse(v);
  for (auto& t : tele) a.telescope_args.push_back(parse(t));
  return a;
}

// Independent oracle: all ways to peel n leading antecedents off f, then a
// plain structural match of B -> C against the remainder.
std::vector<Assignment> oracle_tele_b_imp_c(Formula f) {
  std::vector<Assignment> out;
  std::vector<Formula> args;
  Formula g = f;
  while (g.is(Connective::Imp)) {
    Assignment a;
    a.bindings["B"] = g.left();
    a.bindings["C"] = g.right();
    a.telescope_args = args;
    out.push_back(a);
    args.push_back(g.left());
    g = g.right();
  }
  return out;
}

}  // namespace

TEST(Instantiate, Identity) {
  Schema s = Schema::parse("A -> A");
  EXPECT_EQ(instantiate(s, assign({{"A", "p->q"}})), parse("(p->q)->(p->q)"));
}

TEST(Instantiate, Telescope) {
  Schema s = Schema::parse("..(B -> C)");
  EXPECT_EQ(instantiate(s, assign({{"B", "q"}, {"C", "r"}}, {"p"})), parse("p->q->r"));
  EXPECT_EQ(instantiate(s, assign({{"B", "q"}, {"C", "r"}})), parse("q->r"));
}

TEST(Instantiate, AxiomR) {
  Schema s = Schema::parse("A & (A -> B) -> B");
  EXPECT_EQ(instantiate(s, assign({{"A", "p"}, {"B", "q"}})), parse("p & (p -> q) -> q"));
}

TEST(Instantiate, MissingBindingThrows) {
  Schema s = Schema::parse("A -> B");
  EXPECT_THROW(instantiate(s, assign({{"A", "p"}})), InstantiationError);
}

TEST(Instantiate, LetterOnlyRejectsCompound) {
  Schema s = Schema::parse("?X -> (top -> ?X)");
  EXPECT_EQ(instantiate(s, assign({{"X", "p"}})), parse("p -> top -> p"));
  EXPECT_THROW(instantiate(s, assign({{"X", "p->p"}})), InstantiationError);
}

TEST(Match, Identity) {
  auto r = match_schema(Schema::parse("A -> A"), parse("(p->q)->(p->q)"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].bindings.at("A"), parse("p->q"));
  EXPECT_TRUE(match_schema(Schema::parse("A -> A"), parse("p->q")).empty());
}

TEST(Match, TelescopeReturnsEveryArity) {
  auto r = match_schema(Schema::parse("..(B -> C)"), parse("p->q->r"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].telescope_args.empty());
  EXPECT_EQ(r[0].bindings.at("B"), parse("p"));
  EXPECT_EQ(r[0].bindings.at("C"), parse("q->r"));
  ASSERT_EQ(r[1].telescope_args.size(), 1u);
  EXPECT_EQ(r[1].bindings.at("B"), parse("q"));
  EXPECT_EQ(r[1].bindings.at("C"), parse("r"));
}

TEST(Match, TelescopeAgreesWithOracle) {
  const char* fs[] = {"p", "p->q", "p->q->r->s", "(p->q)->(q->r)->p", "p&q->r"};
  Schema s = Schema::parse("..(B -> C)");
  for (const char* t : fs) {
    auto got = match_schema(s, parse(t));
    auto want = oracle_tele_b_imp_c(parse(t));
    EXPECT_EQ(got, want) << t;
  }
}

TEST(Match, SharedTelescopeArity) {
  // Two occurrences of ..X must use the same prefix.
  Schema s = Schema::parse("(..A) & (..B)");
  EXPECT_EQ(match_schema(s, parse("(p->q) & (p->r)")).size(), 2u);
  auto r = match_schema(s, parse("(p->q) & (s->r)"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].telescope_args.empty());
}

TEST(Match, LetterOnly) {
  Schema s = Schema::parse("?X -> (top -> ?X)");
  EXPECT_EQ(match_schema(s, parse("p -> top -> p")).size(), 1u);
  EXPECT_TRUE(match_schema(s, parse("(p->p) -> top -> p -> p")).empty());
}

TEST(Schema, MetavarsListed) {
  Schema s = Schema::parse("(A -> B) -> ((B -> C) -> (A -> C))");
  EXPECT_EQ(s.metavar_names(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_FALSE(s.telescoped());
  EXPECT_TRUE(Schema::parse("..(A -> A)").telescoped());
  EXPECT_FALSE(Schema::parse("A -> B").in_fragment(Fragment::ImpOnly) == false);
  EXPECT_FALSE(Schema::parse("A | B").in_fragment(Fragment::ImpAnd));
}

TEST(Property, MatchCompleteness) {
  std::mt19937_64 rng(99);
  const char* schemas[] = {"A -> A", "..(B -> C)", "A & (A -> B) -> B", "(A -> B) -> (C -> (A -> B))",
                           "..(A -> (B -> A))", "A | B -> C"};
  const char* pool[] = {"p", "q", "p->q", "q&p", "top", "p|q", "(p->q)->p"};
  for (const char* st : schemas) {
    Schema s = Schema::parse(st);
    for (int i = 0; i < 200; ++i) {
      Assignment a;
      for (auto& n : s.metavar_names()) a.bindings[n] = parse(pool[rng() % 7]);
      if (s.telescoped()) {
        int n = static_cast<int>(rng() % 3);
        for (int j = 0; j < n; ++j) a.telescope_args.push_back(parse(pool[rng() % 7]));
      }
      Formula f = instantiate(s, a);
      auto all = match_schema(s, f);
      bool found = false;
      for (auto& b : all) {
        EXPECT_EQ(instantiate(s, b), f);
        found = found || b == a;
      }
      EXPECT_TRUE(found) << st << " / " << print(f);
    }
  }
}
