#include <gtest/gtest.h>

#include <random>

#include "subint/formula.hpp"

using namespace subint;

namespace {

Formula p() { return Formula::atom("p"); }
Formula q() { return Formula::atom("q"); }
Formula r() { return Formula::atom("r"); }

Formula random_formula(std::mt19937_64& rng, int depth, Fragment fr) {
  std::uniform_int_distribution<int> pick(0, 9);
  int k = pick(rng);
  if (depth == 0 || k < 3) {
    static const char* names[] = {"p", "q", "r", "s1", "a_b"};
    int a = std::uniform_int_distribution<int>(0, 6)(rng);
    if (a == 5) return Formula::top();
    if (a == 6) return fr == Fragment::Full ? Formula::bot() : Formula::top();
    return Formula::atom(names[a]);
  }
  Formula l = random_formula(rng, depth - 1, fr);
  Formula rr = random_formula(rng, depth - 1, fr);
  int c = std::uniform_int_distribution<int>(0, 2)(rng);
  if (fr == Fragment::ImpOnly) c = 0;
  if (fr == Fragment::ImpAnd) c = c % 2;
  return c == 0 ? Formula::imp(l, rr) : c == 1 ? Formula::conj(l, rr) : Formula::disj(l, rr);
}

}  // namespace

TEST(Parse, ImplicationIsRightAssociative) {
  EXPECT_EQ(parse("p->q->p", Fragment::ImpOnly), Formula::imp(p(), Formula::imp(q(), p())));
}

TEST(Parse, ConjunctionBindsTighterThanImplication) {
  EXPECT_EQ(parse("p & q -> p", Fragment::ImpAnd), Formula::imp(Formula::conj(p(), q()), p()));
}

TEST(Parse, ConjunctionBindsTighterThanDisjunction) {
  EXPECT_EQ(parse("p | q & r"), Formula::disj(p(), Formula::conj(q(), r())));
  EXPECT_EQ(parse("p | q | r"), Formula::disj(Formula::disj(p(), q()), r()));
  EXPECT_EQ(parse("p & q & r"), Formula::conj(Formula::conj(p(), q()), r()));
}

TEST(Parse, FragmentViolationNamesConnective) {
  try {
    parse("p | q", Fragment::ImpOnly);
    FAIL();
  } catch (const FragmentError& e) {
    EXPECT_EQ(e.offending(), Connective::Or);
  }
  EXPECT_THROW(parse("bot -> p", Fragment::ImpAnd), FragmentError);
  EXPECT_NO_THROW(parse("top -> p", Fragment::ImpOnly));
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse("p -> -> q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse("(p -> q"), ParseError);
  EXPECT_THROW(parse("P -> q"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("p q"), ParseError);
}

TEST(Parse, UnicodeAliases) {
  EXPECT_EQ(parse("p ∧ q → ⊤"), parse("p & q -> top"));
  EXPECT_EQ(parse("⊥ ∨ p"), parse("bot | p"));
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(print(Formula::imp(p(), Formula::imp(q(), p()))), "p -> q -> p");
  EXPECT_EQ(print(Formula::conj(p(), q())), "p & q");
  EXPECT_EQ(print(Formula::imp(Formula::imp(p(), q()), r())), "(p -> q) -> r");
  EXPECT_EQ(print(parse("p & (q & r)")), "p & (q & r)");
  EXPECT_EQ(print(parse("(p | q) & r")), "(p | q) & r");
  EXPECT_EQ(print(parse("p | q & r")), "p | q & r");
  EXPECT_EQ(print(parse("top -> bot")), "top -> bot");
}

TEST(Print, NeverEmitsUnicode) {
  std::string s = print(parse("p ∧ q → ⊤ ∨ ⊥"));
  for (unsigned char c : s) EXPECT_LT(c, 128);
}

TEST(Telescope, Arities) {
  EXPECT_EQ(telescope({}, q()), q());
  std::vector<Formula> one{p()};
  EXPECT_EQ(telescope(one, q()), Formula::imp(p(), q()));
  std::vector<Formula> two{p(), q()};
  EXPECT_EQ(telescope(two, r()), Formula::imp(p(), Formula::imp(q(), r())));
}

TEST(Fragment, Membership) {
  EXPECT_TRUE(in_fragment(parse("p->(q->p)"), Fragment::ImpOnly));
  EXPECT_FALSE(in_fragment(parse("p&q->p"), Fragment::ImpOnly));
  EXPECT_FALSE(in_fragment(parse("bot->p"), Fragment::ImpAnd));
  EXPECT_TRUE(in_fragment(parse("bot->p"), Fragment::Full));
  EXPECT_EQ(fragment_of(parse("p & q -> top")), Fragment::ImpAnd);
}

TEST(Formula, SizeCountsBinaryConnectives) {
  EXPECT_EQ(parse("p").size(), 0);
  EXPECT_EQ(parse("top").size(), 0);
  EXPECT_EQ(parse("(p->q)->p&q").size(), 3);
}

TEST(Formula, HashConsing) {
  EXPECT_EQ(parse("(p->q)->r"), Formula::imp(Formula::imp(p(), q()), r()));
  EXPECT_EQ(parse("p->q").hash(), Formula::imp(p(), q()).hash());
  EXPECT_NE(parse("p->q"), parse("q->p"));
}

TEST(Property, ParsePrintRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (Fragment fr : {Fragment::ImpOnly, Fragment::ImpAnd, Fragment::Full}) {
    for (int i = 0; i < 2000; ++i) {
      Formula f = random_formula(rng, 5, fr);
      std::string text = print(f);
      ASSERT_EQ(parse(text, fr), f) << text;
      ASSERT_EQ(print(parse(text)), text);
      ASSERT_TRUE(in_fragment(f, fr));
    }
  }
}

TEST(Property, PrintOfParseIsIdempotent) {
  const char* inputs[] = {"((p))", "(p -> (q -> r))", "((p & q) & r)", "p|(q|r)", "(top)->((bot))"};
  for (const char* in : inputs) {
    std::string once = print(parse(in));
    EXPECT_EQ(print(parse(once)), once);
  }
}

TEST(Property, TelescopeDepth) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::vector<Formula> args;
    int n = static_cast<int>(rng() % 5);
    for (int j = 0; j < n; ++j) args.push_back(random_formula(rng, 2, Fragment::Full));
    Formula body = random_formula(rng, 3, Fragment::Full);
    EXPECT_GE(imp_depth(telescope(args, body)), n);
  }
}

TEST(Compare, TotalOrderBySizeFirst) {
  EXPECT_LT(compare(parse("p"), parse("p->p")), 0);
  EXPECT_EQ(compare(parse("p->q"), parse("p->q")), 0);
  EXPECT_EQ(compare(parse("p->q"), parse("q->p")), -compare(parse("q->p"), parse("p->q")));
}
