#include <gtest/gtest.h>

#include "gen.hpp"
#include "symlog/formula.hpp"
#include "symlog/printer.hpp"

using namespace symlog;

namespace {

Formula A(const Term& t) { return mk::atom("A", {t}); }

}  // namespace

TEST(Terms, OutcomeProbabilityRange) {
  EXPECT_NO_THROW(outcome("down", 1));
  EXPECT_NO_THROW(outcome("down", Rational(1, 2)));
  EXPECT_THROW(outcome("down", 0), Error);
  EXPECT_THROW(outcome("down", Rational(3, 2)), Error);
}

TEST(Terms, ExactProbabilitiesCompare) {
  EXPECT_EQ(outcome("down", Rational(2, 4)), outcome("down", Rational(1, 2)));
  EXPECT_FALSE(outcome("down", Rational(1, 2)) == outcome("up", Rational(1, 2)));
}

TEST(FreeVars, Basics) {
  EXPECT_TRUE(free_vars(mk::forall("x", "D", A(var("x")))).empty());
  EXPECT_EQ(free_vars(mk::member(var("z"), "D")), std::set<std::string>{"z"});
  auto j = mk::join(Corr::identical, mk::atom("A", {var("z")}, Index::iconst(1)),
                    mk::atom("A", {var("z")}, Index::iconst(2)));
  EXPECT_EQ(free_vars(j), std::set<std::string>{"z"});
}

TEST(Substitute, Basics) {
  auto t1 = outcome("t1", Rational(1, 2));
  EXPECT_TRUE(identical(substitute(A(var("z")), "z", t1), A(t1)));
  auto q = mk::forall("z", "D", A(var("z")));
  EXPECT_TRUE(identical(substitute(q, "z", t1), q));
  EXPECT_TRUE(identical(substitute(mk::member(var("z"), "Ddown"), "z", outcome("down", 1)),
                        mk::member(outcome("down", 1), "Ddown")));
  EXPECT_THROW(substitute(A(var("z")), "z", var("y")), Error);
}

TEST(ReplaceVar, AvoidsCapture) {
  // (forall y in D. R(z, y))[z := y] must rename the binder.
  auto f = mk::forall("y", "D", mk::atom("R", {var("z"), var("y")}));
  auto g = replace_var(f, "z", var("y"));
  auto q = as<QuantF>(g);
  ASSERT_NE(q, nullptr);
  EXPECT_NE(q->var, "y");
  EXPECT_EQ(free_vars(g), std::set<std::string>{"y"});
}

TEST(FormulaEqual, Alpha) {
  EXPECT_TRUE(formula_equal(mk::forall("x", "D", A(var("x"))), mk::forall("y", "D", A(var("y")))));
  EXPECT_FALSE(formula_equal(mk::forall("x", "D", A(var("x"))), mk::forall("x", "V", A(var("x")))));
  EXPECT_FALSE(formula_equal(mk::conj(mk::atom("A"), mk::atom("B")), mk::conj(mk::atom("B"), mk::atom("A"))));
  EXPECT_FALSE(formula_equal(mk::join(Corr::identical, mk::atom("A", {}, Index::iconst(1)), mk::atom("A", {}, Index::iconst(2))),
                             mk::join(Corr::opposite, mk::atom("A", {}, Index::iconst(1)), mk::atom("A", {}, Index::iconst(2)))));
  // free vs bound occurrences must not be confused
  EXPECT_FALSE(formula_equal(mk::forall("x", "D", mk::atom("R", {var("x"), var("y")})),
                             mk::forall("y", "D", mk::atom("R", {var("y"), var("y")}))));
}

TEST(Properties, SubstitutionIdempotentAndAlphaRespecting) {
  testgen::FormulaGen g(7);
  auto t = cnst("c");
  for (int i = 0; i < 1000; ++i) {
    auto f = g.formula(4);
    auto once = substitute(f, "z", t);
    EXPECT_TRUE(identical(substitute(once, "z", t), once));
    EXPECT_TRUE(formula_equal(f, f));
    // renaming a free variable away and back is alpha-equivalent to the original
    auto names = std::set<std::string>{};
    all_names(f, names);
    auto fresh = fresh_name("v", names);
    auto back = replace_var(replace_var(f, "x", var(fresh)), fresh, var("x"));
    EXPECT_TRUE(formula_equal(back, f)) << to_string(f);
  }
}

TEST(Indexes, PropagateThroughCompounds) {
  auto a1 = mk::atom("A", {var("x")}, Index::iconst(1));
  auto b1 = mk::atom("B", {var("x")}, Index::iconst(1));
  for (auto c : {Conn::And, Conn::Or, Conn::Times, Conn::Par, Conn::Imp, Conn::Excl}) {
    auto idx = index_of(mk::binary(c, a1, b1));
    ASSERT_TRUE(idx);
    EXPECT_EQ(*idx, Index::iconst(1));
  }
  auto q = mk::forall("x", "V", a1);
  ASSERT_TRUE(index_of(q));
  EXPECT_EQ(*index_of(q), Index::iconst(1));
  EXPECT_TRUE(identical(reindex(q, Index::iconst(1), Index::iconst(2)),
                        mk::forall("x", "V", mk::atom("A", {var("x")}, Index::iconst(2)))));
}

TEST(Sequents, MultisetComparison) {
  auto p = mk::atom("p"), q = mk::atom("q");
  EXPECT_TRUE(same_sequent(seq({p, q}, {p}), seq({q, p}, {p})));
  EXPECT_FALSE(same_sequent(seq({p, p}, {p}), seq({p}, {p})));
  EXPECT_FALSE(identical(seq({p, q}, {p}), seq({q, p}, {p})));
}

TEST(Printer, Ascii) {
  auto f = mk::imp(mk::conj(mk::atom("p"), mk::atom("q")), mk::forall("x", "Dplus", A(var("x"))));
  EXPECT_EQ(to_string(f), "(p & q) -> (forall x in Dplus . A(x))");
  EXPECT_EQ(to_string(seq({}, {mk::member(outcome("down", Rational(1, 2)), "Dplus")})), "|- (down,1/2) in Dplus");
  EXPECT_EQ(to_string(mk::member(outcome("down", 1), "Ddown"), Style::unicode), "(↓,1) ∈ D↓");
}
