#include <gtest/gtest.h>

#include "gen.hpp"
#include "symlog/dualities.hpp"
#include "symlog/printer.hpp"
#include "symlog/registry.hpp"

using namespace symlog;

namespace {

Formula lit(const std::string& pred, const std::string& domain, Quant q = Quant::Forall) {
  auto body = mk::atom(pred, {var("x")});
  return q == Quant::Forall ? mk::forall("x", domain, body) : mk::exists("x", domain, body);
}

std::vector<Formula> qubit_literals() {
  std::vector<Formula> out;
  for (auto p : {"A", "B"})
    for (auto d : {kDown, kUp, kPlus, kMinus}) out.push_back(lit(p, d));
  return out;
}

}  // namespace

TEST(Symmetrize, Examples) {
  auto id = LiteralInvolution::identity();
  auto p = mk::atom("p"), q = mk::atom("q");
  EXPECT_TRUE(identical(symmetrize_formula(mk::imp(p, q), id), mk::excl(q, p)));
  EXPECT_TRUE(identical(symmetrize_formula(p, id), p));
  auto A = mk::atom("A"), B = mk::atom("B"), C = mk::atom("C");
  EXPECT_TRUE(identical(symmetrize_formula(mk::par(mk::conj(A, B), C), id), mk::times(C, mk::disj(B, A))));
  EXPECT_TRUE(identical(symmetrize_formula(mk::forall("x", "D", mk::member(var("x"), "D")), id),
                        mk::exists("x", "D", mk::dual_member(var("x"), "D", "d"))));
}

TEST(Symmetrize, Sequents) {
  auto id = LiteralInvolution::identity();
  auto p = mk::atom("p"), q = mk::atom("q");
  EXPECT_TRUE(identical(symmetrize_sequent(seq({mk::imp(p, q), p}, {q}), id), seq({q}, {p, mk::excl(q, p)})));
  auto a1 = mk::atom("A", {}, Index::iconst(1)), a2 = mk::atom("A", {}, Index::iconst(2));
  Sequent s{{Slot::single(mk::atom("G"))}, {Slot::pair(a1, Corr::opposite, a2)}};
  Sequent expect{{Slot::pair(a2, Corr::opposite, a1)}, {Slot::single(mk::atom("G"))}};
  EXPECT_TRUE(identical(symmetrize_sequent(s, id), expect));
}

TEST(Symmetrize, InvolutionOnRandomFormulas) {
  testgen::FormulaGen g(11);
  auto reg = standard_registry();
  for (auto kind : {LiteralInvolution::Kind::identity, LiteralInvolution::Kind::perp}) {
    auto inv = reg.involution(kind);
    for (int i = 0; i < 1000; ++i) {
      auto f = g.formula(5);
      EXPECT_TRUE(identical(symmetrize_formula(symmetrize_formula(f, inv), inv), f)) << to_string(f);
    }
  }
}

TEST(Duality, Examples) {
  EXPECT_TRUE(identical(apply_duality(lit("A", kDown), Duality::perp), lit("A", kUp)));
  EXPECT_TRUE(identical(apply_duality(lit("A", kPlus), Duality::perp), lit("A", kPlus)));
  EXPECT_TRUE(identical(apply_duality(lit("A", kPlus), Duality::top), lit("A", kMinus)));
  EXPECT_TRUE(identical(apply_duality(apply_duality(lit("A", kPlus), Duality::top), Duality::top), lit("A", kPlus)));
  EXPECT_TRUE(identical(apply_duality(lit("A", kDown), Duality::top), lit("A", kDown)));
  EXPECT_THROW(apply_duality(mk::atom("p"), Duality::perp), Error);
  EXPECT_THROW(apply_duality(lit("A", "V"), Duality::perp), Error);
}

TEST(Duality, SharpAtoms) {
  auto down = mk::atom("A", {outcome("down", 1)});
  auto up = mk::atom("A", {outcome("up", 1)});
  EXPECT_TRUE(identical(apply_duality(down, Duality::perp), up));
  EXPECT_TRUE(identical(apply_duality(down, Duality::top), down));
}

TEST(Duality, InvolutiveAndCommuting) {
  for (const auto& l : qubit_literals()) {
    for (auto d : {Duality::perp, Duality::top})
      EXPECT_TRUE(identical(apply_duality(apply_duality(l, d), d), l)) << to_string(l);
    EXPECT_TRUE(identical(apply_duality(apply_duality(l, Duality::perp), Duality::top),
                          apply_duality(apply_duality(l, Duality::top), Duality::perp)));
  }
}

TEST(Duality, InvolutiveOnRandomDictionaryFormulas) {
  std::mt19937 rng(5);
  auto lits = qubit_literals();
  std::function<Formula(int)> gen = [&](int depth) -> Formula {
    if (depth == 0 || rng() % 3 == 0) {
      if (rng() % 4 == 0) {
        auto tag = rng() % 2 ? Corr::identical : Corr::opposite;
        return mk::forall("x", rng() % 2 ? kPlus : kMinus,
                          mk::join(tag, mk::atom("A", {var("x")}, Index::iconst(1)),
                                   mk::atom("A", {var("x")}, Index::iconst(2))));
      }
      return lits[rng() % lits.size()];
    }
    return mk::binary(static_cast<Conn>(rng() % 6), gen(depth - 1), gen(depth - 1));
  };
  for (int i = 0; i < 1000; ++i) {
    auto f = gen(4);
    for (auto d : {Duality::perp, Duality::top})
      EXPECT_TRUE(identical(apply_duality(apply_duality(f, d), d), f)) << to_string(f);
  }
}
