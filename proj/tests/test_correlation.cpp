#include <gtest/gtest.h>

#include <random>

#include "gen.hpp"
#include "symlog/correlation.hpp"
#include "symlog/guard.hpp"
#include "symlog/search.hpp"

using namespace symlog;

namespace {

Formula Ai(unsigned i, const Term& t) { return mk::atom("A", {t}, Index::iconst(i)); }

std::string first_failure(const CheckReport& r) {
  return r.failures.empty() ? "" : r.failures[0].path + " " + r.failures[0].rule + " " + to_string(r.failures[0].kind) +
                                       ": " + r.failures[0].detail;
}

}  // namespace

TEST(Convert, ToRelationAndBack) {
  auto g = mk::atom("G");
  Sequent s{{Slot::single(g)}, {Slot::pair(Ai(1, var("z")), Corr::identical, Ai(2, var("z")))}};
  ConversionStep to{ConversionStep::Direction::toRelation, 0, std::nullopt};
  auto r = convert(s, to);
  Sequent expected{{Slot::single(g), Slot::single(mk::index_rel(Index::iconst(1), Corr::identical, Index::iconst(2)))},
                   {Slot::single(Ai(1, var("z")))}};
  EXPECT_TRUE(identical(r, expected));
  auto back = convert(r, {ConversionStep::Direction::toComma, 0, std::nullopt});
  EXPECT_TRUE(identical(back, s));
  EXPECT_THROW(convert(r, to), Error);
}

TEST(Convert, Idempotency) {
  auto a = Ai(1, var("z"));
  auto s = seq({}, {a, a});
  auto c = convert(s, {ConversionStep::Direction::contract, 0, std::nullopt});
  EXPECT_TRUE(identical(c, seq({}, {a})));
  EXPECT_TRUE(identical(convert(c, {ConversionStep::Direction::duplicate, 0, std::nullopt}), s));
}

TEST(Convert, RoundTripRandomAndIndexConserving) {
  testgen::FormulaGen g(3);
  int done = 0;
  for (int n = 0; done < 200 && n < 20000; ++n) {
    auto a = mk::binary(Conn::Par, Ai(1, var("x")), g.formula(2));
    auto i = index_of(a);
    if (!i || !(*i == Index::iconst(1))) continue;
    auto b = reindex(a, Index::iconst(1), Index::iconst(2));
    auto tag = g.pick(2) ? Corr::identical : Corr::opposite;
    Sequent s{{Slot::single(g.formula(2))}, {Slot::single(g.formula(1)), Slot::pair(a, tag, b)}};
    auto r = convert(s, {ConversionStep::Direction::toRelation, 1, std::nullopt});
    EXPECT_TRUE(identical(convert(r, {ConversionStep::Direction::toComma, 1, std::nullopt}), s));
    // index sets are conserved across the step
    EXPECT_EQ(sequent_indexes(r), sequent_indexes(s));
    ++done;
  }
  EXPECT_EQ(done, 200);
}

TEST(JoinStep, VirtualSingletonOnly) {
  auto reg = standard_registry();
  auto pair = Slot::pair(Ai(1, var("z")), Corr::identical, Ai(2, var("z")));
  Sequent s{{Slot::single(mk::member(var("z"), kPlus))}, {pair}};
  auto j = join_step(s, JoinDirection::toJoin, reg);
  EXPECT_TRUE(identical(j.right[0].first, mk::join(Corr::identical, Ai(1, var("z")), Ai(2, var("z")))));
  EXPECT_TRUE(identical(join_step(j, JoinDirection::toComma, reg), s));
  Sequent d{{Slot::single(mk::member(var("z"), kDown))}, {pair}};
  try {
    join_step(d, JoinDirection::toJoin, reg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotVirtualSingleton);
  }
}

TEST(Distribution, BothDirectionsCheck) {
  auto reg = standard_registry();
  for (auto [V, f] : {std::pair{std::string(kPlus), Corr::identical}, std::pair{std::string(kMinus), Corr::opposite}}) {
    auto dist = distribute_forall(reg, V, Ai(1, var("x")), Ai(2, var("x")), f);
    auto r1 = check_proof(dist.forward, dist.config, reg);
    EXPECT_TRUE(r1.ok) << V << " forward " << first_failure(r1);
    auto r2 = check_proof(dist.converse, dist.config, reg);
    EXPECT_TRUE(r2.ok) << V << " converse " << first_failure(r2);
    auto G = mk::forall("x", V, mk::join(f, Ai(1, var("x")), Ai(2, var("x"))));
    auto H = mk::join(f, mk::forall("x", V, Ai(1, var("x"))), mk::forall("x", V, Ai(2, var("x"))));
    EXPECT_TRUE(same_sequent(dist.forward.conclusion, seq({G}, {H})));
    EXPECT_TRUE(same_sequent(dist.converse.conclusion, seq({H}, {G})));
    auto e = expand_derived(dist.forward, dist.config, reg);
    auto r3 = check_proof(e, dist.config, reg);
    EXPECT_TRUE(r3.ok) << first_failure(r3);
    EXPECT_EQ(r3.rules_used.count("parallelForall"), 0u);
  }
  EXPECT_THROW(distribute_forall(reg, "D", Ai(1, var("x")), Ai(2, var("x")), Corr::identical), Error);
}

TEST(Guard, CollapseDemo) {
  auto reg = standard_registry(true);
  CalculusConfig cfg;
  cfg.cut = true;
  cfg.substitution_domains.insert("V");
  cfg.d_axiom_domains.insert({"V", "d"});
  validate_config(cfg, reg);
  auto g = consistency_guard(reg, "V", cfg);
  ASSERT_EQ(g.verdict, GuardResult::Verdict::Collapse);
  ASSERT_EQ(g.proofs.size(), 2u);
  for (const auto& p : g.proofs) {
    auto r = check_proof(p, cfg, reg);
    EXPECT_TRUE(r.ok) << first_failure(r);
    ASSERT_EQ(p.conclusion.right.size(), 1u);
    EXPECT_TRUE(p.conclusion.left.empty());
  }
  EXPECT_TRUE(same_sequent(g.proofs[1].conclusion,
                           seq({}, {mk::eq(outcome("u1", Rational(1, 2)), outcome("u2", Rational(1, 2)))})) ||
              same_sequent(g.proofs[0].conclusion,
                           seq({}, {mk::eq(outcome("u1", Rational(1, 2)), outcome("u2", Rational(1, 2)))})));
}

TEST(Guard, WithoutBothLicensesNoCollapse) {
  auto reg = standard_registry(true);
  auto goal = seq({}, {mk::eq(outcome("u2", Rational(1, 2)), outcome("u1", Rational(1, 2)))});
  for (int which = 0; which < 2; ++which) {
    CalculusConfig cfg = CalculusConfig::all_flags();
    if (which == 0) cfg.substitution_domains.insert("V");
    else cfg.d_axiom_domains.insert({"V", "d"});
    EXPECT_EQ(consistency_guard(reg, "V", cfg).verdict, GuardResult::Verdict::Consistent);
    auto r = search_proof(goal, cfg, reg, 8);
    EXPECT_EQ(r.status, SearchStatus::NotFound) << which;
  }
}

TEST(Guard, ExtensionalSingletonIsConsistent) {
  auto reg = standard_registry();
  CalculusConfig cfg;
  cfg.substitution_domains.insert(kDown);
  cfg.d_axiom_domains.insert({kDown, "perp"});
  auto g = consistency_guard(reg, kDown, cfg);
  EXPECT_EQ(g.verdict, GuardResult::Verdict::Consistent);
  ASSERT_EQ(g.proofs.size(), 1u);
  EXPECT_EQ(g.proofs[0].rule, "refl");
}
