#include <gtest/gtest.h>

#include "symlog/search.hpp"

using namespace symlog;

namespace {

const Rational half(1, 2);
Formula A(const Term& t) { return mk::atom("A", {t}); }
Formula p() { return mk::atom("p"); }
Formula q() { return mk::atom("q"); }

void expect_checks(const SearchResult& r, const Sequent& s, const CalculusConfig& cfg, const Registry& reg) {
  ASSERT_TRUE(r.found());
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(same_sequent(r.proof->conclusion, s));
  auto rep = check_proof(*r.proof, cfg, reg);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures[0].detail);
}

}  // namespace

class SearchTest : public ::testing::Test {
 protected:
  Registry reg = standard_registry();
};

TEST_F(SearchTest, Identity) {
  auto s = seq({p()}, {p()});
  auto r = search_proof(s, {}, reg, 8);
  expect_checks(r, s, {}, reg);
  EXPECT_EQ(r.depth, 1u);
}

TEST_F(SearchTest, ModusPonensWithRightContexts) {
  CalculusConfig cfg;
  cfg.right_contexts = true;
  auto s = seq({mk::imp(p(), q()), p()}, {q()});
  expect_checks(search_proof(s, cfg, reg, 8), s, cfg, reg);
}

TEST_F(SearchTest, AffirmingTheConsequentNowhere) {
  auto s = seq({mk::imp(p(), q()), q()}, {p()});
  auto r = search_proof(s, CalculusConfig::all_flags(), reg, 8);
  EXPECT_EQ(r.status, SearchStatus::NotFound);
  EXPECT_EQ(r.depth, 8u);
}

TEST_F(SearchTest, FocusDichotomy) {
  auto cfg = CalculusConfig::all_flags();
  auto t1 = outcome("t1", half), t2 = outcome("t2", half);
  auto s = seq({mk::conj(A(t1), A(t2))}, {mk::forall("x", "D", A(var("x")))});
  auto r = search_proof(s, cfg, reg, 6);
  expect_checks(r, s, cfg, reg);
  EXPECT_LE(r.depth, 6u);

  auto d = outcome("down", half), u = outcome("up", half);
  auto s2 = seq({mk::conj(A(d), A(u))}, {mk::forall("x", kPlus, A(var("x")))});
  auto r2 = search_proof(s2, cfg, reg, 8);
  EXPECT_EQ(r2.status, SearchStatus::NotFound);
}

TEST_F(SearchTest, ForallEntailsExistsOnFocusedDomains) {
  auto cfg = CalculusConfig::all_flags();
  for (const auto& d : reg.names()) {
    const auto& r = reg.at(d);
    if (!r.focused || r.entries.empty()) continue;
    auto c = cfg;
    c.substitution_domains.insert(d);
    auto s = seq({mk::forall("x", d, A(var("x")))}, {mk::exists("x", d, A(var("x")))});
    expect_checks(search_proof(s, c, reg, 8), s, c, reg);
  }
}

TEST_F(SearchTest, DepthExceededIsReported) {
  auto s = seq({p()}, {q()});
  auto r = search_proof(s, {}, reg, 100);
  EXPECT_EQ(r.status, SearchStatus::DepthExceeded);
}
