#include <gtest/gtest.h>

#include "gen.hpp"
#include "symlog/correlation.hpp"
#include "symlog/quantum.hpp"
#include "symlog/script.hpp"

using namespace symlog;

namespace {

const std::set<std::string> kConsts = {"u", "c"};

Slot random_slot(testgen::FormulaGen& g, int depth) {
  if (g.pick(4) == 0)
    return Slot::pair(g.formula(depth), g.pick(2) ? Corr::identical : Corr::opposite, g.formula(depth));
  return Slot::single(g.formula(depth));
}

Sequent random_sequent(testgen::FormulaGen& g) {
  Sequent s;
  for (int i = g.pick(4); i > 0; --i) s.left.push_back(random_slot(g, 3));
  for (int i = g.pick(4); i > 0; --i) s.right.push_back(random_slot(g, 3));
  return s;
}

const char* kSample = R"(# sample
domains standard
domain W = {(a,1/2), (b,1/2)} virtual duality d inhabited
const u
config { left right cut subst(D) daxiom(W:d) }
sequent mp : p -> q, p |- q
sequent pair : A_1(z) ,_i A_2(z) |- forall x in Dplus . A_1(x) join_i A_2(x)
proof mp_proof:
  p -> q, p |- q by impL
    p |- p by id
    q |- q by id
proof c:
  |- u = u by refl
proof w:
  |- (t1,1/2) = (t1,1/2) by subst [term=(t1,1/2); var=z; domain=D]
    |- z = z by refl
)";

}  // namespace

TEST(Parser, BellFormula) {
  auto f = parse_formula("forall x in Dplus . A_1(x) join_i A_2(x)");
  EXPECT_TRUE(identical(f, bell_formula({BellState::Phase::plus, Corr::identical})));
}

TEST(Parser, PrintExamples) {
  auto imp = mk::imp(mk::atom("p"), mk::atom("q"));
  EXPECT_EQ(to_string(imp), "p -> q");
  auto z = var("z");
  auto pair = Slot::pair(mk::atom("A", {z}, Index::iconst(1)), Corr::identical, mk::atom("A", {z}, Index::iconst(2)));
  EXPECT_EQ(to_string(pair), "A_1(z) ,_i A_2(z)");
  EXPECT_EQ(to_string(symmetrize_formula(imp, LiteralInvolution{})), "q <- p");
}

TEST(Parser, Operators) {
  auto p = mk::atom("p"), q = mk::atom("q");
  EXPECT_TRUE(identical(parse_formula("p & q"), mk::conj(p, q)));
  EXPECT_TRUE(identical(parse_formula("p \\/ q"), mk::disj(p, q)));
  EXPECT_TRUE(identical(parse_formula("p (x) q"), mk::times(p, q)));
  EXPECT_TRUE(identical(parse_formula("p * q"), mk::par(p, q)));
  EXPECT_TRUE(identical(parse_formula("p <- q"), mk::excl(p, q)));
  EXPECT_TRUE(identical(parse_formula("p join_o q"), mk::join(Corr::opposite, p, q)));
  EXPECT_TRUE(identical(parse_formula("p & q & p"), mk::conj(mk::conj(p, q), p)));
  EXPECT_TRUE(identical(parse_formula("A(x) (x) B(x)"),
                        mk::times(mk::atom("A", {var("x")}), mk::atom("B", {var("x")}))));
}

TEST(Parser, Literals) {
  EXPECT_TRUE(identical(parse_formula("(z in V)^d"), mk::dual_member(var("z"), "V", "d")));
  EXPECT_TRUE(identical(parse_formula("(down,1/2) in Dplus"), mk::member(outcome("down", Rational(1, 2)), "Dplus")));
  EXPECT_TRUE(identical(parse_formula("u /= z", kConsts), mk::neq(cnst("u"), var("z"))));
  EXPECT_TRUE(identical(parse_formula("1 ~o 2"), mk::index_rel(Index::iconst(1), Corr::opposite, Index::iconst(2))));
  EXPECT_TRUE(identical(parse_formula("i ~i j"), mk::index_rel(Index::ivar("i"), Corr::identical, Index::ivar("j"))));
  EXPECT_TRUE(identical(parse_formula("((z in V))"), mk::member(var("z"), "V")));
}

TEST(Parser, MixedOperatorsNeedParentheses) {
  try {
    parse_formula("p & q \\/ r");
    FAIL() << "accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 7);
    EXPECT_TRUE(e.expected().count("'&' (mixing operators needs parentheses)"));
  }
}

TEST(Parser, PositionedErrors) {
  try {
    parse_script("domains standard\nsequent s : p |- \nsequent t : p ->\n");
    FAIL() << "accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 17);
    EXPECT_TRUE(e.expected().count("formula"));
    EXPECT_EQ(e.found(), "end of line");
  }
  EXPECT_THROW(parse_script("proof p:\n  |- z = z by nosuchrule\n"), ParseError);
  EXPECT_THROW(parse_script("sequent a : p |- p\nsequent a : q |- q\n"), ParseError);
  EXPECT_THROW(parse_script("proof p:\n  p |- p by id\n      p |- p by id\n"), ParseError);
  EXPECT_THROW(parse_formula("forall u in D . p", kConsts), ParseError);
  EXPECT_THROW(parse_formula("p \xe2\x88\xa7 q"), ParseError);
}

TEST(Parser, RandomFormulaRoundTrip) {
  testgen::FormulaGen g(20260101);
  for (int i = 0; i < 1000; ++i) {
    auto f = g.formula(1 + g.pick(8));
    auto text = to_string(f);
    Formula back;
    ASSERT_NO_THROW(back = parse_formula(text, kConsts)) << text;
    ASSERT_TRUE(identical(f, back)) << text << "\n" << to_string(back);
  }
}

TEST(Parser, RandomSequentRoundTrip) {
  testgen::FormulaGen g(77);
  for (int i = 0; i < 300; ++i) {
    auto s = random_sequent(g);
    auto text = to_string(s);
    Sequent back;
    ASSERT_NO_THROW(back = parse_sequent(text, kConsts)) << text;
    ASSERT_TRUE(identical(s, back)) << text;
  }
}

TEST(Parser, ScriptRoundTrip) {
  auto sc = parse_script(kSample);
  ASSERT_EQ(sc.decls.size(), 9u);
  auto printed = print_script(sc);
  auto again = parse_script(printed);
  EXPECT_TRUE(identical(sc, again));
  EXPECT_EQ(print_script(again), printed);

  auto env = build_environment(sc);
  ASSERT_TRUE(env.config);
  EXPECT_TRUE(env.registry.contains("W"));
  ASSERT_NE(env.proof("w"), nullptr);
  EXPECT_EQ(env.proof("w")->params.var, "z");
  EXPECT_TRUE(check_proof(*env.proof("mp_proof"), *env.config, env.registry).ok);
  EXPECT_TRUE(check_proof(*env.proof("w"), *env.config, env.registry).ok);
}

TEST(Parser, DomainsMustBeDeclaredFirst) {
  auto sc = parse_script("sequent s : z in D |- z in D\ndomains standard\n");
  EXPECT_THROW(build_environment(sc), Error);
}

TEST(Parser, IdempotencyExample) {
  auto s = parse_sequent("A(z) |- A(z), A(z)");
  ConversionStep step;
  step.direction = ConversionStep::Direction::contract;
  step.slot = 0;
  EXPECT_EQ(to_string(convert(s, step)), "A(z) |- A(z)");
}

// Deleting random tokens either breaks the parse or gives a script whose
// printout parses back to the same script.
TEST(Parser, TokenDeletionFuzz) {
  std::mt19937 rng(4242);
  std::string text = kSample;
  std::vector<std::pair<size_t, size_t>> spans;
  {
    size_t line_start = 0;
    int no = 0;
    while (line_start < text.size()) {
      auto end = text.find('\n', line_start);
      auto line = text.substr(line_start, end - line_start);
      for (const auto& t : parse_detail::lex_line(line, ++no)) {
        if (t.kind == parse_detail::Tok::End) continue;
        size_t len = t.kind == parse_detail::Tok::String ? t.text.size() + 2 : t.text.size();
        spans.push_back({line_start + t.column - 1, len});
      }
      line_start = end + 1;
    }
  }
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string m = text;
    auto k = 1 + rng() % 3;
    std::vector<std::pair<size_t, size_t>> pick;
    for (size_t j = 0; j < k; ++j) pick.push_back(spans[rng() % spans.size()]);
    std::sort(pick.rbegin(), pick.rend());
    pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
    for (auto [at, len] : pick) m.erase(at, len);
    Script sc;
    try {
      sc = parse_script(m);
    } catch (const ParseError&) {
      continue;
    }
    ++accepted;
    auto printed = print_script(sc);
    Script back;
    ASSERT_NO_THROW(back = parse_script(printed)) << m << "\n---\n" << printed;
    ASSERT_TRUE(identical(sc, back)) << m;
  }
  EXPECT_GT(accepted, 0);
}
