#pragma once

#include <random>
#include <string>
#include <vector>

#include "symlog/formula.hpp"

namespace symlog::testgen {

// Random well-formed formulas over a small vocabulary. Quantifier variables
// are drawn from the same pool as free variables so that shadowing and
// capture cases actually occur.
class FormulaGen {
 public:
  explicit FormulaGen(unsigned seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term term() {
    switch (pick(4)) {
      case 0: return var(vars_[pick(3)]);
      case 1: return var(vars_[pick(3)]);
      case 2: return cnst(pick(2) ? "u" : "c");
      default: return outcome(pick(2) ? "down" : "up", pick(2) ? Rational(1) : Rational(1, 2));
    }
  }

  std::string domain() { return domains_[pick(static_cast<int>(domains_.size()))]; }

  Formula literal() {
    switch (pick(7)) {
      case 0: return mk::atom(preds_[pick(3)], {term()});
      case 1: return mk::atom(preds_[pick(3)], {term()}, Index::iconst(1 + pick(2)));
      case 2: return mk::member(term(), domain());
      case 3: return mk::dual_member(term(), domain(), pick(2) ? "d" : "top");
      case 4: return mk::eq(term(), term());
      case 5: return mk::neq(term(), term());
      default: return mk::index_rel(Index::iconst(1), pick(2) ? Corr::identical : Corr::opposite, Index::iconst(2));
    }
  }

  Formula formula(int depth) {
    if (depth <= 0) return literal();
    switch (pick(5)) {
      case 0: return literal();
      case 1:
      case 2: return mk::binary(static_cast<Conn>(pick(6)), formula(depth - 1), formula(depth - 1));
      case 3: {
        auto x = vars_[pick(3)];
        auto d = domain();
        auto body = formula(depth - 1);
        return pick(2) ? mk::forall(x, d, body) : mk::exists(x, d, body);
      }
      default:
        return mk::join(pick(2) ? Corr::identical : Corr::opposite, formula(depth - 1), formula(depth - 1));
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> vars_{"x", "y", "z"};
  std::vector<std::string> preds_{"A", "B", "p"};
  std::vector<std::string> domains_{"D", "V", "Dplus", "Ddown"};
};

}  // namespace symlog::testgen
