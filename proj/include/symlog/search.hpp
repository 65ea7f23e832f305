#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symlog/kernel.hpp"

namespace symlog {

enum class SearchStatus { Found, NotFound, DepthExceeded };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NotFound: return "NotFound";
    case SearchStatus::DepthExceeded: return "DepthExceeded";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<ProofNode> proof;
  unsigned depth = 0;  // height of the proof found, or the exhausted bound
  std::size_t expanded = 0;

  bool found() const { return status == SearchStatus::Found; }
};

inline unsigned default_max_depth() {
  if (const char* env = std::getenv("SYMLOG_DEPTH")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0 && v < 64) return static_cast<unsigned>(v);
  }
  return 8;
}

namespace search_detail {

using Side = std::vector<Slot>;

struct Candidate {
  std::string rule;
  Params params;
  std::vector<Sequent> premises;
};

inline std::string canonical(const Sequent& s) {
  auto side = [](const Side& xs) {
    std::vector<std::string> v;
    for (const auto& x : xs) v.push_back(to_string(x));
    std::sort(v.begin(), v.end());
    std::string out;
    for (const auto& x : v) out += x + ";";
    return out;
  };
  return side(s.left) + "|-" + side(s.right);
}

inline Side pick(const Side& xs, unsigned mask, bool in) {
  Side out;
  for (size_t i = 0; i < xs.size(); ++i)
    if (((mask >> i) & 1u) == static_cast<unsigned>(in)) out.push_back(xs[i]);
  return out;
}

inline Side drop(const Side& xs, size_t k) {
  Side out = xs;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

inline Side add(Side xs, const Formula& f) {
  xs.push_back(Slot::single(f));
  return xs;
}

inline Side join_sides(Side a, const Side& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline void collect_terms(const Formula& f, std::vector<Term>& out) {
  auto push = [&](const Term& t) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          for (const auto& a : n.args) push(a);
        } else if constexpr (std::is_same_v<T, MemberF> || std::is_same_v<T, DualMemberF>) {
          push(n.term);
        } else if constexpr (std::is_same_v<T, EqF> || std::is_same_v<T, NeqF>) {
          push(n.lhs);
          push(n.rhs);
        } else if constexpr (std::is_same_v<T, BinaryF> || std::is_same_v<T, JoinF>) {
          collect_terms(n.lhs, out);
          collect_terms(n.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantF>) {
          std::vector<Term> inner;
          collect_terms(n.body, inner);
          for (const auto& t : inner)
            if (!(t.is_var() && t.var_name() == n.var)) push(t);
        }
      },
      f.node().v);
}

inline std::vector<Term> sequent_terms(const Sequent& s) {
  std::vector<Term> out;
  for (const auto* side : {&s.left, &s.right})
    for (const auto& sl : *side) {
      collect_terms(sl.first, out);
      if (sl.is_pair()) collect_terms(sl.second, out);
    }
  return out;
}

// Replaces occurrences of the closed term t by `by`. target < 0 replaces all,
// otherwise only the target-th occurrence in traversal order.
inline Term swap_term(const Term& x, const Term& t, const Term& by, int& counter, int target) {
  if (!(x == t)) return x;
  bool hit = target < 0 || counter == target;
  ++counter;
  return hit ? by : x;
}

inline Formula generalize(const Formula& f, const Term& t, const Term& by, int& counter, int target) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        auto g = [&](const Term& x) { return swap_term(x, t, by, counter, target); };
        if constexpr (std::is_same_v<T, AtomF>) {
          std::vector<Term> args;
          for (const auto& a : n.args) args.push_back(g(a));
          return mk::atom(n.pred, args, n.index);
        } else if constexpr (std::is_same_v<T, MemberF>) {
          return mk::member(g(n.term), n.domain);
        } else if constexpr (std::is_same_v<T, DualMemberF>) {
          return mk::dual_member(g(n.term), n.domain, n.duality);
        } else if constexpr (std::is_same_v<T, EqF>) {
          auto a = g(n.lhs);
          return mk::eq(a, g(n.rhs));
        } else if constexpr (std::is_same_v<T, NeqF>) {
          auto a = g(n.lhs);
          return mk::neq(a, g(n.rhs));
        } else if constexpr (std::is_same_v<T, IndexRelF>) {
          return f;
        } else if constexpr (std::is_same_v<T, BinaryF>) {
          auto a = generalize(n.lhs, t, by, counter, target);
          return mk::binary(n.conn, a, generalize(n.rhs, t, by, counter, target));
        } else if constexpr (std::is_same_v<T, JoinF>) {
          auto a = generalize(n.lhs, t, by, counter, target);
          return mk::join(n.tag, a, generalize(n.rhs, t, by, counter, target));
        } else {
          return mk::make({QuantF{n.kind, n.var, n.domain, generalize(n.body, t, by, counter, target)}});
        }
      },
      f.node().v);
}

inline Sequent generalize(const Sequent& s, const Term& t, const Term& by, int target) {
  int counter = 0;
  auto side = [&](const Side& xs) {
    Side out;
    for (const auto& x : xs) {
      if (!x.is_pair()) {
        out.push_back(Slot::single(generalize(x.first, t, by, counter, target)));
      } else {
        auto a = generalize(x.first, t, by, counter, target);
        out.push_back(Slot::pair(a, *x.tag, generalize(x.second, t, by, counter, target)));
      }
    }
    return out;
  };
  Sequent out;
  out.left = side(s.left);
  out.right = side(s.right);
  return out;
}

inline int count_occurrences(const Sequent& s, const Term& t) {
  int counter = 0;
  for (const auto* side : {&s.left, &s.right})
    for (const auto& x : *side) {
      generalize(x.first, t, t, counter, -2);
      if (x.is_pair()) generalize(x.second, t, t, counter, -2);
    }
  return counter;
}

inline std::set<std::string> sequent_names(const Sequent& s) {
  std::set<std::string> names;
  for (const auto* side : {&s.left, &s.right})
    for (const auto& x : *side) {
      all_names(x.first, names);
      if (x.is_pair()) all_names(x.second, names);
    }
  return names;
}

inline unsigned masks(const Side& xs) { return 1u << xs.size(); }

// Backward steps of the primary rules. Mirror rules are obtained by running
// this on the symmetric goal under the flipped configuration.
class Generator {
 public:
  Generator(const CalculusConfig& cfg, const Registry& reg) : cfg_(cfg), reg_(reg) {}

  std::vector<Candidate> primary(const Sequent& g) const {
    std::vector<Candidate> out;
    auto names = sequent_names(g);
    for (const auto& d : reg_.names())
      if (reg_.at(d).inhabited) names.insert(witness_name(d));
    auto fresh = fresh_name("z", names);

    // left principal formulas, leftmost first
    for (size_t k = 0; k < g.left.size(); ++k) {
      if (g.left[k].is_pair()) continue;
      const auto& f = g.left[k].first;
      auto rest = drop(g.left, k);
      if (auto b = as<BinaryF>(f)) {
        if (b->conn == Conn::And && (rest.empty() || cfg_.left_contexts)) {
          out.push_back({"andL1", {}, {Sequent{add(rest, b->lhs), g.right}}});
          out.push_back({"andL2", {}, {Sequent{add(rest, b->rhs), g.right}}});
        }
        if (b->conn == Conn::Par) {
          for (unsigned gm = 0; gm < masks(rest); ++gm) {
            auto g1 = pick(rest, gm, true), g2 = pick(rest, gm, false);
            if (!cfg_.left_contexts && (!g1.empty() || !g2.empty())) continue;
            for (unsigned dm = 0; dm < masks(g.right); ++dm)
              out.push_back({"parL", {}, {Sequent{add(g1, b->lhs), pick(g.right, dm, true)},
                                           Sequent{add(g2, b->rhs), pick(g.right, dm, false)}}});
          }
        }
        if (b->conn == Conn::Imp) two_premise(out, "impL", g, rest, b->lhs, b->rhs, {});
      }
      if (auto q = as<QuantF>(f); q && q->kind == Quant::Forall) {
        for (const auto& t : instance_terms(g, q->domain)) {
          Params p;
          p.term = t;
          two_premise(out, "forallR", g, rest, mk::member(t, q->domain), replace_var(q->body, q->var, t), p);
        }
      }
      if (auto e = as<EqF>(f); e && e->lhs.is_var() && !(e->lhs == e->rhs)) {
        Params p;
        p.var = e->lhs.var_name();
        out.push_back({"eqExp", p, {replace_var(Sequent{rest, g.right}, e->lhs.var_name(), e->rhs)}});
      }
    }
    // right principal formulas
    for (size_t k = 0; k < g.right.size(); ++k) {
      if (g.right[k].is_pair()) continue;
      const auto& f = g.right[k].first;
      auto rest = drop(g.right, k);
      bool ok_rest = rest.empty() || cfg_.right_contexts;
      if (auto b = as<BinaryF>(f); b && ok_rest) {
        if (b->conn == Conn::And)
          out.push_back({"andR", {}, {Sequent{g.left, add(rest, b->lhs)}, Sequent{g.left, add(rest, b->rhs)}}});
        if (b->conn == Conn::Par) out.push_back({"parR", {}, {Sequent{g.left, add(add(rest, b->lhs), b->rhs)}}});
        if (b->conn == Conn::Imp) out.push_back({"impR", {}, {Sequent{add(g.left, b->lhs), add(rest, b->rhs)}}});
      }
      if (auto q = as<QuantF>(f); q && q->kind == Quant::Forall && ok_rest) {
        Params p;
        p.var = fresh;
        out.push_back({"forallF", p,
                       {Sequent{add(g.left, mk::member(var(fresh), q->domain)),
                                add(rest, replace_var(q->body, q->var, var(fresh)))}}});
      }
    }
    // substitution: generalize a licensed entry back to a variable
    for (const auto& d : cfg_.substitution_domains) {
      const auto* r = reg_.find(d);
      if (!r) continue;
      for (const auto& t : r->entries) {
        int n = count_occurrences(g, t);
        if (n == 0) continue;
        for (int target = -1; target < (n > 1 ? n : 0); ++target) {
          Params p;
          p.var = fresh;
          p.term = t;
          p.domain = d;
          out.push_back({"subst", p, {generalize(g, t, var(fresh), target)}});
        }
      }
    }
    if (cfg_.weakening)
      for (size_t k = 0; k < g.right.size(); ++k) {
        if (g.right[k].is_pair()) continue;
        Params p;
        p.formula = g.right[k].first;
        out.push_back({"wR", p, {Sequent{g.left, drop(g.right, k)}}});
      }
    return out;
  }

  // Cuts against registry axioms; the cut formula is always an axiom's
  // principal formula, so one premise closes immediately.
  std::vector<Candidate> cuts(const Sequent& g) const {
    std::vector<Candidate> out;
    if (!cfg_.cut) return out;
    auto push = [&](const Sequent& p0, const Sequent& p1, const Formula& a) {
      Params p;
      p.formula = a;
      out.push_back({"cut", p, {p0, p1}});
    };
    auto has_left = [&](const Formula& f) {
      for (const auto& s : g.left)
        if (!s.is_pair() && formula_equal(s.first, f)) return true;
      return false;
    };
    auto has_right = [&](const Formula& f) {
      for (const auto& s : g.right)
        if (!s.is_pair() && formula_equal(s.first, f)) return true;
      return false;
    };
    // z∈D on the left of a focused D: replace it by the focus disjunction
    for (size_t k = 0; k < g.left.size(); ++k) {
      if (g.left[k].is_pair()) continue;
      auto m = as<MemberF>(g.left[k].first);
      if (!m) continue;
      const auto* r = reg_.find(m->domain);
      if (!r || !r->focused) continue;
      auto disj = focus_disjunction(m->term, r->entries);
      if (has_left(disj)) continue;
      push(Sequent{{g.left[k]}, {Slot::single(disj)}}, Sequent{add(drop(g.left, k), disj), g.right}, disj);
    }
    // and its mirror: (z∈D)^d on the right becomes the conjunction of z≠tᵢ
    for (size_t k = 0; k < g.right.size(); ++k) {
      if (g.right[k].is_pair()) continue;
      auto m = as<DualMemberF>(g.right[k].first);
      if (!m) continue;
      const auto* r = reg_.find(m->domain);
      if (!r || !r->focused || m->duality != reg_.membership_duality(m->domain)) continue;
      auto conj = symmetrize_formula(focus_disjunction(m->term, r->entries), reg_.involution());
      if (has_right(conj)) continue;
      push(Sequent{g.left, add(drop(g.right, k), conj)}, Sequent{{Slot::single(conj)}, {g.right[k]}}, conj);
    }
    auto domains = kernel_detail::sequent_domains(g);
    for (const auto& d : domains) {
      if (!reg_.contains(d)) continue;
      for (const auto& t : reg_.members(d)) {
        auto mem = mk::member(t, d);
        if (!has_left(mem)) push(Sequent{{}, {Slot::single(mem)}}, Sequent{add(g.left, mem), g.right}, mem);
        auto dual = mk::dual_member(t, d, reg_.membership_duality(d));
        if (!has_right(dual)) push(Sequent{g.left, add(g.right, dual)}, Sequent{{Slot::single(dual)}, {}}, dual);
      }
    }
    for (const auto& t : sequent_terms(g)) {
      if (!t.is_closed()) continue;
      auto e = mk::eq(t, t);
      if (!has_left(e)) push(Sequent{{}, {Slot::single(e)}}, Sequent{add(g.left, e), g.right}, e);
    }
    return out;
  }

 private:
  const CalculusConfig& cfg_;
  const Registry& reg_;

  std::vector<Term> instance_terms(const Sequent& g, const std::string& domain) const {
    std::vector<Term> out;
    for (const auto& v : free_vars(g)) out.push_back(var(v));
    if (auto w = reg_.find(domain) ? reg_.witness(domain) : std::nullopt)
      if (std::find(out.begin(), out.end(), *w) == out.end()) out.push_back(*w);
    for (const auto& d : cfg_.substitution_domains)
      if (const auto* r = reg_.find(d))
        for (const auto& t : r->entries)
          if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return out;
  }

  // Γ1 ⊢ a, Δ1   Γ2, b ⊢ Δ2  with Γ1 free, Γ2 left-gated and Δ1 right-gated
  void two_premise(std::vector<Candidate>& out, const char* rule, const Sequent& g, const Side& rest, const Formula& a,
                   const Formula& b, const Params& p) const {
    for (unsigned gm = 0; gm < masks(rest); ++gm) {
      auto g1 = pick(rest, gm, true), g2 = pick(rest, gm, false);
      if (!cfg_.left_contexts && !g2.empty()) continue;
      for (unsigned dm = 0; dm < masks(g.right); ++dm) {
        auto d1 = pick(g.right, dm, true), d2 = pick(g.right, dm, false);
        if (!cfg_.right_contexts && !d1.empty()) continue;
        out.push_back({rule, p, {Sequent{g1, add(d1, a)}, Sequent{add(g2, b), d2}}});
      }
    }
  }
};

class Searcher {
 public:
  Searcher(const CalculusConfig& cfg, const Registry& reg)
      : cfg_(cfg), reg_(reg), inv_(reg.involution()), kernel_(cfg, reg), gen_(cfg, reg),
        flipped_cfg_(cfg.flipped()), flipped_gen_(flipped_cfg_, reg) {}

  std::size_t expanded = 0;

  std::optional<ProofNode> prove(const Sequent& g, unsigned budget) {
    if (budget == 0) return std::nullopt;
    auto key = canonical(g);
    auto it = failed_.find(key);
    if (it != failed_.end() && it->second >= budget) return std::nullopt;
    ++expanded;

    for (const auto& ax : axioms_) {
      if (!kernel_.check_step(ax, g, {}, {})) return leaf(g, ax);
    }
    if (budget > 1) {
      for (const auto& c : candidates(g)) {
        if (kernel_.check_step(c.rule, g, c.premises, c.params)) continue;
        std::vector<ProofNode> subs;
        bool ok = true;
        for (const auto& p : c.premises) {
          auto sub = prove(p, budget - 1);
          if (!sub) {
            ok = false;
            break;
          }
          subs.push_back(std::move(*sub));
        }
        if (ok) return node(g, c.rule, std::move(subs), c.params);
      }
    }
    auto& slot = failed_[key];
    slot = std::max(slot, budget);
    return std::nullopt;
  }

 private:
  const CalculusConfig& cfg_;
  const Registry& reg_;
  LiteralInvolution inv_;
  Kernel kernel_;
  Generator gen_;
  CalculusConfig flipped_cfg_;
  Generator flipped_gen_;
  std::map<std::string, unsigned> failed_;
  std::vector<std::string> axioms_{"id",    "refl",   "memR",      "focus",  "dualR", "dAxiom",
                                   "topAx", "irrefl", "memL", "focusDual", "dualL", "topAxS"};

  std::vector<Candidate> candidates(const Sequent& g) const {
    auto out = gen_.primary(g);
    auto sg = symmetrize_sequent(g, inv_);
    for (auto& c : flipped_gen_.primary(sg)) {
      Candidate m;
      const auto* info = find_rule(c.rule);
      if (!info || info->mirror == c.rule) continue;  // self-paired rules are already covered
      m.rule = info->mirror;
      m.params = c.params;
      if (c.params.formula) m.params.formula = symmetrize_formula(*c.params.formula, inv_);
      for (auto it = c.premises.rbegin(); it != c.premises.rend(); ++it)
        m.premises.push_back(symmetrize_sequent(*it, inv_));
      out.push_back(std::move(m));
    }
    auto cuts = gen_.cuts(g);
    out.insert(out.end(), cuts.begin(), cuts.end());
    return out;
  }
};

}  // namespace search_detail

// Iterative deepening on proof height. Deterministic for fixed inputs.
inline SearchResult search_proof(const Sequent& s, const CalculusConfig& cfg, const Registry& reg,
                                 unsigned depth = default_max_depth()) {
  SearchResult res;
  unsigned limit = depth;
  if (depth > default_max_depth()) {
    limit = default_max_depth();
    res.status = SearchStatus::DepthExceeded;
  }
  search_detail::Searcher searcher(cfg, reg);
  for (unsigned d = 1; d <= limit; ++d) {
    if (auto p = searcher.prove(s, d)) {
      res.status = SearchStatus::Found;
      res.proof = std::move(p);
      res.depth = d;
      res.expanded = searcher.expanded;
      return res;
    }
  }
  if (res.status != SearchStatus::DepthExceeded) res.status = SearchStatus::NotFound;
  res.depth = limit;
  res.expanded = searcher.expanded;
  return res;
}

}  // namespace symlog
