#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "symlog/dualities.hpp"
#include "symlog/formula.hpp"
#include "symlog/printer.hpp"
#include "symlog/proof.hpp"
#include "symlog/registry.hpp"

namespace symlog {

namespace kernel_detail {

using Side = std::vector<Slot>;

inline std::optional<Side> minus(const Side& side, const Slot& s) {
  for (size_t i = 0; i < side.size(); ++i) {
    if (slot_equal(side[i], s)) {
      Side out = side;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      return out;
    }
  }
  return std::nullopt;
}

inline std::optional<Side> minus(const Side& side, const Formula& f) { return minus(side, Slot::single(f)); }

inline Side cat(Side a, const Side& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Side with(Side a, const Formula& f) {
  a.push_back(Slot::single(f));
  return a;
}

inline Side with(Side a, const Slot& s) {
  a.push_back(s);
  return a;
}

inline Side without_index(const Side& side, size_t k) {
  Side out = side;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

struct Step {
  Sequent conclusion;
  std::vector<Sequent> premises;
  Params params;
};

using Result = std::optional<RuleFailure>;

inline RuleFailure fail(FailureKind k, std::string d) { return RuleFailure{k, std::move(d)}; }

// Iterates candidate principal formulas of type T; the rule succeeds when
// any candidate does.
template <class T, class F>
Result each_candidate(const Side& side, const std::string& shape, F&& try_one) {
  Result last = fail(FailureKind::ConclusionMismatch, "no principal " + shape + " formula");
  for (size_t k = 0; k < side.size(); ++k) {
    if (side[k].is_pair()) continue;
    const T* n = as<T>(side[k].first);
    if (!n) continue;
    Result r = try_one(k, *n);
    if (!r) return r;
    last = r;
  }
  return last;
}

inline void collect_domains(const Formula& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MemberF> || std::is_same_v<T, DualMemberF>) {
          out.insert(n.domain);
        } else if constexpr (std::is_same_v<T, BinaryF> || std::is_same_v<T, JoinF>) {
          collect_domains(n.lhs, out);
          collect_domains(n.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantF>) {
          out.insert(n.domain);
          collect_domains(n.body, out);
        }
      },
      f.node().v);
}

inline std::set<std::string> sequent_domains(const Sequent& s) {
  std::set<std::string> out;
  for (const auto* side : {&s.left, &s.right})
    for (const auto& sl : *side) {
      collect_domains(sl.first, out);
      if (sl.is_pair()) collect_domains(sl.second, out);
    }
  return out;
}

}  // namespace kernel_detail

// The trusted rule checker. Every primary rule is implemented here; a mirror
// rule is valid exactly when its symmetric image is a valid instance of the
// primary partner under the flipped configuration.
class Kernel {
 public:
  Kernel(const CalculusConfig& cfg, const Registry& reg) : cfg_(cfg), reg_(reg), inv_(reg.involution()) {}

  const CalculusConfig& config() const { return cfg_; }
  const Registry& registry() const { return reg_; }
  const LiteralInvolution& involution() const { return inv_; }

  kernel_detail::Result check_step(const std::string& rule, const Sequent& conclusion,
                                   const std::vector<Sequent>& premises, const Params& params) const {
    using namespace kernel_detail;
    const RuleInfo* info = find_rule(rule);
    if (!info) return fail(FailureKind::UnknownRule, rule);
    if (static_cast<int>(premises.size()) != info->arity)
      return fail(FailureKind::ArityMismatch,
                  rule + " takes " + std::to_string(info->arity) + " premises, got " + std::to_string(premises.size()));
    if (info->primary) return primary(rule, Step{conclusion, premises, params});

    Step mirrored;
    mirrored.conclusion = symmetrize_sequent(conclusion, inv_);
    for (auto it = premises.rbegin(); it != premises.rend(); ++it)
      mirrored.premises.push_back(symmetrize_sequent(*it, inv_));
    mirrored.params = params;
    if (params.formula) mirrored.params.formula = symmetrize_formula(*params.formula, inv_);
    Kernel flipped_kernel(flipped_, reg_, inv_);
    return flipped_kernel.primary(info->mirror, mirrored);
  }

  // The three-step expansion of a parallel-∀ step: conversion, ∀ formation, conversion back.
  std::optional<ProofNode> expand_parallel(const Sequent& conclusion, const ProofNode& premise) const;

 private:
  Kernel(const CalculusConfig& cfg, const Registry& reg, const LiteralInvolution& inv)
      : cfg_(cfg), reg_(reg), inv_(inv) {}

  CalculusConfig cfg_;
  const Registry& reg_;
  LiteralInvolution inv_;
  CalculusConfig flipped_ = cfg_.flipped();

  bool licensed_term(const Term& t) const {
    if (t.is_var()) return true;
    for (const auto& d : cfg_.substitution_domains)
      if (const auto* r = reg_.find(d))
        if (std::find(r->entries.begin(), r->entries.end(), t) != r->entries.end()) return true;
    return false;
  }

  kernel_detail::Result gate_left(const kernel_detail::Side& extra) const {
    if (!extra.empty() && !cfg_.left_contexts)
      return kernel_detail::fail(FailureKind::ContextNotAllowed, "left context " + to_string(extra) +
                                                                     " requires left_contexts");
    return std::nullopt;
  }

  kernel_detail::Result gate_right(const kernel_detail::Side& extra) const {
    if (!extra.empty() && !cfg_.right_contexts)
      return kernel_detail::fail(FailureKind::ContextNotAllowed, "right context " + to_string(extra) +
                                                                     " requires right_contexts");
    return std::nullopt;
  }

  static kernel_detail::Result expect(const Sequent& actual, const Sequent& expected, const char* what) {
    if (same_sequent(actual, expected)) return std::nullopt;
    return kernel_detail::fail(FailureKind::ConclusionMismatch,
                               std::string(what) + ": expected " + to_string(expected) + ", got " + to_string(actual));
  }

  kernel_detail::Result primary(const std::string& rule, const kernel_detail::Step& st) const;

  kernel_detail::Result check_axiom(const std::string& rule, const Sequent& c) const;
  kernel_detail::Result check_daxiom(const Sequent& c, bool top_form) const;
  kernel_detail::Result check_quant(const std::string& rule, const kernel_detail::Step& st) const;
  kernel_detail::Result check_prop(const std::string& rule, const kernel_detail::Step& st) const;
  kernel_detail::Result check_equality(const std::string& rule, const kernel_detail::Step& st) const;
  kernel_detail::Result check_correlation(const std::string& rule, const kernel_detail::Step& st) const;
};

// ---------------------------------------------------------------------------

inline kernel_detail::Result Kernel::primary(const std::string& rule, const kernel_detail::Step& st) const {
  using namespace kernel_detail;
  if (rule == "id" || rule == "refl" || rule == "memR" || rule == "focus" || rule == "dualR") return check_axiom(rule, st.conclusion);
  if (rule == "dAxiom") return check_daxiom(st.conclusion, false);
  if (rule == "topAx") return check_daxiom(st.conclusion, true);

  if (rule == "cut") {
    if (!cfg_.cut) return fail(FailureKind::RuleDisabled, "cut is not enabled");
    const auto& p0 = st.premises[0];
    const auto& p1 = st.premises[1];
    auto try_cut = [&](const Formula& a) -> Result {
      auto d1 = minus(p0.right, a);
      auto g2 = minus(p1.left, a);
      if (!d1 || !g2) return fail(FailureKind::ConclusionMismatch, "cut formula " + to_string(a) + " not in premises");
      return expect(st.conclusion, Sequent{cat(p0.left, *g2), cat(*d1, p1.right)}, "cut");
    };
    if (st.params.formula) return try_cut(*st.params.formula);
    Result last = fail(FailureKind::ConclusionMismatch, "no cut formula");
    for (const auto& s : p0.right) {
      if (s.is_pair()) continue;
      last = try_cut(s.first);
      if (!last) return last;
    }
    return last;
  }

  if (rule == "wR") {
    if (!cfg_.weakening) return fail(FailureKind::RuleDisabled, "weakening is not enabled");
    const auto& p = st.premises[0];
    if (!same_side(st.conclusion.left, p.left))
      return fail(FailureKind::ConclusionMismatch, "weakening changed the left side");
    if (st.params.formula) return expect(st.conclusion, Sequent{p.left, with(p.right, *st.params.formula)}, "wR");
    for (size_t k = 0; k < st.conclusion.right.size(); ++k)
      if (same_side(without_index(st.conclusion.right, k), p.right)) return std::nullopt;
    return fail(FailureKind::ConclusionMismatch, "conclusion is not the premise plus one right formula");
  }

  if (rule == "subst") {
    if (!st.params.var || !st.params.term || !st.params.domain)
      return fail(FailureKind::SideConditionViolated, "subst needs var, term and domain parameters");
    const auto& d = *st.params.domain;
    if (!cfg_.substitution_domains.count(d))
      return fail(FailureKind::SubstitutionNotLicensed, "substitution is not licensed for " + d);
    const auto& r = reg_.at(d);
    if (std::find(r.entries.begin(), r.entries.end(), *st.params.term) == r.entries.end())
      return fail(FailureKind::SideConditionViolated, to_string(*st.params.term) + " is not an element of " + d);
    return expect(st.conclusion, replace_var(st.premises[0], *st.params.var, *st.params.term), "subst");
  }

  if (rule == "forallF" || rule == "forallR") return check_quant(rule, st);
  if (rule == "eqExp" || rule == "eqRefl") return check_equality(rule, st);
  if (rule == "convRel" || rule == "convComma" || rule == "idem" || rule == "idemInv" || rule == "joinR" ||
      rule == "joinRinv" || rule == "parallelForall")
    return check_correlation(rule, st);
  return check_prop(rule, st);
}

inline kernel_detail::Result Kernel::check_axiom(const std::string& rule, const Sequent& c) const {
  using namespace kernel_detail;
  auto single = [](const Side& s) { return s.size() == 1 && !s[0].is_pair(); };
  if (rule == "id") {
    if (single(c.left) && single(c.right) && formula_equal(c.left[0].first, c.right[0].first)) return std::nullopt;
    return fail(FailureKind::ConclusionMismatch, "identity axiom must be A |- A");
  }
  if (rule == "refl") {
    if (c.left.empty() && single(c.right))
      if (auto e = as<EqF>(c.right[0].first); e && e->lhs == e->rhs) return std::nullopt;
    return fail(FailureKind::ConclusionMismatch, "reflexivity axiom must be |- t = t");
  }
  if (rule == "memR") {
    if (c.left.empty() && single(c.right))
      if (auto m = as<MemberF>(c.right[0].first)) {
        if (!reg_.contains(m->domain)) return fail(FailureKind::UnknownDomain, m->domain);
        if (reg_.is_member(m->term, m->domain)) return std::nullopt;
        return fail(FailureKind::SideConditionViolated, to_string(m->term) + " is not a declared member of " + m->domain);
      }
    return fail(FailureKind::ConclusionMismatch, "membership axiom must be |- t in D");
  }
  if (rule == "dualR") {
    // ⊢ t∈D, (t∈D)^d  with d the duality registered for D
    if (c.left.empty() && c.right.size() == 2 && !c.right[0].is_pair() && !c.right[1].is_pair())
      for (int k = 0; k < 2; ++k) {
        auto m = as<MemberF>(c.right[k].first);
        auto dm = as<DualMemberF>(c.right[1 - k].first);
        if (!m || !dm || !(m->term == dm->term) || m->domain != dm->domain) continue;
        if (!reg_.contains(m->domain)) return fail(FailureKind::UnknownDomain, m->domain);
        if (dm->duality != reg_.membership_duality(m->domain))
          return fail(FailureKind::SideConditionViolated, "duality " + dm->duality + " is not the one registered for " +
                                                              m->domain);
        return std::nullopt;
      }
    return fail(FailureKind::ConclusionMismatch, "expected |- t in D, (t in D)^d");
  }
  // focus: z∈D ⊢ z=t1 ∨ … ∨ z=tn for focused D
  if (single(c.left) && single(c.right))
    if (auto m = as<MemberF>(c.left[0].first)) {
      if (!reg_.contains(m->domain)) return fail(FailureKind::UnknownDomain, m->domain);
      const auto& r = reg_.at(m->domain);
      if (!r.focused) return fail(FailureKind::SideConditionViolated, m->domain + " is not focused");
      if (formula_equal(c.right[0].first, focus_disjunction(m->term, r.entries))) return std::nullopt;
    }
  return fail(FailureKind::ConclusionMismatch, "focus axiom must be z in D |- z = t1 \\/ ... \\/ z = tn");
}

// z∈V, A(y) ⊢ A(z), (y∈V)^d   or, for top, z∈V, A(y) ⊢ A(z), y∈V^⊤
inline kernel_detail::Result Kernel::check_daxiom(const Sequent& c, bool top_form) const {
  using namespace kernel_detail;
  const char* what = top_form ? "top-axiom" : "d-axiom";
  if (c.left.size() != 2 || c.right.size() != 2)
    return fail(FailureKind::ConclusionMismatch, std::string(what) + " has two formulas on each side");
  for (const auto& s : c.left)
    if (s.is_pair()) return fail(FailureKind::ConclusionMismatch, "correlated pair in axiom");
  for (const auto& s : c.right)
    if (s.is_pair()) return fail(FailureKind::ConclusionMismatch, "correlated pair in axiom");

  Result last = fail(FailureKind::ConclusionMismatch, std::string(what) + " shape not matched");
  for (int li = 0; li < 2; ++li)
    for (int ri = 0; ri < 2; ++ri) {
      auto mem = as<MemberF>(c.left[li].first);
      if (!mem || !mem->term.is_var()) continue;
      const auto& other_left = c.left[1 - li].first;
      const auto& other_right = c.right[1 - ri].first;
      std::string y, domain, duality;
      if (top_form) {
        auto dm = as<MemberF>(c.right[ri].first);
        if (!dm || !dm->term.is_var()) continue;
        auto expected = dual_domain(mem->domain, Duality::top);
        if (!expected || *expected == mem->domain || dm->domain != *expected) continue;
        y = dm->term.var_name();
        domain = mem->domain;
        duality = "top";
      } else {
        auto dm = as<DualMemberF>(c.right[ri].first);
        if (!dm || !dm->term.is_var() || dm->domain != mem->domain) continue;
        y = dm->term.var_name();
        domain = dm->domain;
        duality = dm->duality;
      }
      const auto& z = mem->term.var_name();
      if (y == z) {
        last = fail(FailureKind::SideConditionViolated, "d-axiom variables must differ");
        continue;
      }
      if (!formula_equal(replace_var(other_left, y, var(z)), other_right)) {
        last = fail(FailureKind::ConclusionMismatch, "A(z) is not A(y) with y replaced by z");
        continue;
      }
      if (!cfg_.d_axiom_domains.count({domain, duality}))
        return fail(FailureKind::DAxiomNotLicensed, "d-axioms for (" + domain + ", " + duality + ") are not licensed");
      return std::nullopt;
    }
  return last;
}

inline kernel_detail::Result Kernel::check_quant(const std::string& rule, const kernel_detail::Step& st) const {
  using namespace kernel_detail;
  const auto& c = st.conclusion;
  if (rule == "forallF") {
    const auto& p = st.premises[0];
    return each_candidate<QuantF>(c.right, "forall", [&](size_t k, const QuantF& q) -> Result {
      if (q.kind != Quant::Forall) return fail(FailureKind::ConclusionMismatch, "not a universal formula");
      auto rest = without_index(c.right, k);
      Result last = fail(FailureKind::ConclusionMismatch, "premise lacks z in " + q.domain);
      for (const auto& s : p.left) {
        auto m = s.is_pair() ? nullptr : as<MemberF>(s.first);
        if (!m || m->domain != q.domain || !m->term.is_var()) continue;
        const auto& z = m->term.var_name();
        if (st.params.var && *st.params.var != z) continue;
        if (free_vars(c).count(z)) {
          last = fail(FailureKind::SideConditionViolated, "eigenvariable " + z + " is free in the conclusion");
          continue;
        }
        if (reg_.is_witness(z)) {
          last = fail(FailureKind::SideConditionViolated, z + " is a domain witness, not an eigenvariable");
          continue;
        }
        Sequent expected{with(c.left, s.first), with(rest, replace_var(q.body, q.var, var(z)))};
        last = expect(p, expected, "forallF premise");
        if (!last) return gate_right(rest);
      }
      return last;
    });
  }
  // forallR: Γ1 ⊢ t∈D, Δ1   Γ2, A(t) ⊢ Δ2  /  Γ1, Γ2, ∀x∈D.A ⊢ Δ1, Δ2
  const auto& p0 = st.premises[0];
  const auto& p1 = st.premises[1];
  return each_candidate<QuantF>(c.left, "forall", [&](size_t k, const QuantF& q) -> Result {
    if (q.kind != Quant::Forall) return fail(FailureKind::ConclusionMismatch, "not a universal formula");
    Result last = fail(FailureKind::ConclusionMismatch, "first premise lacks t in " + q.domain);
    for (size_t j = 0; j < p0.right.size(); ++j) {
      auto m = p0.right[j].is_pair() ? nullptr : as<MemberF>(p0.right[j].first);
      if (!m || m->domain != q.domain) continue;
      if (st.params.term && !(*st.params.term == m->term)) continue;
      auto delta1 = without_index(p0.right, j);
      auto inst = replace_var(q.body, q.var, m->term);
      auto gamma2 = minus(p1.left, inst);
      if (!gamma2) {
        last = fail(FailureKind::ConclusionMismatch, "second premise lacks " + to_string(inst));
        continue;
      }
      last = expect(c, Sequent{with(cat(p0.left, *gamma2), c.left[k]), cat(delta1, p1.right)}, "forallR");
      if (last) continue;
      if (!licensed_term(m->term))
        return fail(FailureKind::SubstitutionNotLicensed,
                    "instantiation by closed term " + to_string(m->term) + " is not licensed");
      if (auto g = gate_right(delta1)) return g;
      if (auto g = gate_left(*gamma2)) return g;
      return std::nullopt;
    }
    return last;
  });
}

inline kernel_detail::Result Kernel::check_equality(const std::string& rule, const kernel_detail::Step& st) const {
  using namespace kernel_detail;
  const auto& c = st.conclusion;
  const auto& p = st.premises[0];
  if (rule == "eqExp") {
    // Γ ⊢ Δ  /  Γ*, s=t ⊢ Δ*   where Γ*[s:=t] = Γ, Δ*[s:=t] = Δ
    return each_candidate<EqF>(c.left, "equality", [&](size_t k, const EqF& e) -> Result {
      if (!e.lhs.is_var() || e.lhs == e.rhs) return fail(FailureKind::ConclusionMismatch, "left side must be a variable");
      const auto& s = e.lhs.var_name();
      if (st.params.var && *st.params.var != s) return fail(FailureKind::ConclusionMismatch, "variable mismatch");
      Sequent rest{without_index(c.left, k), c.right};
      return expect(p, replace_var(rest, s, e.rhs), "eqExp premise");
    });
  }
  // eqRefl: Γ*, s=t ⊢ Δ*  /  Γ*[s:=t] ⊢ Δ*[s:=t]
  return each_candidate<EqF>(p.left, "equality", [&](size_t k, const EqF& e) -> Result {
    if (!e.lhs.is_var() || e.lhs == e.rhs) return fail(FailureKind::ConclusionMismatch, "left side must be a variable");
    const auto& s = e.lhs.var_name();
    if (st.params.var && *st.params.var != s) return fail(FailureKind::ConclusionMismatch, "variable mismatch");
    Sequent rest{without_index(p.left, k), p.right};
    if (auto r = expect(c, replace_var(rest, s, e.rhs), "eqRefl")) return r;
    if (e.rhs.is_var() || !licensed_term(e.rhs))
      return fail(FailureKind::SubstitutionNotLicensed, "replacement by " + to_string(e.rhs) + " is not licensed");
    return std::nullopt;
  });
}

inline kernel_detail::Result Kernel::check_prop(const std::string& rule, const kernel_detail::Step& st) const {
  using namespace kernel_detail;
  const auto& c = st.conclusion;
  auto binary = [&](const Side& side, Conn conn, auto&& f) {
    return each_candidate<BinaryF>(side, "binary", [&](size_t k, const BinaryF& b) -> Result {
      if (b.conn != conn) return fail(FailureKind::ConclusionMismatch, "wrong connective");
      return f(without_index(side, k), b);
    });
  };

  if (rule == "andR")
    return binary(c.right, Conn::And, [&](const Side& rest, const BinaryF& b) -> Result {
      if (auto r = expect(st.premises[0], Sequent{c.left, with(rest, b.lhs)}, "andR left premise")) return r;
      if (auto r = expect(st.premises[1], Sequent{c.left, with(rest, b.rhs)}, "andR right premise")) return r;
      return gate_right(rest);
    });
  if (rule == "andL1" || rule == "andL2")
    return binary(c.left, Conn::And, [&](const Side& rest, const BinaryF& b) -> Result {
      const auto& picked = rule == "andL1" ? b.lhs : b.rhs;
      if (auto r = expect(st.premises[0], Sequent{with(rest, picked), c.right}, "andL premise")) return r;
      return gate_left(rest);
    });
  if (rule == "parR")
    return binary(c.right, Conn::Par, [&](const Side& rest, const BinaryF& b) -> Result {
      if (auto r = expect(st.premises[0], Sequent{c.left, with(with(rest, b.lhs), b.rhs)}, "parR premise")) return r;
      return gate_right(rest);
    });
  if (rule == "parL")
    return binary(c.left, Conn::Par, [&](const Side&, const BinaryF& b) -> Result {
      auto g1 = minus(st.premises[0].left, b.lhs);
      auto g2 = minus(st.premises[1].left, b.rhs);
      if (!g1 || !g2) return fail(FailureKind::ConclusionMismatch, "premises lack the components");
      if (auto r = expect(c, Sequent{with(cat(*g1, *g2), Slot::single(mk::par(b.lhs, b.rhs))),
                                     cat(st.premises[0].right, st.premises[1].right)},
                          "parL"))
        return r;
      return gate_left(cat(*g1, *g2));
    });
  if (rule == "impR")
    return binary(c.right, Conn::Imp, [&](const Side& rest, const BinaryF& b) -> Result {
      if (auto r = expect(st.premises[0], Sequent{with(c.left, b.lhs), with(rest, b.rhs)}, "impR premise")) return r;
      return gate_right(rest);
    });
  if (rule == "impL")
    return binary(c.left, Conn::Imp, [&](const Side&, const BinaryF& b) -> Result {
      const auto& p0 = st.premises[0];
      const auto& p1 = st.premises[1];
      auto d1 = minus(p0.right, b.lhs);
      auto g2 = minus(p1.left, b.rhs);
      if (!d1 || !g2) return fail(FailureKind::ConclusionMismatch, "premises lack the components");
      if (auto r = expect(c, Sequent{with(cat(p0.left, *g2), Slot::single(mk::imp(b.lhs, b.rhs))), cat(*d1, p1.right)},
                          "impL"))
        return r;
      if (auto g = gate_right(*d1)) return g;
      return gate_left(*g2);
    });
  return fail(FailureKind::UnknownRule, rule);
}

inline kernel_detail::Result Kernel::check_correlation(const std::string& rule, const kernel_detail::Step& st) const {
  using namespace kernel_detail;
  const auto& c = st.conclusion;
  const auto& p = st.premises[0];

  // The pair A_i ,_f A_j must have A_j = A_i reindexed.
  auto pair_indexes = [](const Slot& s) -> std::optional<std::pair<Index, Index>> {
    auto i = index_of(s.first);
    auto j = index_of(s.second);
    if (!i || !j) return std::nullopt;
    if (!formula_equal(reindex(s.first, *i, *j), s.second)) return std::nullopt;
    return std::make_pair(*i, *j);
  };
  auto pairs = [](const Side& side, auto&& f) -> Result {
    Result last = fail(FailureKind::ConclusionMismatch, "no correlated pair");
    for (size_t k = 0; k < side.size(); ++k) {
      if (!side[k].is_pair()) continue;
      last = f(k, side[k]);
      if (!last) return last;
    }
    return last;
  };
  auto virtual_context = [&](const Side& left) -> Result {
    for (const auto& s : left) {
      auto m = s.is_pair() ? nullptr : as<MemberF>(s.first);
      if (!m || !m->term.is_var()) continue;
      if (const auto* r = reg_.find(m->domain); r && r->virtual_singleton && !r->focused) return std::nullopt;
    }
    return fail(FailureKind::SideConditionViolated, "NotVirtualSingleton: no z in V with V a virtual singleton");
  };

  if (rule == "convRel")
    return pairs(p.right, [&](size_t k, const Slot& s) -> Result {
      auto ij = pair_indexes(s);
      if (!ij) return fail(FailureKind::SideConditionViolated, "pair components are not reindexings of each other");
      auto rel = mk::index_rel(ij->first, *s.tag, ij->second);
      return expect(c, Sequent{with(p.left, rel), with(without_index(p.right, k), s.first)}, "convRel");
    });
  if (rule == "convComma")
    return pairs(c.right, [&](size_t k, const Slot& s) -> Result {
      auto ij = pair_indexes(s);
      if (!ij) return fail(FailureKind::SideConditionViolated, "pair components are not reindexings of each other");
      auto rel = mk::index_rel(ij->first, *s.tag, ij->second);
      return expect(p, Sequent{with(c.left, rel), with(without_index(c.right, k), s.first)}, "convComma premise");
    });
  if (rule == "idem") {
    for (const auto& s : c.right)
      if (!s.is_pair() && same_sequent(p, Sequent{c.left, with(c.right, s.first)})) return std::nullopt;
    return fail(FailureKind::ConclusionMismatch, "premise is not the conclusion with one right formula doubled");
  }
  if (rule == "idemInv") {
    for (const auto& s : p.right)
      if (!s.is_pair() && same_sequent(c, Sequent{p.left, with(p.right, s.first)})) return std::nullopt;
    return fail(FailureKind::ConclusionMismatch, "conclusion is not the premise with one right formula doubled");
  }
  if (rule == "joinR")
    return each_candidate<JoinF>(c.right, "join", [&](size_t k, const JoinF& j) -> Result {
      auto pr = Slot::pair(j.lhs, j.tag, j.rhs);
      if (auto r = expect(p, Sequent{c.left, with(without_index(c.right, k), pr)}, "joinR premise")) return r;
      return virtual_context(c.left);
    });
  if (rule == "joinRinv")
    return pairs(c.right, [&](size_t k, const Slot& s) -> Result {
      auto j = mk::join(*s.tag, s.first, s.second);
      if (auto r = expect(p, Sequent{c.left, with(without_index(c.right, k), j)}, "joinRinv premise")) return r;
      return virtual_context(c.left);
    });
  // parallelForall: checked through its expansion.
  ProofNode prem{p, "", {}, {}};
  auto expansion = expand_parallel(c, prem);
  if (!expansion) return fail(FailureKind::ConclusionMismatch, "not an instance of the parallel rule");
  std::vector<const ProofNode*> steps;
  for (const ProofNode* n = &*expansion; n && !n->rule.empty(); n = n->premises.empty() ? nullptr : &n->premises[0])
    steps.push_back(n);
  for (const auto* n : steps) {
    std::vector<Sequent> ps;
    for (const auto& q : n->premises) ps.push_back(q.conclusion);
    if (auto r = check_step(n->rule, n->conclusion, ps, n->params)) return r;
  }
  return std::nullopt;
}

// Γ, z∈V ⊢ A_i(z) ,_f A_j(z)  /  Γ ⊢ (∀x∈V)A_i(x) ,_f (∀x∈V)A_j(x)
inline std::optional<ProofNode> Kernel::expand_parallel(const Sequent& c, const ProofNode& premise) const {
  using namespace kernel_detail;
  if (c.right.size() != 1 || !c.right[0].is_pair()) return std::nullopt;
  const auto& target = c.right[0];
  auto qi = as<QuantF>(target.first);
  auto qj = as<QuantF>(target.second);
  if (!qi || !qj || qi->kind != Quant::Forall || qj->kind != Quant::Forall || qi->domain != qj->domain)
    return std::nullopt;
  const auto* vrec = reg_.find(qi->domain);
  if (!vrec || !vrec->virtual_singleton || vrec->focused) return std::nullopt;
  auto i = index_of(target.first);
  auto j = index_of(target.second);
  if (!i || !j) return std::nullopt;
  const auto& p = premise.conclusion;
  if (p.right.size() != 1 || !p.right[0].is_pair()) return std::nullopt;
  for (const auto& s : p.left) {
    auto m = s.is_pair() ? nullptr : as<MemberF>(s.first);
    if (!m || m->domain != qi->domain || !m->term.is_var()) continue;
    auto gamma = minus(p.left, s.first);
    if (!gamma || !same_side(*gamma, c.left)) continue;
    auto rel = mk::index_rel(*i, *target.tag, *j);
    Sequent s1{with(p.left, rel), {Slot::single(p.right[0].first)}};
    Sequent s2{with(c.left, rel), {Slot::single(target.first)}};
    ProofNode n1{s1, "convRel", {}, {premise}};
    Params fp;
    fp.var = m->term.var_name();
    ProofNode n2{s2, "forallF", fp, {std::move(n1)}};
    return ProofNode{c, "convComma", {}, {std::move(n2)}};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace kernel_detail {

inline void check_rec(const Kernel& k, const ProofNode& n, const std::string& path, CheckReport& rep) {
  ++rep.nodes;
  ++rep.rules_used[n.rule];
  for (const auto& d : sequent_domains(n.conclusion)) {
    if (!k.registry().contains(d)) {
      rep.failures.push_back({path, n.rule, FailureKind::UnknownDomain, d});
      break;
    }
  }
  std::vector<Sequent> ps;
  ps.reserve(n.premises.size());
  for (const auto& p : n.premises) ps.push_back(p.conclusion);
  try {
    if (auto r = k.check_step(n.rule, n.conclusion, ps, n.params))
      rep.failures.push_back({path, n.rule, r->kind, r->detail});
  } catch (const Error& e) {
    rep.failures.push_back({path, n.rule, FailureKind::UnknownDomain, e.what()});
  }
  for (size_t i = 0; i < n.premises.size(); ++i) check_rec(k, n.premises[i], path + "/" + std::to_string(i), rep);
}

}  // namespace kernel_detail

inline CheckReport check_proof(const ProofNode& p, const CalculusConfig& cfg, const Registry& reg) {
  CheckReport rep;
  Kernel k(cfg, reg);
  kernel_detail::check_rec(k, p, "", rep);
  rep.ok = rep.failures.empty();
  return rep;
}

inline Params symmetrize_params(const Params& p, const LiteralInvolution& inv) {
  Params out = p;
  if (p.formula) out.formula = symmetrize_formula(*p.formula, inv);
  return out;
}

inline ProofNode symmetrize_proof_with(const ProofNode& p, const LiteralInvolution& inv) {
  ProofNode out;
  out.conclusion = symmetrize_sequent(p.conclusion, inv);
  const auto* info = find_rule(p.rule);
  out.rule = info ? info->mirror : p.rule;
  out.params = symmetrize_params(p.params, inv);
  for (auto it = p.premises.rbegin(); it != p.premises.rend(); ++it)
    out.premises.push_back(symmetrize_proof_with(*it, inv));
  return out;
}

// Πˢ: every rule replaced by its pair, premise order reversed.
inline ProofNode symmetrize_proof(const ProofNode& p, const CalculusConfig& cfg, const Registry& reg,
                                  LiteralInvolution::Kind kind = LiteralInvolution::Kind::identity) {
  if (!cfg.symmetric())
    throw Error(ErrorKind::NotSymmetricConfig, "left_contexts and right_contexts differ");
  return symmetrize_proof_with(p, reg.involution(kind));
}

// Replaces every parallel-rule macro by its expansion.
inline ProofNode expand_derived(const ProofNode& p, const CalculusConfig& cfg, const Registry& reg) {
  ProofNode out = p;
  out.premises.clear();
  for (const auto& q : p.premises) out.premises.push_back(expand_derived(q, cfg, reg));
  if (!is_macro(p.rule)) return out;
  if (p.rule == "parallelExists") {
    auto inv = reg.involution();
    auto mirrored = symmetrize_proof_with(out, inv);
    auto expanded = expand_derived(mirrored, cfg.flipped(), reg);
    return symmetrize_proof_with(expanded, inv);
  }
  Kernel k(cfg, reg);
  if (out.premises.size() != 1) return out;
  auto e = k.expand_parallel(out.conclusion, out.premises[0]);
  return e ? *e : out;
}

}  // namespace symlog
