#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symlog/kernel.hpp"

namespace symlog {

// A single second-order conversion step on the right side of a sequent.
//   toRelation:  Γ ⊢ A_i ,_f A_j, Δ   ↦  Γ, i∼_f j ⊢ A_i, Δ
//   toComma:     the inverse
//   contract:    Γ ⊢ A, A, Δ  ↦  Γ ⊢ A, Δ    (same index twice)
//   duplicate:   the inverse of contract
struct ConversionStep {
  enum class Direction { toRelation, toComma, contract, duplicate } direction = Direction::toRelation;
  std::size_t slot = 0;
  std::optional<Formula> introduced;  // the index relation, when known

  const char* rule() const {
    switch (direction) {
      case Direction::toRelation: return "convRel";
      case Direction::toComma: return "convComma";
      case Direction::contract: return "idem";
      case Direction::duplicate: return "idemInv";
    }
    return "?";
  }
};

namespace corr_detail {

[[noreturn]] inline void mismatch(const std::string& what) { throw Error(ErrorKind::SlotMismatch, what); }

inline const Slot& right_slot(const Sequent& s, std::size_t k) {
  if (k >= s.right.size()) mismatch("no right slot " + std::to_string(k));
  return s.right[k];
}

inline std::pair<Index, Index> pair_indexes(const Slot& s) {
  auto i = index_of(s.first);
  auto j = index_of(s.second);
  if (!i || !j) mismatch("correlated components must carry indexes");
  if (!formula_equal(reindex(s.first, *i, *j), s.second))
    mismatch(to_string(s.second) + " is not " + to_string(s.first) + " reindexed");
  return {*i, *j};
}

}  // namespace corr_detail

inline Sequent convert(const Sequent& s, const ConversionStep& step) {
  using namespace corr_detail;
  using D = ConversionStep::Direction;
  Sequent out = s;
  const auto& sl = right_slot(s, step.slot);
  switch (step.direction) {
    case D::toRelation: {
      if (!sl.is_pair()) mismatch("slot " + std::to_string(step.slot) + " is not a correlated pair");
      auto [i, j] = pair_indexes(sl);
      auto rel = mk::index_rel(i, *sl.tag, j);
      if (step.introduced && !formula_equal(*step.introduced, rel)) mismatch("index relation does not match the pair");
      out.left.push_back(Slot::single(rel));
      out.right[step.slot] = Slot::single(sl.first);
      return out;
    }
    case D::toComma: {
      if (sl.is_pair()) mismatch("slot " + std::to_string(step.slot) + " is already a pair");
      auto i = index_of(sl.first);
      if (!i) mismatch(to_string(sl.first) + " carries no index");
      // most recently introduced relation first
      for (std::size_t k = s.left.size(); k-- > 0;) {
        if (s.left[k].is_pair()) continue;
        auto r = as<IndexRelF>(s.left[k].first);
        if (!r || !(r->lhs == *i)) continue;
        if (step.introduced && !formula_equal(*step.introduced, s.left[k].first)) continue;
        out.left.erase(out.left.begin() + static_cast<std::ptrdiff_t>(k));
        out.right[step.slot] = Slot::pair(sl.first, r->tag, reindex(sl.first, r->lhs, r->rhs));
        return out;
      }
      mismatch("no index relation for " + to_string(*i) + " on the left");
    }
    case D::contract: {
      if (sl.is_pair()) mismatch("cannot contract a pair");
      for (std::size_t k = 0; k < s.right.size(); ++k)
        if (k != step.slot && !s.right[k].is_pair() && formula_equal(s.right[k].first, sl.first)) {
          out.right.erase(out.right.begin() + static_cast<std::ptrdiff_t>(k));
          return out;
        }
      mismatch(to_string(sl.first) + " occurs only once");
    }
    case D::duplicate: {
      if (sl.is_pair()) mismatch("cannot duplicate a pair");
      out.right.insert(out.right.begin() + static_cast<std::ptrdiff_t>(step.slot) + 1, sl);
      return out;
    }
  }
  return out;
}

enum class JoinDirection { toJoin, toComma };

// Γ′, z∈V ⊢ A_i ⋈_f A_j  ≡  Γ′, z∈V ⊢ A_i ,_f A_j   for V a virtual singleton.
inline Sequent join_step(const Sequent& s, JoinDirection dir, const Registry& reg,
                         std::optional<std::size_t> slot = std::nullopt) {
  bool licensed = false;
  std::string seen;
  for (const auto& l : s.left) {
    auto m = l.is_pair() ? nullptr : as<MemberF>(l.first);
    if (!m || !m->term.is_var()) continue;
    const auto* r = reg.find(m->domain);
    if (!r) continue;
    seen = m->domain;
    if (r->virtual_singleton && !r->focused) licensed = true;
  }
  if (!licensed)
    throw Error(ErrorKind::NotVirtualSingleton,
                seen.empty() ? "no z in V on the left" : seen + " is not a virtual singleton");
  Sequent out = s;
  for (std::size_t k = 0; k < s.right.size(); ++k) {
    if (slot && *slot != k) continue;
    const auto& sl = s.right[k];
    if (dir == JoinDirection::toJoin && sl.is_pair()) {
      out.right[k] = Slot::single(mk::join(*sl.tag, sl.first, sl.second));
      return out;
    }
    if (dir == JoinDirection::toComma && !sl.is_pair())
      if (auto j = as<JoinF>(sl.first)) {
        out.right[k] = Slot::pair(j->lhs, j->tag, j->rhs);
        return out;
      }
  }
  throw Error(ErrorKind::SlotMismatch, dir == JoinDirection::toJoin ? "no correlated pair" : "no join formula");
}

// ---------------------------------------------------------------------------
// Distribution of ∀ over ⋈ on a virtual singleton

struct Distribution {
  ProofNode forward;   // (∀x∈V)(A1 ⋈ A2)(x) ⊢ (∀x∈V)A1(x) ⋈ (∀x∈V)A2(x)
  ProofNode converse;  // the other direction
  CalculusConfig config;
};

namespace corr_detail {

inline Formula inst(const Formula& body, const std::string& x, const Term& t) { return replace_var(body, x, t); }

inline ProofNode cut(Sequent c, ProofNode p0, ProofNode p1, const Formula& a) {
  Params p;
  p.formula = a;
  return node(std::move(c), "cut", {std::move(p0), std::move(p1)}, p);
}

inline Sequent sq(std::vector<Slot> l, std::vector<Slot> r) { return Sequent{std::move(l), std::move(r)}; }
inline Slot one(const Formula& f) { return Slot::single(f); }

// G ⊢ (∀x∈V)a1 ⋈_f (∀x∈V)a2  with G = (∀x∈V)(a1 ⋈_f a2)
inline ProofNode forward_proof(const Registry& reg, const std::string& V, const Formula& a1, const Formula& a2, Corr f,
                               const std::string& x) {
  auto z = var(fresh_name("z", [&] {
    std::set<std::string> n;
    all_names(a1, n);
    all_names(a2, n);
    n.insert(witness_name(V));
    return n;
  }()));
  auto w = *reg.witness(V);
  auto G = mk::forall(x, V, mk::join(f, a1, a2));
  auto Jz = mk::join(f, inst(a1, x, z), inst(a2, x, z));
  auto zV = mk::member(z, V), wV = mk::member(w, V);
  auto all1 = mk::forall(x, V, a1), all2 = mk::forall(x, V, a2);
  auto pair = Slot::pair(all1, f, all2);

  auto s1 = node(sq({one(zV), one(G)}, {one(Jz)}), "forallR",
                 {leaf(seq({zV}, {zV}), "id"), leaf(seq({Jz}, {Jz}), "id")});
  s1.params.term = z;
  auto s2 = node(sq({one(zV), one(G)}, {Slot::pair(inst(a1, x, z), f, inst(a2, x, z))}), "joinRinv", {std::move(s1)});
  auto s3 = node(sq({one(G)}, {pair}), "parallelForall", {std::move(s2)});
  Params wp;
  wp.formula = wV;
  auto s4 = node(sq({one(wV), one(G)}, {pair}), "wL", {std::move(s3)}, wp);
  auto s5 = node(sq({one(wV), one(G)}, {one(mk::join(f, all1, all2))}), "joinR", {std::move(s4)});
  return cut(sq({one(G)}, {one(mk::join(f, all1, all2))}), leaf(seq({}, {wV}), "memR"), std::move(s5), wV);
}

// (∃x∈V)A ⊢ (∀x∈V)A from a d-axiom instance
inline ProofNode exists_forall(const Registry& reg, const std::string& V, const Formula& body, const std::string& x) {
  std::set<std::string> n;
  all_names(body, n);
  auto z = var(fresh_name("z", n));
  n.insert(z.var_name());
  auto y = var(fresh_name("y", n));
  auto d = reg.membership_duality(V);
  auto ex = mk::exists(x, V, body), all = mk::forall(x, V, body);
  auto zV = mk::member(z, V);
  auto ax = leaf(seq({zV, inst(body, x, y)}, {inst(body, x, z), mk::dual_member(y, V, d)}), "dAxiom");
  auto e = node(seq({zV, ex}, {inst(body, x, z)}), "existsF", {std::move(ax)});
  e.params.var = y.var_name();
  auto a = node(seq({ex}, {all}), "forallF", {std::move(e)});
  a.params.var = z.var_name();
  return a;
}

// (∀x∈V)A ⊢ (∃x∈V)A through the witness of V
inline ProofNode forall_exists(const Registry& reg, const std::string& V, const Formula& body, const std::string& x) {
  auto w = *reg.witness(V);
  auto d = reg.membership_duality(V);
  auto aw = inst(body, x, w);
  auto inner = node(seq({aw}, {mk::exists(x, V, body)}), "existsR",
                    {leaf(seq({aw}, {aw}), "id"), leaf(seq({mk::dual_member(w, V, d)}, {}), "memL")});
  inner.params.term = w;
  auto p = node(seq({mk::forall(x, V, body)}, {mk::exists(x, V, body)}), "forallR",
                {leaf(seq({}, {mk::member(w, V)}), "memR"), std::move(inner)});
  p.params.term = w;
  return p;
}

}  // namespace corr_detail

inline CalculusConfig distribution_config(const Registry& reg, const std::string& V) {
  auto cfg = CalculusConfig::all_flags();
  cfg.d_axiom_domains.insert({V, reg.membership_duality(V)});
  return cfg;
}

// Both directions of (∀x∈V)(A1 ⋈_f A2)(x) = (∀x∈V)A1(x) ⋈_f (∀x∈V)A2(x).
// a1 and a2 have x free and differ only in their index.
inline Distribution distribute_forall(const Registry& reg, const std::string& V, const Formula& a1, const Formula& a2,
                                      Corr f, const std::string& x = "x") {
  using namespace corr_detail;
  const auto& r = reg.at(V);
  if (!r.virtual_singleton || r.focused) throw Error(ErrorKind::NotVirtualSingleton, V);
  if (!r.inhabited) throw Error(ErrorKind::EmptyDomain, V + " has no declared inhabitant");
  auto i = index_of(a1), j = index_of(a2);
  if (!i || !j || *i == *j || !formula_equal(reindex(a1, *i, *j), a2))
    throw Error(ErrorKind::SlotMismatch, "components must be reindexings of each other");

  Distribution out;
  out.config = distribution_config(reg, V);
  out.forward = forward_proof(reg, V, a1, a2, f, x);

  // The converse is the symmetric proof of  (∃x∈V)(b1 ⋈ b2) ⊢ (∃x∈V)b1 ⋈ (∃x∈V)b2  with b1 = a2ˢ, b2 = a1ˢ.
  auto inv = reg.involution();
  auto b1 = symmetrize_formula(a2, inv), b2 = symmetrize_formula(a1, inv);
  auto J = mk::join(f, b1, b2);
  auto exJ = mk::exists(x, V, J);
  auto all1 = mk::forall(x, V, b1), all2 = mk::forall(x, V, b2);
  auto ex1 = mk::exists(x, V, b1), ex2 = mk::exists(x, V, b2);
  auto w = *reg.witness(V);
  auto wV = mk::member(w, V);
  auto rel = mk::index_rel(*j, f, *i);

  auto k1 = cut(seq({exJ}, {mk::join(f, all1, all2)}), exists_forall(reg, V, J, x), forward_proof(reg, V, b1, b2, f, x),
                mk::forall(x, V, J));
  Params wp;
  wp.formula = wV;
  auto k2 = node(seq({wV, exJ}, {mk::join(f, all1, all2)}), "wL", {std::move(k1)}, wp);
  auto k3 = node(sq({one(wV), one(exJ)}, {Slot::pair(all1, f, all2)}), "joinRinv", {std::move(k2)});
  auto k4 = node(seq({wV, exJ, rel}, {all1}), "convRel", {std::move(k3)});
  auto k5 = cut(seq({wV, exJ, rel}, {ex1}), std::move(k4), forall_exists(reg, V, b1, x), all1);
  auto k6 = node(sq({one(wV), one(exJ)}, {Slot::pair(ex1, f, ex2)}), "convComma", {std::move(k5)});
  auto k7 = node(seq({wV, exJ}, {mk::join(f, ex1, ex2)}), "joinR", {std::move(k6)});
  auto k8 = cut(seq({exJ}, {mk::join(f, ex1, ex2)}), leaf(seq({}, {wV}), "memR"), std::move(k7), wV);
  out.converse = symmetrize_proof(k8, out.config, reg);
  return out;
}

}  // namespace symlog
