#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symlog/kernel.hpp"

namespace symlog {

struct GuardResult {
  enum class Verdict { Consistent, Collapse } verdict = Verdict::Consistent;
  std::vector<ProofNode> proofs;  // ⊢ u′=u for every ordered pair of distinct entries, or ⊢ u=u
};

inline const char* to_string(GuardResult::Verdict v) {
  return v == GuardResult::Verdict::Collapse ? "Collapse" : "Consistent";
}

// ⊢ u′=u from the d-axiom on V and substitution by elements of V.
inline ProofNode collapse_proof(const std::string& V, const std::string& duality, const Term& u, const Term& u2) {
  auto z = var("z"), y = var("y");
  auto dm = [&](const Term& t) { return mk::dual_member(t, V, duality); };
  auto ax = leaf(seq({mk::member(z, V), mk::eq(y, u)}, {mk::eq(z, u), dm(y)}), "dAxiom");
  Params s1;
  s1.var = "z";
  s1.term = u2;
  s1.domain = V;
  auto p1 = node(seq({mk::member(u2, V), mk::eq(y, u)}, {mk::eq(u2, u), dm(y)}), "subst", {std::move(ax)}, s1);
  Params s2 = s1;
  s2.var = "y";
  s2.term = u;
  auto p2 = node(seq({mk::member(u2, V), mk::eq(u, u)}, {mk::eq(u2, u), dm(u)}), "subst", {std::move(p1)}, s2);
  auto cut = [](Sequent c, ProofNode a, ProofNode b, const Formula& f) {
    Params p;
    p.formula = f;
    return node(std::move(c), "cut", {std::move(a), std::move(b)}, p);
  };
  auto p3 = cut(seq({mk::member(u2, V)}, {mk::eq(u2, u), dm(u)}), leaf(seq({}, {mk::eq(u, u)}), "refl"),
                std::move(p2), mk::eq(u, u));
  auto p4 = cut(seq({}, {mk::eq(u2, u), dm(u)}), leaf(seq({}, {mk::member(u2, V)}), "memR"), std::move(p3),
                mk::member(u2, V));
  return cut(seq({}, {mk::eq(u2, u)}), std::move(p4), leaf(seq({dm(u)}, {}), "memL"), dm(u));
}

inline GuardResult consistency_guard(const Registry& reg, const std::string& name, const CalculusConfig& cfg) {
  const auto& r = reg.at(name);
  GuardResult out;
  std::optional<std::string> duality;
  for (const auto& [d, dual] : cfg.d_axiom_domains)
    if (d == name) duality = dual;
  bool subst = cfg.substitution_domains.count(name) != 0;
  if (!duality || !subst) return out;
  if (r.extensional_singleton()) {
    const auto& u = r.entries.front();
    out.proofs.push_back(leaf(seq({}, {mk::eq(u, u)}), "refl"));
    return out;
  }
  for (const auto& u : r.entries)
    for (const auto& u2 : r.entries)
      if (!(u == u2)) out.proofs.push_back(collapse_proof(name, *duality, u, u2));
  if (!out.proofs.empty()) out.verdict = GuardResult::Verdict::Collapse;
  return out;
}

}  // namespace symlog
