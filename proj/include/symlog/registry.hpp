#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symlog/dualities.hpp"
#include "symlog/formula.hpp"
#include "symlog/printer.hpp"

namespace symlog {

// A named random first-order domain: the (outcome, probability) pairs of a
// random variable, with the modelling flags that license rules over it.
struct DomainRecord {
  std::string name;
  std::vector<Term> entries;
  bool focused = false;
  bool virtual_singleton = false;
  std::optional<std::string> duality;
  bool substitution_allowed = false;
  bool inhabited = false;

  bool extensional_singleton() const { return focused && entries.size() == 1; }
};

inline std::string witness_name(const std::string& domain) { return "w" + domain; }

class Registry {
 public:
  explicit Registry(bool collapse_demo = false) : collapse_demo_(collapse_demo) {}

  bool collapse_demo() const { return collapse_demo_; }

  static void validate(const DomainRecord& r, bool collapse_demo) {
    auto fail = [&](const std::string& clause) {
      throw Error(ErrorKind::InvariantViolation, "domain " + r.name + ": " + clause);
    };
    if (r.name.empty()) fail("empty name");
    Rational sum = 0;
    for (const auto& t : r.entries) {
      auto o = std::get_if<Outcome>(&t.rep());
      if (!o) fail("entries must be outcome terms");
      sum += o->prob;
    }
    if (!r.entries.empty() && sum != Rational(1)) fail("entry probabilities must sum to 1");
    for (size_t i = 0; i < r.entries.size(); ++i)
      for (size_t j = i + 1; j < r.entries.size(); ++j)
        if (r.entries[i] == r.entries[j]) fail("duplicate entry");
    if (r.focused && r.entries.empty()) fail("a focused domain needs entries");
    if (r.focused && r.virtual_singleton && r.entries.size() != 1)
      fail("focused and virtual singleton requires exactly one entry");
    if (r.virtual_singleton && !r.duality) fail("a virtual singleton needs a duality");
    if (r.virtual_singleton && r.substitution_allowed && !collapse_demo)
      fail("a virtual singleton cannot allow substitution outside collapse-demo mode");
  }

  // Registers the domain; membership axioms follow from entries() and witness().
  const DomainRecord& register_domain(DomainRecord r) {
    validate(r, collapse_demo_);
    if (domains_.count(r.name))
      throw Error(ErrorKind::InvariantViolation, "domain " + r.name + " already registered");
    auto name = r.name;
    order_.push_back(name);
    return domains_.emplace(name, std::move(r)).first->second;
  }

  bool contains(const std::string& name) const { return domains_.count(name) != 0; }

  const DomainRecord& at(const std::string& name) const {
    auto it = domains_.find(name);
    if (it == domains_.end()) throw Error(ErrorKind::UnknownDomain, name);
    return it->second;
  }

  const DomainRecord* find(const std::string& name) const {
    auto it = domains_.find(name);
    return it == domains_.end() ? nullptr : &it->second;
  }

  const std::vector<std::string>& names() const { return order_; }

  std::optional<Term> witness(const std::string& name) const {
    const auto& r = at(name);
    if (!r.inhabited) return std::nullopt;
    return var(witness_name(name));
  }

  bool is_witness(const std::string& var_name) const {
    for (const auto& [n, r] : domains_)
      if (r.inhabited && witness_name(n) == var_name) return true;
    return false;
  }

  // Terms t with a membership axiom ⊢ t∈D.
  bool is_member(const Term& t, const std::string& name) const {
    const auto* r = find(name);
    if (!r) return false;
    if (std::find(r->entries.begin(), r->entries.end(), t) != r->entries.end()) return true;
    return r->inhabited && t.is_var() && t.var_name() == witness_name(name);
  }

  std::vector<Term> members(const std::string& name) const {
    auto out = at(name).entries;
    if (auto w = witness(name)) out.push_back(*w);
    return out;
  }

  // Name of the duality dualizing membership in the domain ("d" by default).
  std::string membership_duality(const std::string& name) const {
    const auto* r = find(name);
    return r && r->duality ? *r->duality : "d";
  }

  LiteralInvolution involution(LiteralInvolution::Kind kind = LiteralInvolution::Kind::identity) const {
    LiteralInvolution inv;
    inv.kind = kind;
    for (const auto& [n, r] : domains_)
      if (r.duality) inv.membership_duality[n] = *r.duality;
    return inv;
  }

 private:
  bool collapse_demo_;
  std::map<std::string, DomainRecord> domains_;
  std::vector<std::string> order_;
};

inline DomainRecord make_domain(std::string name, std::vector<Term> entries, bool focused, bool virtual_singleton,
                                std::optional<std::string> duality, bool substitution_allowed, bool inhabited) {
  return DomainRecord{std::move(name), std::move(entries), focused,  virtual_singleton,
                      std::move(duality), substitution_allowed, inhabited};
}

// D↓, D↑, D₊, D₋, a focused D = {t1,t2}, a focused D3 = {t1,t2,t3}, and a
// two-entry virtual singleton V that allows substitution only in collapse-demo mode.
inline Registry standard_registry(bool collapse_demo = false) {
  Registry reg(collapse_demo);
  Rational half(1, 2), third(1, 3);
  reg.register_domain(make_domain(kDown, {outcome("down", 1)}, true, false, "perp", true, false));
  reg.register_domain(make_domain(kUp, {outcome("up", 1)}, true, false, "perp", true, false));
  reg.register_domain(
      make_domain(kPlus, {outcome("down", half), outcome("up", half)}, false, true, "top", false, true));
  reg.register_domain(
      make_domain(kMinus, {outcome("down", half), outcome("up", half)}, false, true, "top", false, true));
  reg.register_domain(make_domain("D", {outcome("t1", half), outcome("t2", half)}, true, false, std::nullopt, true,
                                  false));
  reg.register_domain(make_domain("D3", {outcome("t1", third), outcome("t2", third), outcome("t3", third)}, true,
                                  false, std::nullopt, true, false));
  reg.register_domain(
      make_domain("V", {outcome("u1", half), outcome("u2", half)}, false, true, "d", collapse_demo, true));
  return reg;
}

// ---------------------------------------------------------------------------

inline Formula focus_disjunction(const Term& z, const std::vector<Term>& entries) {
  Formula out = mk::eq(z, entries.back());
  for (size_t i = entries.size() - 1; i-- > 0;) out = mk::disj(mk::eq(z, entries[i]), out);
  return out;
}

struct FocusSequents {
  Sequent always;  // z=t1 ∨ … ∨ z=tn ⊢ z∈D
  Sequent focus;   // z∈D ⊢ z=t1 ∨ … ∨ z=tn
  bool focus_is_axiom = false;
};

inline FocusSequents focus_sequents(const Registry& reg, const std::string& name, const std::string& z = "z") {
  const auto& r = reg.at(name);
  if (r.entries.empty()) throw Error(ErrorKind::EmptyDomain, name);
  auto disj = focus_disjunction(var(z), r.entries);
  auto mem = mk::member(var(z), name);
  return FocusSequents{seq({disj}, {mem}), seq({mem}, {disj}), r.focused};
}

struct DAxiomSchema {
  std::string domain;
  std::string duality;
  bool extensional = false;  // derivable z=u, A(y) ⊢ A(z), y≠u
  std::optional<Term> element;
  std::string text;
};

inline DAxiomSchema license_d_axiom(const DomainRecord& r, const std::string& duality) {
  if (r.focused) {
    if (r.entries.size() != 1)
      throw Error(ErrorKind::FocusedNonSingleton, r.name + " is focused with " + std::to_string(r.entries.size()) +
                                                      " entries");
    auto u = to_string(r.entries.front());
    return {r.name, duality, true, r.entries.front(), "z = " + u + ", A(y) |- A(z), y /= " + u};
  }
  if (!r.virtual_singleton) throw Error(ErrorKind::NotVirtualSingleton, r.name);
  std::string dual_mem = "(y in " + r.name + ")^" + duality;
  if (auto pd = parse_duality(duality))
    if (auto other = dual_domain(r.name, *pd); other && *other != r.name) dual_mem = "y in " + *other;
  return {r.name, duality, false, std::nullopt, "z in " + r.name + ", A(y) |- A(z), " + dual_mem};
}

}  // namespace symlog
