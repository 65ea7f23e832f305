#pragma once

#include <map>
#include <optional>
#include <string>

#include "symlog/formula.hpp"
#include "symlog/printer.hpp"

namespace symlog {

enum class Duality { perp, top };

inline const char* to_string(Duality d) { return d == Duality::perp ? "perp" : "top"; }

inline std::optional<Duality> parse_duality(const std::string& s) {
  if (s == "perp") return Duality::perp;
  if (s == "top") return Duality::top;
  return std::nullopt;
}

// Domain names of the qubit dictionary.
inline constexpr const char* kDown = "Ddown";
inline constexpr const char* kUp = "Dup";
inline constexpr const char* kPlus = "Dplus";
inline constexpr const char* kMinus = "Dminus";

inline bool is_qubit_domain(const std::string& d) { return d == kDown || d == kUp || d == kPlus || d == kMinus; }

// perp swaps the sharp pair and fixes the phase pair; top does the opposite.
inline std::optional<std::string> dual_domain(const std::string& d, Duality which) {
  if (!is_qubit_domain(d)) return std::nullopt;
  if (which == Duality::perp) {
    if (d == kDown) return std::string(kUp);
    if (d == kUp) return std::string(kDown);
    return d;
  }
  if (d == kPlus) return std::string(kMinus);
  if (d == kMinus) return std::string(kPlus);
  return d;
}

// An involution on literals, together with the name of the duality used to
// dualize membership atoms of each domain (default "d").
struct LiteralInvolution {
  enum class Kind { identity, perp, top } kind = Kind::identity;
  std::map<std::string, std::string> membership_duality;

  static LiteralInvolution identity() { return {}; }
  static LiteralInvolution perp() { return {Kind::perp, {}}; }
  static LiteralInvolution top() { return {Kind::top, {}}; }

  std::string dual_name(const std::string& domain) const {
    auto it = membership_duality.find(domain);
    return it == membership_duality.end() ? "d" : it->second;
  }

  const char* name() const {
    switch (kind) {
      case Kind::identity: return "identity";
      case Kind::perp: return "perp";
      case Kind::top: return "top";
    }
    return "?";
  }
};

namespace detail {

inline bool is_sharp_outcome(const Term& t, std::string* label = nullptr) {
  auto o = std::get_if<Outcome>(&t.rep());
  if (!o || o->prob != Rational(1) || (o->label != "down" && o->label != "up")) return false;
  if (label) *label = o->label;
  return true;
}

// A(↓,1) <-> A(↑,1)
inline std::optional<Formula> swap_sharp_atom(const AtomF& a) {
  std::string label;
  if (a.args.size() != 1 || !is_sharp_outcome(a.args[0], &label)) return std::nullopt;
  return mk::atom(a.pred, {outcome(label == "down" ? "up" : "down", 1)}, a.index);
}

inline Conn symmetric_conn(Conn c) {
  switch (c) {
    case Conn::And: return Conn::Or;
    case Conn::Or: return Conn::And;
    case Conn::Times: return Conn::Par;
    case Conn::Par: return Conn::Times;
    case Conn::Imp: return Conn::Excl;
    case Conn::Excl: return Conn::Imp;
  }
  return c;
}

}  // namespace detail

inline Formula symmetrize_formula(const Formula& f, const LiteralInvolution& inv) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          if (inv.kind == LiteralInvolution::Kind::perp)
            if (auto g = detail::swap_sharp_atom(n)) return *g;
          return f;
        } else if constexpr (std::is_same_v<T, MemberF>) {
          return mk::dual_member(n.term, n.domain, inv.dual_name(n.domain));
        } else if constexpr (std::is_same_v<T, DualMemberF>) {
          if (n.duality == inv.dual_name(n.domain)) return mk::member(n.term, n.domain);
          return f;
        } else if constexpr (std::is_same_v<T, EqF>) {
          return mk::neq(n.lhs, n.rhs);
        } else if constexpr (std::is_same_v<T, NeqF>) {
          return mk::eq(n.lhs, n.rhs);
        } else if constexpr (std::is_same_v<T, IndexRelF>) {
          return f;
        } else if constexpr (std::is_same_v<T, BinaryF>) {
          return mk::binary(detail::symmetric_conn(n.conn), symmetrize_formula(n.rhs, inv),
                            symmetrize_formula(n.lhs, inv));
        } else if constexpr (std::is_same_v<T, JoinF>) {
          return mk::join(n.tag, symmetrize_formula(n.rhs, inv), symmetrize_formula(n.lhs, inv));
        } else {
          return mk::make({QuantF{n.kind == Quant::Forall ? Quant::Exists : Quant::Forall, n.var, n.domain,
                                  symmetrize_formula(n.body, inv)}});
        }
      },
      f.node().v);
}

inline Slot symmetrize_slot(const Slot& s, const LiteralInvolution& inv) {
  if (!s.is_pair()) return Slot::single(symmetrize_formula(s.first, inv));
  return Slot::pair(symmetrize_formula(s.second, inv), *s.tag, symmetrize_formula(s.first, inv));
}

inline std::vector<Slot> symmetrize_side(const std::vector<Slot>& side, const LiteralInvolution& inv) {
  std::vector<Slot> out;
  out.reserve(side.size());
  for (auto it = side.rbegin(); it != side.rend(); ++it) out.push_back(symmetrize_slot(*it, inv));
  return out;
}

// Γ ⊢ Δ  ↦  Δˢ ⊢ Γˢ, slot order reversed.
inline Sequent symmetrize_sequent(const Sequent& s, const LiteralInvolution& inv) {
  return Sequent{symmetrize_side(s.right, inv), symmetrize_side(s.left, inv)};
}

// ---------------------------------------------------------------------------
// Table-driven dualities on the qubit dictionary

namespace detail {

inline bool atom_over(const Formula& f, const std::string& x) {
  auto a = as<AtomF>(f);
  return a && a->args.size() == 1 && a->args[0].is_var() && a->args[0].var_name() == x;
}

}  // namespace detail

inline Formula apply_duality(const Formula& f, Duality which) {
  auto unclassified = [&]() -> Formula {
    throw Error(ErrorKind::UnclassifiedLiteral, to_string(f) + " is outside the qubit dictionary");
  };
  if (auto a = as<AtomF>(f)) {
    if (!a->args.empty() && a->args.size() == 1 && detail::is_sharp_outcome(a->args[0]))
      return which == Duality::perp ? *detail::swap_sharp_atom(*a) : f;
    return unclassified();
  }
  if (auto q = as<QuantF>(f)) {
    if (!is_qubit_domain(q->domain)) return unclassified();
    if (detail::atom_over(q->body, q->var))
      return mk::make({QuantF{q->kind, q->var, *dual_domain(q->domain, which), q->body}});
    if (auto j = as<JoinF>(q->body)) {
      // Bell formulas behave like phase literals: both dualities fix them.
      bool phase = q->domain == kPlus || q->domain == kMinus;
      if (phase && detail::atom_over(j->lhs, q->var) && detail::atom_over(j->rhs, q->var)) return f;
    }
    return unclassified();
  }
  if (auto b = as<BinaryF>(f)) return mk::binary(b->conn, apply_duality(b->lhs, which), apply_duality(b->rhs, which));
  return unclassified();
}

}  // namespace symlog
