#pragma once

#include <sstream>
#include <string>

#include "symlog/formula.hpp"

namespace symlog {

enum class Style { ascii, unicode };

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string corr_suffix(Corr c) { return c == Corr::identical ? "i" : "o"; }

namespace detail {

inline std::string uni_label(const std::string& l) {
  if (l == "down") return "↓";
  if (l == "up") return "↑";
  return l;
}

inline std::string uni_domain(const std::string& d) {
  if (d == "Ddown") return "D↓";
  if (d == "Dup") return "D↑";
  if (d == "Dplus") return "D₊";
  if (d == "Dminus") return "D₋";
  return d;
}

inline std::string domain_name(const std::string& d, Style st) {
  return st == Style::unicode ? uni_domain(d) : d;
}

}  // namespace detail

inline std::string to_string(const Term& t, Style st = Style::ascii) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Outcome>) {
          auto label = st == Style::unicode ? detail::uni_label(x.label) : x.label;
          return "(" + label + "," + to_string(x.prob) + ")";
        } else {
          return x.name;
        }
      },
      t.rep());
}

inline std::string to_string(const Index& i) {
  if (auto n = std::get_if<unsigned>(&i.rep)) return std::to_string(*n);
  return std::get<std::string>(i.rep);
}

inline const char* conn_symbol(Conn c, Style st) {
  bool u = st == Style::unicode;
  switch (c) {
    case Conn::And: return "&";
    case Conn::Or: return u ? "∨" : "\\/";
    case Conn::Times: return u ? "⊗" : "(x)";
    case Conn::Par: return u ? "∗" : "*";
    case Conn::Imp: return u ? "→" : "->";
    case Conn::Excl: return u ? "←" : "<-";
  }
  return "?";
}

inline std::string to_string(const Formula& f, Style st = Style::ascii);

namespace detail {

inline bool needs_parens(const Formula& f) {
  return as<BinaryF>(f) || as<JoinF>(f) || as<QuantF>(f);
}

inline std::string operand(const Formula& f, Style st) {
  auto s = to_string(f, st);
  return needs_parens(f) ? "(" + s + ")" : s;
}

}  // namespace detail

inline std::string to_string(const Formula& f, Style st) {
  bool u = st == Style::unicode;
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          std::string s = n.pred;
          if (n.index) s += "_" + to_string(*n.index);
          if (!n.args.empty()) {
            s += "(";
            for (size_t i = 0; i < n.args.size(); ++i) {
              if (i) s += ", ";
              s += to_string(n.args[i], st);
            }
            s += ")";
          }
          return s;
        } else if constexpr (std::is_same_v<T, MemberF>) {
          return to_string(n.term, st) + (u ? " ∈ " : " in ") + detail::domain_name(n.domain, st);
        } else if constexpr (std::is_same_v<T, DualMemberF>) {
          return "(" + to_string(n.term, st) + (u ? " ∈ " : " in ") + detail::domain_name(n.domain, st) + ")^" +
                 n.duality;
        } else if constexpr (std::is_same_v<T, EqF>) {
          return to_string(n.lhs, st) + " = " + to_string(n.rhs, st);
        } else if constexpr (std::is_same_v<T, NeqF>) {
          return to_string(n.lhs, st) + (u ? " ≠ " : " /= ") + to_string(n.rhs, st);
        } else if constexpr (std::is_same_v<T, IndexRelF>) {
          return to_string(n.lhs) + (u ? " ∼" : " ~") + corr_suffix(n.tag) + " " + to_string(n.rhs);
        } else if constexpr (std::is_same_v<T, BinaryF>) {
          return detail::operand(n.lhs, st) + " " + conn_symbol(n.conn, st) + " " + detail::operand(n.rhs, st);
        } else if constexpr (std::is_same_v<T, JoinF>) {
          return detail::operand(n.lhs, st) + (u ? " ⋈_" : " join_") + corr_suffix(n.tag) + " " +
                 detail::operand(n.rhs, st);
        } else {
          const char* q = n.kind == Quant::Forall ? (u ? "∀" : "forall ") : (u ? "∃" : "exists ");
          return std::string(q) + n.var + (u ? " ∈ " : " in ") + detail::domain_name(n.domain, st) + " . " +
                 to_string(n.body, st);
        }
      },
      f.node().v);
}

inline std::string to_string(const Slot& s, Style st = Style::ascii) {
  if (!s.is_pair()) return to_string(s.first, st);
  return to_string(s.first, st) + " ,_" + corr_suffix(*s.tag) + " " + to_string(s.second, st);
}

inline std::string to_string(const std::vector<Slot>& side, Style st = Style::ascii) {
  std::string out;
  for (size_t i = 0; i < side.size(); ++i) {
    if (i) out += ", ";
    out += to_string(side[i], st);
  }
  return out;
}

inline std::string to_string(const Sequent& s, Style st = Style::ascii) {
  std::string turn = st == Style::unicode ? "⊢" : "|-";
  std::string out = s.left.empty() ? turn : to_string(s.left, st) + " " + turn;
  if (!s.right.empty()) out += " " + to_string(s.right, st);
  return out;
}

}  // namespace symlog
