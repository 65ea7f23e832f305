#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symlog/error.hpp"

namespace symlog {

using Rational = boost::rational<std::int64_t>;

// ---------------------------------------------------------------------------
// Terms

struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

struct Const {
  std::string name;
  friend bool operator==(const Const&, const Const&) = default;
  friend auto operator<=>(const Const&, const Const&) = default;
};

// An (outcome, probability) pair; closed.
struct Outcome {
  std::string label;
  Rational prob;
  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend bool operator<(const Outcome& a, const Outcome& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.prob < b.prob;
  }
};

class Term {
 public:
  using Rep = std::variant<Var, Const, Outcome>;

  Term() : rep_(Var{""}) {}
  Term(Var v) : rep_(std::move(v)) {}
  Term(Const c) : rep_(std::move(c)) {}
  Term(Outcome o) : rep_(std::move(o)) {
    if (std::get<Outcome>(rep_).prob <= Rational(0) || std::get<Outcome>(rep_).prob > Rational(1))
      throw Error(ErrorKind::InvariantViolation, "outcome probability must lie in (0,1]");
  }

  const Rep& rep() const { return rep_; }
  bool is_var() const { return std::holds_alternative<Var>(rep_); }
  bool is_closed() const { return !is_var(); }
  const std::string& var_name() const { return std::get<Var>(rep_).name; }

  friend bool operator==(const Term& a, const Term& b) { return a.rep_ == b.rep_; }
  friend bool operator<(const Term& a, const Term& b) {
    if (a.rep_.index() != b.rep_.index()) return a.rep_.index() < b.rep_.index();
    return std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return x < std::get<T>(b.rep_);
        },
        a.rep_);
  }

 private:
  Rep rep_;
};

inline Term var(std::string name) { return Term(Var{std::move(name)}); }
inline Term cnst(std::string name) { return Term(Const{std::move(name)}); }
inline Term outcome(std::string label, Rational p) { return Term(Outcome{std::move(label), p}); }

// ---------------------------------------------------------------------------
// Indexes and correlation tags

struct Index {
  std::variant<std::string, unsigned> rep;  // IVar | IConst

  static Index ivar(std::string n) { return Index{std::move(n)}; }
  static Index iconst(unsigned v) { return Index{v}; }
  friend bool operator==(const Index&, const Index&) = default;
  friend bool operator<(const Index& a, const Index& b) { return a.rep < b.rep; }
};

enum class Corr { identical, opposite };

// ---------------------------------------------------------------------------
// Formulas

enum class Conn { And, Or, Times, Par, Imp, Excl };
enum class Quant { Forall, Exists };

class Formula;
struct Node;

class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  const Node& node() const { return *node_; }
  bool empty() const { return node_ == nullptr; }
  const Node* ptr() const { return node_.get(); }

 private:
  std::shared_ptr<const Node> node_;
};

struct AtomF {
  std::string pred;
  std::optional<Index> index;
  std::vector<Term> args;
};
struct MemberF {
  Term term;
  std::string domain;
};
struct DualMemberF {
  Term term;
  std::string domain;
  std::string duality;
};
struct EqF {
  Term lhs, rhs;
};
struct NeqF {
  Term lhs, rhs;
};
struct IndexRelF {
  Index lhs;
  Corr tag;
  Index rhs;
};
struct BinaryF {
  Conn conn;
  Formula lhs, rhs;
};
struct QuantF {
  Quant kind;
  std::string var;
  std::string domain;
  Formula body;
};
struct JoinF {
  Corr tag;
  Formula lhs, rhs;
};

struct Node {
  std::variant<AtomF, MemberF, DualMemberF, EqF, NeqF, IndexRelF, BinaryF, QuantF, JoinF> v;
};

template <class T>
const T* as(const Formula& f) {
  return std::get_if<T>(&f.node().v);
}

namespace mk {

inline Formula make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

inline Formula atom(std::string pred, std::vector<Term> args = {},
                    std::optional<Index> idx = std::nullopt) {
  return make({AtomF{std::move(pred), std::move(idx), std::move(args)}});
}
inline Formula member(Term t, std::string d) { return make({MemberF{std::move(t), std::move(d)}}); }
inline Formula dual_member(Term t, std::string d, std::string dual) {
  return make({DualMemberF{std::move(t), std::move(d), std::move(dual)}});
}
inline Formula eq(Term a, Term b) { return make({EqF{std::move(a), std::move(b)}}); }
inline Formula neq(Term a, Term b) { return make({NeqF{std::move(a), std::move(b)}}); }
inline Formula index_rel(Index i, Corr f, Index j) { return make({IndexRelF{std::move(i), f, std::move(j)}}); }
inline Formula binary(Conn c, Formula a, Formula b) { return make({BinaryF{c, std::move(a), std::move(b)}}); }
inline Formula conj(Formula a, Formula b) { return binary(Conn::And, std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return binary(Conn::Or, std::move(a), std::move(b)); }
inline Formula times(Formula a, Formula b) { return binary(Conn::Times, std::move(a), std::move(b)); }
inline Formula par(Formula a, Formula b) { return binary(Conn::Par, std::move(a), std::move(b)); }
inline Formula imp(Formula a, Formula b) { return binary(Conn::Imp, std::move(a), std::move(b)); }
inline Formula excl(Formula a, Formula b) { return binary(Conn::Excl, std::move(a), std::move(b)); }
inline Formula forall(std::string x, std::string d, Formula body) {
  return make({QuantF{Quant::Forall, std::move(x), std::move(d), std::move(body)}});
}
inline Formula exists(std::string x, std::string d, Formula body) {
  return make({QuantF{Quant::Exists, std::move(x), std::move(d), std::move(body)}});
}
inline Formula join(Corr f, Formula a, Formula b) { return make({JoinF{f, std::move(a), std::move(b)}}); }

}  // namespace mk

// ---------------------------------------------------------------------------
// Sequents

struct Slot {
  Formula first;
  std::optional<Corr> tag;  // set for a correlated pair A ,_f B
  Formula second;

  static Slot single(Formula f) { return Slot{std::move(f), std::nullopt, {}}; }
  static Slot pair(Formula a, Corr f, Formula b) { return Slot{std::move(a), f, std::move(b)}; }
  bool is_pair() const { return tag.has_value(); }
};

struct Sequent {
  std::vector<Slot> left;
  std::vector<Slot> right;
};

inline Sequent seq(std::vector<Formula> l, std::vector<Formula> r) {
  Sequent s;
  for (auto& f : l) s.left.push_back(Slot::single(std::move(f)));
  for (auto& f : r) s.right.push_back(Slot::single(std::move(f)));
  return s;
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace detail {

inline void free_vars_into(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.is_var() && !bound.count(t.var_name())) out.insert(t.var_name());
}

inline void free_vars_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          for (const auto& a : n.args) free_vars_into(a, bound, out);
        } else if constexpr (std::is_same_v<T, MemberF> || std::is_same_v<T, DualMemberF>) {
          free_vars_into(n.term, bound, out);
        } else if constexpr (std::is_same_v<T, EqF> || std::is_same_v<T, NeqF>) {
          free_vars_into(n.lhs, bound, out);
          free_vars_into(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, IndexRelF>) {
        } else if constexpr (std::is_same_v<T, BinaryF> || std::is_same_v<T, JoinF>) {
          free_vars_into(n.lhs, bound, out);
          free_vars_into(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, QuantF>) {
          bool fresh = bound.insert(n.var).second;
          free_vars_into(n.body, bound, out);
          if (fresh) bound.erase(n.var);
        }
      },
      f.node().v);
}

}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::free_vars_into(f, bound, out);
  return out;
}

inline std::set<std::string> free_vars(const Slot& s) {
  auto out = free_vars(s.first);
  if (s.is_pair()) out.merge(free_vars(s.second));
  return out;
}

inline std::set<std::string> free_vars(const std::vector<Slot>& side) {
  std::set<std::string> out;
  for (const auto& s : side) out.merge(free_vars(s));
  return out;
}

inline std::set<std::string> free_vars(const Sequent& s) {
  auto out = free_vars(s.left);
  out.merge(free_vars(s.right));
  return out;
}

// Every variable name occurring anywhere, bound or free.
inline void all_names(const Formula& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        auto term = [&](const Term& t) {
          if (t.is_var()) out.insert(t.var_name());
        };
        if constexpr (std::is_same_v<T, AtomF>) {
          for (const auto& a : n.args) term(a);
        } else if constexpr (std::is_same_v<T, MemberF> || std::is_same_v<T, DualMemberF>) {
          term(n.term);
        } else if constexpr (std::is_same_v<T, EqF> || std::is_same_v<T, NeqF>) {
          term(n.lhs);
          term(n.rhs);
        } else if constexpr (std::is_same_v<T, BinaryF> || std::is_same_v<T, JoinF>) {
          all_names(n.lhs, out);
          all_names(n.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantF>) {
          out.insert(n.var);
          all_names(n.body, out);
        }
      },
      f.node().v);
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    auto n = base + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

namespace detail {

inline Term subst_term(const Term& t, const std::string& x, const Term& by) {
  return (t.is_var() && t.var_name() == x) ? by : t;
}

}  // namespace detail

// Capture-avoiding replacement of free x by an arbitrary term. Kernel-internal;
// the public substitute() only admits closed terms.
inline Formula replace_var(const Formula& f, const std::string& x, const Term& by) {
  using detail::subst_term;
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          std::vector<Term> args;
          for (const auto& a : n.args) args.push_back(subst_term(a, x, by));
          return mk::atom(n.pred, std::move(args), n.index);
        } else if constexpr (std::is_same_v<T, MemberF>) {
          return mk::member(subst_term(n.term, x, by), n.domain);
        } else if constexpr (std::is_same_v<T, DualMemberF>) {
          return mk::dual_member(subst_term(n.term, x, by), n.domain, n.duality);
        } else if constexpr (std::is_same_v<T, EqF>) {
          return mk::eq(subst_term(n.lhs, x, by), subst_term(n.rhs, x, by));
        } else if constexpr (std::is_same_v<T, NeqF>) {
          return mk::neq(subst_term(n.lhs, x, by), subst_term(n.rhs, x, by));
        } else if constexpr (std::is_same_v<T, IndexRelF>) {
          return f;
        } else if constexpr (std::is_same_v<T, BinaryF>) {
          return mk::binary(n.conn, replace_var(n.lhs, x, by), replace_var(n.rhs, x, by));
        } else if constexpr (std::is_same_v<T, JoinF>) {
          return mk::join(n.tag, replace_var(n.lhs, x, by), replace_var(n.rhs, x, by));
        } else {
          if (n.var == x) return f;
          if (!free_vars(n.body).count(x)) return f;
          if (by.is_var() && by.var_name() == n.var) {
            std::set<std::string> avoid;
            all_names(n.body, avoid);
            avoid.insert(by.var_name());
            avoid.insert(x);
            auto y = fresh_name(n.var, avoid);
            auto body = replace_var(n.body, n.var, var(y));
            return mk::make({QuantF{n.kind, y, n.domain, replace_var(body, x, by)}});
          }
          return mk::make({QuantF{n.kind, n.var, n.domain, replace_var(n.body, x, by)}});
        }
      },
      f.node().v);
}

inline Slot replace_var(const Slot& s, const std::string& x, const Term& by) {
  Slot out = s;
  out.first = replace_var(s.first, x, by);
  if (s.is_pair()) out.second = replace_var(s.second, x, by);
  return out;
}

inline std::vector<Slot> replace_var(const std::vector<Slot>& side, const std::string& x, const Term& by) {
  std::vector<Slot> out;
  out.reserve(side.size());
  for (const auto& s : side) out.push_back(replace_var(s, x, by));
  return out;
}

inline Sequent replace_var(const Sequent& s, const std::string& x, const Term& by) {
  return Sequent{replace_var(s.left, x, by), replace_var(s.right, x, by)};
}

inline Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  if (!t.is_closed()) throw Error(ErrorKind::Substitution, "substitution requires a closed term");
  return replace_var(f, x, t);
}

// ---------------------------------------------------------------------------
// Equality

namespace detail {

using BoundMap = std::vector<std::pair<std::string, std::string>>;

inline bool term_alpha_eq(const Term& a, const Term& b, const BoundMap& m) {
  if (a.is_var() && b.is_var()) {
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      bool la = it->first == a.var_name();
      bool lb = it->second == b.var_name();
      if (la || lb) return la && lb;
    }
    return a.var_name() == b.var_name();
  }
  return a == b;
}

inline bool alpha_eq(const Formula& a, const Formula& b, BoundMap& m) {
  if (a.ptr() == b.ptr() && m.empty()) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node().v);
        if constexpr (std::is_same_v<T, AtomF>) {
          if (x.pred != y.pred || x.index != y.index || x.args.size() != y.args.size()) return false;
          for (size_t i = 0; i < x.args.size(); ++i)
            if (!term_alpha_eq(x.args[i], y.args[i], m)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, MemberF>) {
          return x.domain == y.domain && term_alpha_eq(x.term, y.term, m);
        } else if constexpr (std::is_same_v<T, DualMemberF>) {
          return x.domain == y.domain && x.duality == y.duality && term_alpha_eq(x.term, y.term, m);
        } else if constexpr (std::is_same_v<T, EqF> || std::is_same_v<T, NeqF>) {
          return term_alpha_eq(x.lhs, y.lhs, m) && term_alpha_eq(x.rhs, y.rhs, m);
        } else if constexpr (std::is_same_v<T, IndexRelF>) {
          return x.lhs == y.lhs && x.tag == y.tag && x.rhs == y.rhs;
        } else if constexpr (std::is_same_v<T, BinaryF>) {
          return x.conn == y.conn && alpha_eq(x.lhs, y.lhs, m) && alpha_eq(x.rhs, y.rhs, m);
        } else if constexpr (std::is_same_v<T, JoinF>) {
          return x.tag == y.tag && alpha_eq(x.lhs, y.lhs, m) && alpha_eq(x.rhs, y.rhs, m);
        } else {
          if (x.kind != y.kind || x.domain != y.domain) return false;
          m.emplace_back(x.var, y.var);
          bool r = alpha_eq(x.body, y.body, m);
          m.pop_back();
          return r;
        }
      },
      a.node().v);
}

inline bool syntactic_eq(const Formula& a, const Formula& b) {
  if (a.ptr() == b.ptr()) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node().v);
        if constexpr (std::is_same_v<T, BinaryF>) {
          return x.conn == y.conn && syntactic_eq(x.lhs, y.lhs) && syntactic_eq(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, JoinF>) {
          return x.tag == y.tag && syntactic_eq(x.lhs, y.lhs) && syntactic_eq(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, QuantF>) {
          return x.kind == y.kind && x.var == y.var && x.domain == y.domain && syntactic_eq(x.body, y.body);
        } else {
          BoundMap m;
          return alpha_eq(a, b, m);
        }
      },
      a.node().v);
}

}  // namespace detail

// Structural equality up to renaming of bound variables.
inline bool formula_equal(const Formula& a, const Formula& b) {
  detail::BoundMap m;
  return detail::alpha_eq(a, b, m);
}

// Exact syntactic identity, bound variable names included.
inline bool identical(const Formula& a, const Formula& b) { return detail::syntactic_eq(a, b); }

inline bool slot_equal(const Slot& a, const Slot& b) {
  if (a.tag != b.tag) return false;
  if (!formula_equal(a.first, b.first)) return false;
  return !a.is_pair() || formula_equal(a.second, b.second);
}

inline bool identical(const Slot& a, const Slot& b) {
  if (a.tag != b.tag) return false;
  if (!identical(a.first, b.first)) return false;
  return !a.is_pair() || identical(a.second, b.second);
}

inline bool identical(const Sequent& a, const Sequent& b) {
  if (a.left.size() != b.left.size() || a.right.size() != b.right.size()) return false;
  for (size_t i = 0; i < a.left.size(); ++i)
    if (!identical(a.left[i], b.left[i])) return false;
  for (size_t i = 0; i < a.right.size(); ++i)
    if (!identical(a.right[i], b.right[i])) return false;
  return true;
}

// Multiset equality of two sides, slots compared up to alpha-equivalence.
inline bool same_side(const std::vector<Slot>& a, const std::vector<Slot>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& s : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && slot_equal(s, b[j])) {
        used[j] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline bool same_sequent(const Sequent& a, const Sequent& b) {
  return same_side(a.left, b.left) && same_side(a.right, b.right);
}

// ---------------------------------------------------------------------------
// Indexes

inline void atom_indexes(const Formula& f, std::vector<Index>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          if (n.index) out.push_back(*n.index);
        } else if constexpr (std::is_same_v<T, BinaryF> || std::is_same_v<T, JoinF>) {
          atom_indexes(n.lhs, out);
          atom_indexes(n.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantF>) {
          atom_indexes(n.body, out);
        }
      },
      f.node().v);
}

// The index carried by a formula: defined when every indexed atom in it
// carries the same index.
inline std::optional<Index> index_of(const Formula& f) {
  std::vector<Index> idx;
  atom_indexes(f, idx);
  if (idx.empty()) return std::nullopt;
  for (const auto& i : idx)
    if (!(i == idx.front())) return std::nullopt;
  return idx.front();
}

inline Formula reindex(const Formula& f, const Index& from, const Index& to) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          if (n.index && *n.index == from) return mk::atom(n.pred, n.args, to);
          return f;
        } else if constexpr (std::is_same_v<T, BinaryF>) {
          return mk::binary(n.conn, reindex(n.lhs, from, to), reindex(n.rhs, from, to));
        } else if constexpr (std::is_same_v<T, JoinF>) {
          return mk::join(n.tag, reindex(n.lhs, from, to), reindex(n.rhs, from, to));
        } else if constexpr (std::is_same_v<T, QuantF>) {
          return mk::make({QuantF{n.kind, n.var, n.domain, reindex(n.body, from, to)}});
        } else {
          return f;
        }
      },
      f.node().v);
}

// Indexes mentioned by a sequent: atom indexes and both ends of index relations.
inline std::set<Index> sequent_indexes(const Sequent& s) {
  std::set<Index> out;
  auto add = [&](const Formula& f) {
    std::vector<Index> v;
    atom_indexes(f, v);
    out.insert(v.begin(), v.end());
    if (auto r = as<IndexRelF>(f)) {
      out.insert(r->lhs);
      out.insert(r->rhs);
    }
  };
  for (const auto* side : {&s.left, &s.right})
    for (const auto& sl : *side) {
      add(sl.first);
      if (sl.is_pair()) add(sl.second);
    }
  return out;
}

}  // namespace symlog
