#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "symlog/formula.hpp"
#include "symlog/printer.hpp"

namespace symlog {

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::set<std::string> expected, std::string found)
      : Error(ErrorKind::Parse, render(line, column, expected, found)),
        line_(line), column_(column), expected_(std::move(expected)), found_(std::move(found)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_, column_;
  std::set<std::string> expected_;
  std::string found_;

  static std::string render(int line, int column, const std::set<std::string>& expected, const std::string& found) {
    std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected ";
    if (expected.size() > 1) s += "one of ";
    bool first = true;
    for (const auto& e : expected) {
      s += (first ? "" : ", ") + e;
      first = false;
    }
    return s + ", found " + found;
  }
};

namespace parse_detail {

enum class Tok { Ident, Number, Punct, String, End };

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\''; }

// Tokenizes one line. Multi-character punctuation is matched longest first.
inline std::vector<Token> lex_line(const std::string& s, int line_no) {
  static const std::vector<std::string> puncts = {"|-", "/=", "\\/", "(x)", "->", "<-", ",_i", ",_o", ")^", "~i", "~o",
                                                  "(",  ")",  ",",   ".",   "=",  "&",  "*",   "[",   "]",   ";",  "{",
                                                  "}",  ":",  "_",   "/"};
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (static_cast<unsigned char>(c) >= 0x80)
      throw ParseError(line_no, col, {"ASCII input"}, "a non-ASCII character");
    if (ident_start(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string w = s.substr(i, j - i);
      // join_i / join_o are single operator tokens
      if (w == "join" && j + 1 < s.size() && s[j] == '_' && (s[j + 1] == 'i' || s[j + 1] == 'o') &&
          (j + 2 == s.size() || !ident_char(s[j + 2]))) {
        out.push_back({Tok::Punct, w + s.substr(j, 2), col});
        i = j + 2;
        continue;
      }
      // hyphenated flag words such as collapse-demo
      while (j + 1 < s.size() && s[j] == '-' && ident_start(s[j + 1])) {
        size_t k = j + 1;
        while (k < s.size() && ident_char(s[k])) ++k;
        j = k;
      }
      out.push_back({Tok::Ident, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (c == '"') {
      size_t j = s.find('"', i + 1);
      if (j == std::string::npos) throw ParseError(line_no, col, {"closing quote"}, "end of line");
      out.push_back({Tok::String, s.substr(i + 1, j - i - 1), col});
      i = j + 1;
      continue;
    }
    bool matched = false;
    for (const auto& p : puncts) {
      if (s.compare(i, p.size(), p) == 0) {
        // "~i" / "~o" must not swallow a longer identifier
        if ((p == "~i" || p == "~o") && i + 2 < s.size() && ident_char(s[i + 2])) continue;
        if ((p == ",_i" || p == ",_o") && i + 3 < s.size() && ident_char(s[i + 3])) continue;
        out.push_back({Tok::Punct, p, col});
        i += p.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(line_no, col, {"a token"}, std::string("'") + c + "'");
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

inline bool is_keyword(const std::string& w) {
  return w == "forall" || w == "exists" || w == "in" || w == "by";
}

// Recursive descent over one line's tokens with backtracking. Failures
// record the furthest position reached and what was expected there.
class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line_no, const std::set<std::string>& consts)
      : toks_(std::move(toks)), line_(line_no), consts_(consts) {}

  size_t pos = 0;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }

  bool is(const std::string& punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool is_word(const std::string& w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& what) {
    note(what);
    throw_furthest();
  }

  void note(const std::string& what) {
    if (pos > far_) {
      far_ = pos;
      expected_.clear();
    }
    if (pos == far_) expected_.insert(what);
  }

  [[noreturn]] void throw_furthest() {
    const auto& t = toks_[std::min(far_, toks_.size() - 1)];
    std::string found = t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
    throw ParseError(line_, t.column, expected_, found);
  }

  void expect(const std::string& punct) {
    if (!is(punct)) fail("'" + punct + "'");
    ++pos;
  }

  void expect_word(const std::string& w) {
    if (!is_word(w)) fail("'" + w + "'");
    ++pos;
  }

  std::string ident(const std::string& what = "identifier") {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail(what);
    return toks_[pos++].text;
  }

  // True when the next token follows the previous one with no space between.
  bool adjacent() const {
    if (pos == 0) return false;
    const auto& a = toks_[pos - 1];
    return peek().column == a.column + static_cast<int>(a.text.size());
  }

  // Item names may contain underscores: imp_reversal, C1_forward.
  std::string name(const std::string& what) {
    auto out = ident(what);
    while (is("_") && peek(1).kind != Tok::End && peek(1).kind != Tok::Punct && peek(1).kind != Tok::String) {
      ++pos;
      out += "_" + toks_[pos++].text;
    }
    return out;
  }

  std::string string_lit() {
    if (peek().kind != Tok::String) fail("string");
    return toks_[pos++].text;
  }

  unsigned number() {
    if (peek().kind != Tok::Number) fail("number");
    auto t = toks_[pos++].text;
    if (t.size() > 9) fail("small number");
    return static_cast<unsigned>(std::stoul(t));
  }

  Rational rational() {
    auto n = number();
    if (is("/")) {
      ++pos;
      auto d = number();
      if (d == 0) fail("non-zero denominator");
      return Rational(n, d);
    }
    return Rational(n);
  }

  Term term() {
    if (is("(")) {
      auto save = pos;
      ++pos;
      if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
        auto label = toks_[pos++].text;
        if (is(",")) {
          ++pos;
          auto p = rational();
          expect(")");
          if (p <= Rational(0) || p > Rational(1)) {
            pos = save;
            fail("probability in (0,1]");
          }
          return outcome(label, p);
        }
      }
      pos = save;
      note("outcome term");
      fail("term");
    }
    auto name = ident("term");
    return consts_.count(name) ? cnst(name) : var(name);
  }

  Index index() {
    if (peek().kind == Tok::Number) return Index::iconst(number());
    return Index::ivar(ident("index"));
  }

  Formula formula() {
    if (is_word("forall") || is_word("exists")) return quantifier();
    Formula lhs = primary();
    std::string op;
    while (auto c = binary_op()) {
      if (!op.empty() && *c != op) fail("'" + op + "' (mixing operators needs parentheses)");
      op = *c;
      ++pos;
      Formula rhs = (is_word("forall") || is_word("exists")) ? quantifier() : primary();
      lhs = combine(op, lhs, rhs);
    }
    return lhs;
  }

  Sequent sequent() {
    Sequent s;
    if (!is("|-")) s.left = slots();
    expect("|-");
    if (!at_end() && !is("by") && !is_word("by")) s.right = slots();
    return s;
  }

  std::vector<Slot> slots() {
    std::vector<Slot> out;
    out.push_back(slot());
    while (is(",")) {
      ++pos;
      out.push_back(slot());
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  int line_;
  const std::set<std::string>& consts_;
  size_t far_ = 0;
  std::set<std::string> expected_;

  Slot slot() {
    auto a = formula();
    if (is(",_i") || is(",_o")) {
      auto tag = peek().text == ",_i" ? Corr::identical : Corr::opposite;
      ++pos;
      return Slot::pair(a, tag, formula());
    }
    return Slot::single(a);
  }

  std::optional<std::string> binary_op() {
    static const std::set<std::string> ops = {"&", "\\/", "(x)", "*", "->", "<-", "join_i", "join_o"};
    if (peek().kind == Tok::Punct && ops.count(peek().text)) return peek().text;
    note("operator");
    return std::nullopt;
  }

  static Formula combine(const std::string& op, const Formula& a, const Formula& b) {
    if (op == "&") return mk::conj(a, b);
    if (op == "\\/") return mk::disj(a, b);
    if (op == "(x)") return mk::times(a, b);
    if (op == "*") return mk::par(a, b);
    if (op == "->") return mk::imp(a, b);
    if (op == "<-") return mk::excl(a, b);
    return mk::join(op == "join_i" ? Corr::identical : Corr::opposite, a, b);
  }

  Formula quantifier() {
    bool all = is_word("forall");
    ++pos;
    auto x = ident("bound variable");
    if (consts_.count(x)) fail("variable (" + x + " is a constant)");
    expect_word("in");
    auto d = ident("domain");
    expect(".");
    auto body = formula();
    return all ? mk::forall(x, d, body) : mk::exists(x, d, body);
  }

  // term-led atoms: t in D, s = t, s /= t
  std::optional<Formula> term_atom() {
    auto save = pos;
    try {
      auto t = term();
      if (is_word("in")) {
        ++pos;
        return mk::member(t, ident("domain"));
      }
      if (is("=")) {
        ++pos;
        return mk::eq(t, term());
      }
      if (is("/=")) {
        ++pos;
        return mk::neq(t, term());
      }
      note("'in', '=' or '/='");
    } catch (const ParseError&) {
    }
    pos = save;
    return std::nullopt;
  }

  std::optional<Formula> index_relation() {
    auto save = pos;
    if (peek().kind == Tok::Number || (peek().kind == Tok::Ident && !is_keyword(peek().text))) {
      if (peek(1).kind == Tok::Punct && (peek(1).text == "~i" || peek(1).text == "~o")) {
        auto i = index();
        auto tag = peek().text == "~i" ? Corr::identical : Corr::opposite;
        ++pos;
        return mk::index_rel(i, tag, index());
      }
    }
    pos = save;
    return std::nullopt;
  }

  std::optional<Formula> dual_member() {
    auto save = pos;
    try {
      expect("(");
      auto t = term();
      expect_word("in");
      auto d = ident("domain");
      expect(")^");
      return mk::dual_member(t, d, ident("duality name"));
    } catch (const ParseError&) {
    }
    pos = save;
    return std::nullopt;
  }

  Formula primary() {
    if (auto r = index_relation()) return *r;
    if (auto a = term_atom()) return *a;
    if (is("(x)")) {
      ++pos;
      return mk::atom("x");
    }
    if (is("(")) {
      if (auto d = dual_member()) return *d;
      ++pos;
      auto f = formula();
      expect(")");
      return f;
    }
    // predicate atom
    auto pred = ident("formula");
    std::optional<Index> idx;
    if (is("_")) {
      ++pos;
      idx = index();
    }
    std::vector<Term> args;
    if (is("(x)") && adjacent()) {  // A(x): an argument list, not the spaced tensor
      ++pos;
      args.push_back(consts_.count("x") ? cnst("x") : var("x"));
    } else if (is("(")) {
      ++pos;
      args.push_back(term());
      while (is(",")) {
        ++pos;
        args.push_back(term());
      }
      expect(")");
    }
    return mk::atom(pred, args, idx);
  }
};

}  // namespace parse_detail

inline Formula parse_formula(const std::string& text, const std::set<std::string>& consts = {}) {
  parse_detail::LineParser p(parse_detail::lex_line(text, 1), 1, consts);
  auto f = p.formula();
  if (!p.at_end()) p.fail("end of input");
  return f;
}

inline Sequent parse_sequent(const std::string& text, const std::set<std::string>& consts = {}) {
  parse_detail::LineParser p(parse_detail::lex_line(text, 1), 1, consts);
  auto s = p.sequent();
  if (!p.at_end()) p.fail("end of input");
  return s;
}

}  // namespace symlog
