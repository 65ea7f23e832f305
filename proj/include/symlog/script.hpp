#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "symlog/kernel.hpp"
#include "symlog/parser.hpp"

namespace symlog {

// ---------------------------------------------------------------------------
// Script AST

struct StandardDecl {};
struct ConstDecl {
  std::vector<std::string> names;
};
struct ConfigDecl {
  CalculusConfig cfg;
  bool collapse_demo = false;
};
struct SequentDecl {
  std::string name;
  Sequent sequent;
};
struct ProofDecl {
  std::string name;
  ProofNode proof;
};

using Decl = std::variant<StandardDecl, DomainRecord, ConstDecl, ConfigDecl, SequentDecl, ProofDecl>;

struct Script {
  std::vector<Decl> decls;
};

// ---------------------------------------------------------------------------
// Printing

inline std::string to_string(const Params& p) {
  std::vector<std::string> parts;
  if (p.formula) parts.push_back("formula=" + to_string(*p.formula));
  if (p.term) parts.push_back("term=" + to_string(*p.term));
  if (p.var) parts.push_back("var=" + *p.var);
  if (p.domain) parts.push_back("domain=" + *p.domain);
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return "[" + out + "]";
}

inline void print_proof_lines(const ProofNode& n, int indent, std::string& out, Style st = Style::ascii) {
  out += std::string(indent, ' ') + to_string(n.conclusion, st) + " by " + n.rule;
  if (!n.params.empty()) out += " " + to_string(n.params);
  out += "\n";
  for (const auto& p : n.premises) print_proof_lines(p, indent + 2, out, st);
}

inline std::string to_string(const ProofNode& n, Style st = Style::ascii) {
  std::string out;
  print_proof_lines(n, 0, out, st);
  return out;
}

inline std::string to_string(const DomainRecord& r) {
  std::string s = "domain " + r.name + " = {";
  for (size_t i = 0; i < r.entries.size(); ++i) s += (i ? ", " : "") + to_string(r.entries[i]);
  s += "}";
  if (r.focused) s += " focused";
  if (r.virtual_singleton) s += " virtual";
  if (r.duality) s += " duality " + *r.duality;
  if (r.substitution_allowed) s += " substitution";
  if (r.inhabited) s += " inhabited";
  return s;
}

inline std::string to_string(const ConfigDecl& c) {
  std::string s = "config {";
  if (c.cfg.left_contexts) s += " left";
  if (c.cfg.right_contexts) s += " right";
  if (c.cfg.weakening) s += " weakening";
  if (c.cfg.cut) s += " cut";
  if (!c.cfg.substitution_domains.empty()) {
    s += " subst(";
    bool first = true;
    for (const auto& d : c.cfg.substitution_domains) {
      s += (first ? "" : ", ") + d;
      first = false;
    }
    s += ")";
  }
  if (!c.cfg.d_axiom_domains.empty()) {
    s += " daxiom(";
    bool first = true;
    for (const auto& [d, dual] : c.cfg.d_axiom_domains) {
      s += (first ? "" : ", ") + d + ":" + dual;
      first = false;
    }
    s += ")";
  }
  if (c.collapse_demo) s += " collapse-demo";
  return s + " }";
}

inline std::string print_script(const Script& sc) {
  std::string out;
  for (const auto& d : sc.decls) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, StandardDecl>) {
            out += "domains standard\n";
          } else if constexpr (std::is_same_v<T, DomainRecord>) {
            out += to_string(x) + "\n";
          } else if constexpr (std::is_same_v<T, ConstDecl>) {
            out += "const";
            for (size_t i = 0; i < x.names.size(); ++i) out += (i ? ", " : " ") + x.names[i];
            out += "\n";
          } else if constexpr (std::is_same_v<T, ConfigDecl>) {
            out += to_string(x) + "\n";
          } else if constexpr (std::is_same_v<T, SequentDecl>) {
            out += "sequent " + x.name + " : " + to_string(x.sequent) + "\n";
          } else {
            out += "proof " + x.name + ":\n";
            print_proof_lines(x.proof, 2, out);
          }
        },
        d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structural equality

inline bool identical(const ProofNode& a, const ProofNode& b);

inline bool identical(const Decl& a, const Decl& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, StandardDecl>) {
          return true;
        } else if constexpr (std::is_same_v<T, DomainRecord>) {
          return x.name == y.name && x.entries == y.entries && x.focused == y.focused &&
                 x.virtual_singleton == y.virtual_singleton && x.duality == y.duality &&
                 x.substitution_allowed == y.substitution_allowed && x.inhabited == y.inhabited;
        } else if constexpr (std::is_same_v<T, ConstDecl>) {
          return x.names == y.names;
        } else if constexpr (std::is_same_v<T, ConfigDecl>) {
          return x.collapse_demo == y.collapse_demo && x.cfg.left_contexts == y.cfg.left_contexts &&
                 x.cfg.right_contexts == y.cfg.right_contexts && x.cfg.weakening == y.cfg.weakening &&
                 x.cfg.cut == y.cfg.cut && x.cfg.substitution_domains == y.cfg.substitution_domains &&
                 x.cfg.d_axiom_domains == y.cfg.d_axiom_domains;
        } else if constexpr (std::is_same_v<T, SequentDecl>) {
          return x.name == y.name && identical(x.sequent, y.sequent);
        } else {
          return x.name == y.name && identical(x.proof, y.proof);
        }
      },
      a);
}

inline bool identical(const Script& a, const Script& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i)
    if (!identical(a.decls[i], b.decls[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace parse_detail {

struct Line {
  int no;
  int indent;
  std::string text;
};

inline std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  int no = 0;
  while (std::getline(in, s)) {
    ++no;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    size_t ind = 0;
    while (ind < s.size() && s[ind] == ' ') ++ind;
    if (ind < s.size() && s[ind] == '\t') throw ParseError(no, static_cast<int>(ind) + 1, {"spaces"}, "a tab");
    if (ind == s.size() || s[ind] == '#') continue;
    out.push_back({no, static_cast<int>(ind), s});
  }
  return out;
}

class ScriptParser {
 public:
  explicit ScriptParser(const std::string& text) : lines_(split_lines(text)) {}

  Script run() {
    Script sc;
    while (i_ < lines_.size()) {
      const auto& ln = lines_[i_];
      if (ln.indent != 0) throw ParseError(ln.no, ln.indent + 1, {"declaration at column 1"}, "indented line");
      LineParser p(lex_line(ln.text, ln.no), ln.no, consts_);
      sc.decls.push_back(declaration(p, ln));
    }
    return sc;
  }

 private:
  std::vector<Line> lines_;
  size_t i_ = 0;
  std::set<std::string> consts_;
  std::set<std::string> sequent_names_, proof_names_;
  std::set<std::string> domains_;

  static void finish(LineParser& p) {
    if (!p.at_end()) p.fail("end of line");
  }

  // Names are unique per kind; a proof may share the name of the sequent it proves.
  void claim_name(LineParser& p, std::set<std::string>& names, const std::string& name, size_t at) {
    if (!names.insert(name).second) {
      p.pos = at;
      p.fail("unused item name (" + name + " is taken)");
    }
  }

  Decl declaration(LineParser& p, const Line& ln) {
    auto kw_at = p.pos;
    auto kw = p.ident("declaration keyword");
    if (kw == "domains") {
      p.expect_word("standard");
      finish(p);
      ++i_;
      return StandardDecl{};
    }
    if (kw == "domain") {
      auto d = domain(p);
      ++i_;
      return d;
    }
    if (kw == "const") {
      ConstDecl c;
      do {
        if (!c.names.empty()) p.expect(",");
        auto n = p.ident("constant name");
        if (consts_.count(n)) p.fail("new constant name");
        consts_.insert(n);
        c.names.push_back(n);
      } while (p.is(","));
      finish(p);
      ++i_;
      return c;
    }
    if (kw == "config") {
      auto c = config(p);
      ++i_;
      return c;
    }
    if (kw == "sequent") {
      auto at = p.pos;
      auto name = p.name("sequent name");
      claim_name(p, sequent_names_, name, at);
      p.expect(":");
      auto s = p.sequent();
      finish(p);
      ++i_;
      return SequentDecl{name, s};
    }
    if (kw == "proof") {
      auto at = p.pos;
      auto name = p.name("proof name");
      claim_name(p, proof_names_, name, at);
      p.expect(":");
      finish(p);
      ++i_;
      if (i_ >= lines_.size() || lines_[i_].indent != 2)
        throw ParseError(i_ < lines_.size() ? lines_[i_].no : ln.no + 1, 1, {"proof line indented by 2"},
                         i_ < lines_.size() ? "indent " + std::to_string(lines_[i_].indent) : "end of input");
      return ProofDecl{name, proof_node(2)};
    }
    p.pos = kw_at;
    p.fail("'domains', 'domain', 'const', 'config', 'sequent' or 'proof'");
  }

  DomainRecord domain(LineParser& p) {
    DomainRecord r;
    r.name = p.ident("domain name");
    if (domains_.count(r.name)) p.fail("new domain name");
    p.expect("=");
    p.expect("{");
    if (!p.is("}")) {
      r.entries.push_back(p.term());
      while (p.is(",")) {
        ++p.pos;
        r.entries.push_back(p.term());
      }
    }
    p.expect("}");
    while (!p.at_end()) {
      auto flag = p.ident("domain flag");
      if (flag == "focused") r.focused = true;
      else if (flag == "virtual") r.virtual_singleton = true;
      else if (flag == "duality") r.duality = p.ident("duality name");
      else if (flag == "substitution") r.substitution_allowed = true;
      else if (flag == "inhabited") r.inhabited = true;
      else {
        --p.pos;
        p.fail("'focused', 'virtual', 'duality', 'substitution' or 'inhabited'");
      }
    }
    domains_.insert(r.name);
    return r;
  }

  ConfigDecl config(LineParser& p) {
    ConfigDecl c;
    p.expect("{");
    while (!p.is("}")) {
      auto flag = p.ident("config flag");
      if (flag == "left") c.cfg.left_contexts = true;
      else if (flag == "right") c.cfg.right_contexts = true;
      else if (flag == "weakening") c.cfg.weakening = true;
      else if (flag == "cut") c.cfg.cut = true;
      else if (flag == "collapse-demo") c.collapse_demo = true;
      else if (flag == "subst") {
        p.expect("(");
        do {
          if (p.is(",")) ++p.pos;
          c.cfg.substitution_domains.insert(p.ident("domain"));
        } while (p.is(","));
        p.expect(")");
      } else if (flag == "daxiom") {
        p.expect("(");
        do {
          if (p.is(",")) ++p.pos;
          auto d = p.ident("domain");
          p.expect(":");
          c.cfg.d_axiom_domains.insert({d, p.ident("duality name")});
        } while (p.is(","));
        p.expect(")");
      } else {
        --p.pos;
        p.fail("'left', 'right', 'weakening', 'cut', 'subst', 'daxiom' or 'collapse-demo'");
      }
    }
    p.expect("}");
    finish(p);
    return c;
  }

  Params params(LineParser& p) {
    Params out;
    p.expect("[");
    while (!p.is("]")) {
      if (!out.empty()) p.expect(";");
      auto key_at = p.pos;
      auto key = p.ident("parameter key");
      p.expect("=");
      auto dup = [&](bool set) {
        if (set) {
          p.pos = key_at;
          p.fail("a parameter key not given before");
        }
      };
      if (key == "formula") dup(out.formula.has_value()), out.formula = p.formula();
      else if (key == "term") dup(out.term.has_value()), out.term = p.term();
      else if (key == "var") dup(out.var.has_value()), out.var = p.ident("variable");
      else if (key == "domain") dup(out.domain.has_value()), out.domain = p.ident("domain");
      else {
        p.pos = key_at;
        p.fail("'formula', 'term', 'var' or 'domain'");
      }
    }
    p.expect("]");
    return out;
  }

  ProofNode proof_node(int indent) {
    const auto& ln = lines_[i_];
    LineParser p(lex_line(ln.text, ln.no), ln.no, consts_);
    ProofNode n;
    n.conclusion = p.sequent();
    p.expect_word("by");
    n.rule = p.ident("rule name");
    if (!find_rule(n.rule) && !is_macro(n.rule)) {
      --p.pos;
      p.fail("a known rule name");
    }
    if (p.is("[")) n.params = params(p);
    finish(p);
    ++i_;
    while (i_ < lines_.size() && lines_[i_].indent > indent) {
      if (lines_[i_].indent != indent + 2)
        throw ParseError(lines_[i_].no, lines_[i_].indent + 1, {"indent " + std::to_string(indent + 2)},
                         "indent " + std::to_string(lines_[i_].indent));
      n.premises.push_back(proof_node(indent + 2));
    }
    return n;
  }
};

}  // namespace parse_detail

inline Script parse_script(const std::string& text) { return parse_detail::ScriptParser(text).run(); }

inline Script load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

// ---------------------------------------------------------------------------
// Environment: the registry, config and named items a script declares

struct Environment {
  Registry registry;
  std::optional<CalculusConfig> config;
  std::vector<SequentDecl> sequents;
  std::vector<ProofDecl> proofs;

  const Sequent* sequent(const std::string& name) const {
    for (const auto& s : sequents)
      if (s.name == name) return &s.sequent;
    for (const auto& p : proofs)
      if (p.name == name) return &p.proof.conclusion;
    return nullptr;
  }

  const ProofNode* proof(const std::string& name) const {
    for (const auto& p : proofs)
      if (p.name == name) return &p.proof;
    return nullptr;
  }
};

namespace script_detail {

inline void proof_domains(const ProofNode& n, std::set<std::string>& out) {
  auto s = kernel_detail::sequent_domains(n.conclusion);
  out.insert(s.begin(), s.end());
  if (n.params.domain) out.insert(*n.params.domain);
  if (n.params.formula) kernel_detail::collect_domains(*n.params.formula, out);
  for (const auto& p : n.premises) proof_domains(p, out);
}

}  // namespace script_detail

inline Environment build_environment(const Script& sc) {
  bool collapse = false;
  int configs = 0;
  for (const auto& d : sc.decls)
    if (auto c = std::get_if<ConfigDecl>(&d)) {
      collapse = c->collapse_demo;
      ++configs;
    }
  if (configs > 1) throw Error(ErrorKind::Config, "more than one config declaration");
  Environment env{Registry(collapse), std::nullopt, {}, {}};
  auto require = [&](const std::set<std::string>& ds, const std::string& item) {
    for (const auto& d : ds)
      if (!env.registry.contains(d)) throw Error(ErrorKind::UnknownDomain, d + " used by " + item + " before declaration");
  };
  for (const auto& d : sc.decls) {
    if (std::holds_alternative<StandardDecl>(d)) {
      for (const auto& n : standard_registry(collapse).names())
        if (!env.registry.contains(n)) env.registry.register_domain(standard_registry(collapse).at(n));
    } else if (auto r = std::get_if<DomainRecord>(&d)) {
      env.registry.register_domain(*r);
    } else if (auto c = std::get_if<ConfigDecl>(&d)) {
      std::set<std::string> ds(c->cfg.substitution_domains);
      for (const auto& [dom, dual] : c->cfg.d_axiom_domains) ds.insert(dom);
      require(ds, "config");
      env.config = c->cfg;
    } else if (auto s = std::get_if<SequentDecl>(&d)) {
      require(kernel_detail::sequent_domains(s->sequent), s->name);
      env.sequents.push_back(*s);
    } else if (auto p = std::get_if<ProofDecl>(&d)) {
      std::set<std::string> ds;
      script_detail::proof_domains(p->proof, ds);
      require(ds, p->name);
      env.proofs.push_back(*p);
    }
  }
  if (env.config) validate_config(*env.config, env.registry);
  return env;
}

}  // namespace symlog
