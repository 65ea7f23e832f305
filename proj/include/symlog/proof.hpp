#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symlog/dualities.hpp"
#include "symlog/formula.hpp"
#include "symlog/registry.hpp"

namespace symlog {

// Rule-specific parameters. Most rules infer what they need from the
// sequents; these are required only where inference is ambiguous
// (cut formula, weakened formula, substitution).
struct Params {
  std::optional<Formula> formula;
  std::optional<Term> term;
  std::optional<std::string> var;
  std::optional<std::string> domain;

  bool empty() const { return !formula && !term && !var && !domain; }
};

struct ProofNode {
  Sequent conclusion;
  std::string rule;
  Params params;
  std::vector<ProofNode> premises;
};

inline bool identical(const Params& a, const Params& b) {
  if (a.formula.has_value() != b.formula.has_value()) return false;
  if (a.formula && !identical(*a.formula, *b.formula)) return false;
  return a.term == b.term && a.var == b.var && a.domain == b.domain;
}

// Syntactic equality of whole proof trees.
inline bool identical(const ProofNode& a, const ProofNode& b) {
  if (a.rule != b.rule || !identical(a.conclusion, b.conclusion) || !identical(a.params, b.params)) return false;
  if (a.premises.size() != b.premises.size()) return false;
  for (size_t i = 0; i < a.premises.size(); ++i)
    if (!identical(a.premises[i], b.premises[i])) return false;
  return true;
}

inline std::size_t proof_size(const ProofNode& p) {
  std::size_t n = 1;
  for (const auto& q : p.premises) n += proof_size(q);
  return n;
}

inline std::size_t proof_height(const ProofNode& p) {
  std::size_t h = 0;
  for (const auto& q : p.premises) h = std::max(h, proof_height(q));
  return h + 1;
}

inline ProofNode leaf(Sequent s, std::string rule, Params p = {}) { return ProofNode{std::move(s), std::move(rule), std::move(p), {}}; }

inline ProofNode node(Sequent s, std::string rule, std::vector<ProofNode> premises, Params p = {}) {
  return ProofNode{std::move(s), std::move(rule), std::move(p), std::move(premises)};
}

struct CalculusConfig {
  bool left_contexts = false;
  bool right_contexts = false;
  bool weakening = false;
  bool cut = false;
  std::set<std::string> substitution_domains;
  std::set<std::pair<std::string, std::string>> d_axiom_domains;  // (domain, duality)

  bool symmetric() const { return left_contexts == right_contexts; }

  CalculusConfig flipped() const {
    auto c = *this;
    std::swap(c.left_contexts, c.right_contexts);
    return c;
  }

  static CalculusConfig all_flags() {
    CalculusConfig c;
    c.left_contexts = c.right_contexts = c.weakening = c.cut = true;
    return c;
  }
};

// A domain may not be both substitutable and equipped with d-axioms, except
// for extensional singletons or in collapse-demo mode.
inline void validate_config(const CalculusConfig& cfg, const Registry& reg) {
  for (const auto& d : cfg.substitution_domains) {
    const auto& r = reg.at(d);
    if (!r.substitution_allowed) throw Error(ErrorKind::Config, "substitution is not allowed for " + d);
  }
  for (const auto& [d, dual] : cfg.d_axiom_domains) {
    const auto& r = reg.at(d);
    license_d_axiom(r, dual);
    if (cfg.substitution_domains.count(d) && !r.extensional_singleton() && !reg.collapse_demo())
      throw Error(ErrorKind::Config, d + " has both d-axioms and substitution (collapse-demo mode is off)");
  }
}

// ---------------------------------------------------------------------------
// Rule catalog

struct RuleInfo {
  const char* name;
  int arity;
  const char* mirror;  // the paired rule under symmetry
  bool primary;        // mirrors are checked through their primary partner
};

inline const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> rules = {
      {"id", 0, "id", true},
      {"cut", 2, "cut", true},
      {"wR", 1, "wL", true},
      {"wL", 1, "wR", false},
      {"andR", 2, "orL", true},
      {"orL", 2, "andR", false},
      {"andL1", 1, "orR2", true},
      {"orR2", 1, "andL1", false},
      {"andL2", 1, "orR1", true},
      {"orR1", 1, "andL2", false},
      {"parR", 1, "timesL", true},
      {"timesL", 1, "parR", false},
      {"parL", 2, "timesR", true},
      {"timesR", 2, "parL", false},
      {"impR", 1, "exclL", true},
      {"exclL", 1, "impR", false},
      {"impL", 2, "exclR", true},
      {"exclR", 2, "impL", false},
      {"forallF", 1, "existsF", true},
      {"existsF", 1, "forallF", false},
      {"forallR", 2, "existsR", true},
      {"existsR", 2, "forallR", false},
      {"eqExp", 1, "neqExp", true},
      {"neqExp", 1, "eqExp", false},
      {"eqRefl", 1, "neqRefl", true},
      {"neqRefl", 1, "eqRefl", false},
      {"refl", 0, "irrefl", true},
      {"irrefl", 0, "refl", false},
      {"memR", 0, "memL", true},
      {"memL", 0, "memR", false},
      {"dualR", 0, "dualL", true},
      {"dualL", 0, "dualR", false},
      {"focus", 0, "focusDual", true},
      {"focusDual", 0, "focus", false},
      {"subst", 1, "subst", true},
      {"dAxiom", 0, "dAxiom", true},
      {"topAx", 0, "topAxS", true},
      {"topAxS", 0, "topAx", false},
      {"convRel", 1, "convRelL", true},
      {"convRelL", 1, "convRel", false},
      {"convComma", 1, "convCommaL", true},
      {"convCommaL", 1, "convComma", false},
      {"idem", 1, "idemL", true},
      {"idemL", 1, "idem", false},
      {"idemInv", 1, "idemInvL", true},
      {"idemInvL", 1, "idemInv", false},
      {"joinR", 1, "joinL", true},
      {"joinL", 1, "joinR", false},
      {"joinRinv", 1, "joinLinv", true},
      {"joinLinv", 1, "joinRinv", false},
      {"parallelForall", 1, "parallelExists", true},
      {"parallelExists", 1, "parallelForall", false},
  };
  return rules;
}

inline const RuleInfo* find_rule(const std::string& name) {
  for (const auto& r : rule_catalog())
    if (name == r.name) return &r;
  return nullptr;
}

inline bool is_macro(const std::string& rule) { return rule == "parallelForall" || rule == "parallelExists"; }

// ---------------------------------------------------------------------------
// Check reports

enum class FailureKind {
  SideConditionViolated,
  SubstitutionNotLicensed,
  DAxiomNotLicensed,
  ArityMismatch,
  ConclusionMismatch,
  ContextNotAllowed,
  RuleDisabled,
  UnknownRule,
  UnknownDomain,
};

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::SideConditionViolated: return "SideConditionViolated";
    case FailureKind::SubstitutionNotLicensed: return "SubstitutionNotLicensed";
    case FailureKind::DAxiomNotLicensed: return "DAxiomNotLicensed";
    case FailureKind::ArityMismatch: return "ArityMismatch";
    case FailureKind::ConclusionMismatch: return "ConclusionMismatch";
    case FailureKind::ContextNotAllowed: return "ContextNotAllowed";
    case FailureKind::RuleDisabled: return "RuleDisabled";
    case FailureKind::UnknownRule: return "UnknownRule";
    case FailureKind::UnknownDomain: return "UnknownDomain";
  }
  return "?";
}

struct RuleFailure {
  FailureKind kind;
  std::string detail;
};

struct Failure {
  std::string path;
  std::string rule;
  FailureKind kind;
  std::string detail;
};

struct CheckReport {
  bool ok = true;
  std::vector<Failure> failures;
  std::size_t nodes = 0;
  std::map<std::string, std::size_t> rules_used;

  bool has(FailureKind k) const {
    for (const auto& f : failures)
      if (f.kind == k) return true;
    return false;
  }
};

}  // namespace symlog
