#pragma once

// Machine-readable output. Keys keep insertion order so that identical runs
// produce byte-identical reports.

#include <json.hpp>

#include "symlog/script.hpp"
#include "symlog/search.hpp"

namespace symlog {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

inline Json to_json(const Params& p) {
  Json j = Json::object();
  if (p.formula) j["formula"] = to_string(*p.formula);
  if (p.term) j["term"] = to_string(*p.term);
  if (p.var) j["var"] = *p.var;
  if (p.domain) j["domain"] = *p.domain;
  return j;
}

inline Json to_json(const ProofNode& n) {
  Json j;
  j["conclusion"] = to_string(n.conclusion);
  j["rule"] = n.rule;
  j["params"] = to_json(n.params);
  j["premises"] = Json::array();
  for (const auto& p : n.premises) j["premises"].push_back(to_json(p));
  return j;
}

inline ProofNode proof_from_json(const Json& j, const std::set<std::string>& consts = {}) {
  try {
    ProofNode n;
    n.conclusion = parse_sequent(j.at("conclusion").get<std::string>(), consts);
    n.rule = j.at("rule").get<std::string>();
    if (j.contains("params")) {
      const auto& p = j.at("params");
      if (p.contains("formula")) n.params.formula = parse_formula(p.at("formula").get<std::string>(), consts);
      if (p.contains("term")) {
        parse_detail::LineParser lp(parse_detail::lex_line(p.at("term").get<std::string>(), 1), 1, consts);
        n.params.term = lp.term();
      }
      if (p.contains("var")) n.params.var = p.at("var").get<std::string>();
      if (p.contains("domain")) n.params.domain = p.at("domain").get<std::string>();
    }
    if (j.contains("premises"))
      for (const auto& c : j.at("premises")) n.premises.push_back(proof_from_json(c, consts));
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("proof JSON: ") + e.what());
  }
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["ok"] = r.ok;
  j["failures"] = Json::array();
  for (const auto& f : r.failures) {
    Json fj;
    fj["path"] = f.path;
    fj["rule"] = f.rule;
    fj["reason"] = to_string(f.kind);
    if (!f.detail.empty()) fj["detail"] = f.detail;
    j["failures"].push_back(fj);
  }
  Json rules = Json::object();
  for (const auto& [name, count] : r.rules_used) rules[name] = count;  // std::map: sorted
  j["stats"] = {{"nodes", r.nodes}, {"rules", rules}};
  return j;
}

inline Json to_json(const SearchResult& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["status"] = to_string(r.status);
  j["depth"] = r.depth;
  j["expanded"] = r.expanded;
  if (r.proof) j["proof"] = to_json(*r.proof);
  return j;
}

}  // namespace symlog
