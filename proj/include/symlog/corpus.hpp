#pragma once

// Regression corpus: .blq scripts plus a JSON manifest of expectations.

#include <filesystem>

#include "symlog/correlation.hpp"
#include "symlog/export.hpp"
#include "symlog/guard.hpp"
#include "symlog/quantum.hpp"

namespace symlog {

struct ItemResult {
  std::string id;
  std::string anchor;
  bool ok = true;
  std::vector<std::string> messages;  // one per unmet expectation
  std::size_t checked = 0;            // proofs and searches run
};

struct CorpusReport {
  std::vector<ItemResult> items;
  std::vector<std::string> manifest_errors;

  bool ok() const {
    if (!manifest_errors.empty()) return false;
    for (const auto& i : items)
      if (!i.ok) return false;
    return true;
  }
};

namespace corpus_detail {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  Script script;
  Environment env;
};

class Runner {
 public:
  explicit Runner(fs::path dir) : dir_(std::move(dir)) {}

  const Loaded& load(const std::string& file) {
    auto it = cache_.find(file);
    if (it != cache_.end()) return it->second;
    auto sc = parse_script(read_file(dir_ / file));
    auto env = build_environment(sc);
    return cache_.emplace(file, Loaded{std::move(sc), std::move(env)}).first->second;
  }

  void run(const Json& e, const Loaded& l, ItemResult& r) {
    auto kind = e.at("kind").get<std::string>();
    auto fail = [&](const std::string& m) {
      r.ok = false;
      r.messages.push_back(kind + ": " + m);
    };
    const auto& env = l.env;
    auto need_config = [&]() -> const CalculusConfig& {
      if (!env.config) throw Error(ErrorKind::Config, "script has no config");
      return *env.config;
    };

    if (kind == "proves") {
      std::vector<const ProofDecl*> targets;
      if (e.contains("items")) {
        for (const auto& n : e.at("items")) {
          auto name = n.get<std::string>();
          bool found = false;
          for (const auto& p : env.proofs)
            if (p.name == name) targets.push_back(&p), found = true;
          if (!found) fail("no proof named " + name);
        }
      } else {
        for (const auto& p : env.proofs) targets.push_back(&p);
      }
      if (targets.empty()) fail("no proofs");
      for (const auto* p : targets) {
        ++r.checked;
        auto rep = check_proof(p->proof, need_config(), env.registry);
        for (const auto& f : rep.failures)
          fail(p->name + " at " + (f.path.empty() ? "/" : f.path) + " (" + f.rule + "): " + to_string(f.kind) +
               (f.detail.empty() ? "" : " " + f.detail));
        // a named sequent with the same name must be what the proof proves
        for (const auto& s : env.sequents)
          if (s.name == p->name && !same_sequent(s.sequent, p->proof.conclusion))
            fail(p->name + " proves a different sequent than declared");
      }
    } else if (kind == "found" || kind == "not-found") {
      auto name = e.at("item").get<std::string>();
      auto depth = e.at("depth").get<unsigned>();
      const auto* s = env.sequent(name);
      if (!s) return fail("no sequent named " + name);
      ++r.checked;
      auto res = search_proof(*s, need_config(), env.registry, depth);
      if (kind == "found") {
        if (!res.found()) return fail(name + ": " + to_string(res.status) + " at depth " + std::to_string(depth));
        auto rep = check_proof(*res.proof, need_config(), env.registry);
        if (!rep.ok) fail(name + ": search returned a proof the kernel rejects");
      } else if (res.status != SearchStatus::NotFound) {
        fail(name + ": " + to_string(res.status) + " at depth " + std::to_string(depth));
      }
    } else if (kind == "collapses" || kind == "consistent") {
      auto dom = e.at("domain").get<std::string>();
      auto g = consistency_guard(env.registry, dom, need_config());
      bool want = kind == "collapses";
      if ((g.verdict == GuardResult::Verdict::Collapse) != want) fail(dom + ": verdict " + to_string(g.verdict));
      for (const auto& p : g.proofs) {
        ++r.checked;
        if (!check_proof(p, need_config(), env.registry).ok) fail(dom + ": guard proof rejected by the kernel");
      }
    } else if (kind == "dual") {
      auto consts = std::set<std::string>{};
      auto f = parse_formula(e.at("formula").get<std::string>(), consts);
      auto want = parse_formula(e.at("equals").get<std::string>(), consts);
      auto d = parse_duality(e.at("duality").get<std::string>());
      if (!d) return fail("unknown duality");
      ++r.checked;
      auto got = apply_duality(f, *d);
      if (!identical(got, want)) fail(to_string(f) + " gives " + to_string(got));
    } else if (kind == "dual-fixed") {
      auto d = parse_duality(e.at("duality").get<std::string>());
      if (!d) return fail("unknown duality");
      std::set<std::string> only;
      if (e.contains("items"))
        for (const auto& n : e.at("items")) only.insert(n.get<std::string>());
      std::size_t seen = 0;
      for (const auto& s : env.sequents) {
        if (!only.empty() && !only.count(s.name)) continue;
        ++seen;
        for (const auto* side : {&s.sequent.left, &s.sequent.right})
          for (const auto& sl : *side)
            for (const auto* f : {&sl.first, &sl.second}) {
              if (f == &sl.second && !sl.is_pair()) continue;
              ++r.checked;
              if (!identical(apply_duality(*f, *d), *f)) fail(s.name + ": " + to_string(*f) + " is not fixed");
            }
      }
      if (seen == 0) fail("no sequents");
    } else if (kind == "bell") {
      for (const auto& b : all_bell_states()) {
        ++r.checked;
        auto f = bell_formula(b);
        bool found = false;
        for (const auto& s : env.sequents)
          for (const auto& sl : s.sequent.right)
            if (!sl.is_pair() && identical(sl.first, f)) found = true;
        if (!found) fail(to_string(b) + " formula not declared");
      }
    } else if (kind == "roundtrip") {
      std::size_t pairs = 0;
      for (const auto& s : env.sequents)
        for (std::size_t k = 0; k < s.sequent.right.size(); ++k) {
          if (!s.sequent.right[k].is_pair()) continue;
          ++pairs;
          ++r.checked;
          ConversionStep to{ConversionStep::Direction::toRelation, k, std::nullopt};
          auto mid = convert(s.sequent, to);
          ConversionStep back{ConversionStep::Direction::toComma, k, std::nullopt};
          if (!identical(convert(mid, back), s.sequent)) fail(s.name + ": slot " + std::to_string(k) + " changed");
        }
      if (pairs == 0) fail("no correlated pairs");
    } else if (kind == "symmetric") {
      for (const auto& fj : e.at("files")) {
        const auto& other = load(fj.get<std::string>());
        if (!other.env.config) {
          fail(fj.get<std::string>() + " has no config");
          continue;
        }
        for (const auto& p : other.env.proofs) {
          ++r.checked;
          auto inv = other.env.registry.involution();
          auto sym = symmetrize_proof_with(p.proof, inv);
          if (!identical(symmetrize_proof_with(sym, inv), p.proof)) fail(p.name + ": symmetrizing twice changes the proof");
          auto rep = check_proof(sym, other.env.config->flipped(), other.env.registry);
          if (!rep.ok) {
            const auto& f = rep.failures.front();
            fail(fj.get<std::string>() + ":" + p.name + " symmetric fails at " + (f.path.empty() ? "/" : f.path) +
                 " (" + f.rule + "): " + to_string(f.kind));
          }
        }
      }
    } else {
      fail("unknown expectation kind");
    }
  }

 private:
  fs::path dir_;
  std::map<std::string, Loaded> cache_;
};

}  // namespace corpus_detail

inline std::vector<std::string> corpus_ids(std::size_t n = 18) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("C" + std::to_string(i));
  return out;
}

// Runs every manifest item. Items are reported in manifest order; a missing
// id, file or anchor is a manifest error.
inline CorpusReport run_corpus(const std::filesystem::path& dir) {
  CorpusReport rep;
  Json manifest;
  try {
    manifest = Json::parse(corpus_detail::read_file(dir / "manifest.json"));
  } catch (const std::exception& e) {
    rep.manifest_errors.push_back(std::string("manifest: ") + e.what());
    return rep;
  }
  std::set<std::string> seen, anchors;
  corpus_detail::Runner runner(dir);
  for (const auto& item : manifest.at("items")) {
    ItemResult r;
    r.id = item.value("id", "");
    r.anchor = item.value("anchor", "");
    if (r.id.empty() || !seen.insert(r.id).second) rep.manifest_errors.push_back("duplicate or empty id " + r.id);
    if (r.anchor.empty() || !anchors.insert(r.anchor).second)
      rep.manifest_errors.push_back(r.id + ": missing or duplicate anchor");
    try {
      const auto& loaded = runner.load(item.at("file").get<std::string>());
      for (const auto& e : item.at("expect")) runner.run(e, loaded, r);
    } catch (const std::exception& e) {
      r.ok = false;
      r.messages.push_back(e.what());
    }
    rep.items.push_back(std::move(r));
  }
  for (const auto& id : corpus_ids())
    if (!seen.count(id)) rep.manifest_errors.push_back("no item for " + id);
  return rep;
}

inline Json to_json(const CorpusReport& rep) {
  Json j;
  j["schema"] = kReportSchema;
  j["ok"] = rep.ok();
  j["manifest_errors"] = rep.manifest_errors;
  j["items"] = Json::array();
  for (const auto& i : rep.items)
    j["items"].push_back({{"id", i.id}, {"anchor", i.anchor}, {"ok", i.ok}, {"checked", i.checked}, {"messages", i.messages}});
  return j;
}

}  // namespace symlog
