// symlog: batch front end for the kernel, the search and the qubit layer.
//
// Exit codes: 0 ok, 1 a check or expectation failed, 2 usage or input error.
// Reports go to stdout, diagnostics to stderr.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "symlog/corpus.hpp"
#include "symlog/quantum.hpp"

using namespace symlog;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFlags {
  bool left = false, right = false, weakening = false, cut = false, collapse_demo = false;
  std::vector<std::string> subst, daxiom;

  bool any() const { return left || right || weakening || cut || collapse_demo || !subst.empty() || !daxiom.empty(); }

  void attach(CLI::App* cmd) {
    cmd->add_flag("--left", left, "allow left contexts (replaces the script config)");
    cmd->add_flag("--right", right, "allow right contexts");
    cmd->add_flag("--weakening", weakening, "enable weakening");
    cmd->add_flag("--cut", cut, "enable cut");
    cmd->add_option("--subst", subst, "license substitution by elements of DOMAIN");
    cmd->add_option("--daxiom", daxiom, "license d-axioms, as DOMAIN:DUALITY");
    cmd->add_flag("--collapse-demo", collapse_demo, "collapse-demo registry mode");
  }
};

struct Common {
  std::string file, name, format = "text";
  bool unicode = false;
  ConfigFlags flags;

  Style style() const { return unicode ? Style::unicode : Style::ascii; }
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--unicode", c.unicode, "print formulas with logical symbols");
}

// Loads a script and settles the config: flags on the command line replace
// the script's config block; with neither, the run is refused.
struct Loaded {
  Script script;
  Environment env;
  CalculusConfig cfg;
};

Loaded load(const Common& c) {
  Loaded l;
  l.script = load_script(c.file);
  if (c.flags.collapse_demo) {
    bool found = false;
    for (auto& d : l.script.decls)
      if (auto cd = std::get_if<ConfigDecl>(&d)) cd->collapse_demo = found = true;
    if (!found) l.script.decls.insert(l.script.decls.begin(), ConfigDecl{{}, true});
  }
  l.env = build_environment(l.script);
  if (c.flags.any()) {
    CalculusConfig cfg;
    cfg.left_contexts = c.flags.left;
    cfg.right_contexts = c.flags.right;
    cfg.weakening = c.flags.weakening;
    cfg.cut = c.flags.cut;
    cfg.substitution_domains.insert(c.flags.subst.begin(), c.flags.subst.end());
    for (const auto& s : c.flags.daxiom) {
      auto colon = s.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == s.size())
        throw Usage("--daxiom expects DOMAIN:DUALITY, got " + s);
      cfg.d_axiom_domains.insert({s.substr(0, colon), s.substr(colon + 1)});
    }
    validate_config(cfg, l.env.registry);
    l.cfg = cfg;
  } else if (l.env.config) {
    l.cfg = *l.env.config;
  } else {
    throw Usage(c.file + " declares no config; add a config block or pass flags such as --right");
  }
  return l;
}

std::string proof_text(const std::string& name, const ProofNode& p, Style st) {
  std::string out = "proof " + name + ":\n";
  print_proof_lines(p, 2, out, st);
  return out;
}

std::string failure_line(const std::string& name, const Failure& f) {
  return name + " at " + (f.path.empty() ? "/" : f.path) + " (" + f.rule + "): " + to_string(f.kind) +
         (f.detail.empty() ? "" : " " + f.detail);
}

int cmd_check(const Common& c) {
  auto l = load(c);
  std::vector<const ProofDecl*> targets;
  for (const auto& p : l.env.proofs)
    if (c.name.empty() || p.name == c.name) targets.push_back(&p);
  if (targets.empty()) throw Usage(c.name.empty() ? c.file + " has no proofs" : "no proof named " + c.name);

  bool ok = true;
  Json items = Json::array();
  for (const auto* p : targets) {
    auto rep = check_proof(p->proof, l.cfg, l.env.registry);
    for (const auto& s : l.env.sequents)
      if (s.name == p->name && !same_sequent(s.sequent, p->proof.conclusion)) {
        rep.ok = false;
        rep.failures.push_back({"", p->proof.rule, FailureKind::ConclusionMismatch, "declared sequent differs"});
      }
    ok = ok && rep.ok;
    if (c.json()) {
      items.push_back({{"name", p->name}, {"report", to_json(rep)}});
    } else if (rep.ok) {
      std::cout << p->name << ": ok (" << rep.nodes << " nodes)\n";
    } else {
      for (const auto& f : rep.failures) std::cout << failure_line(p->name, f) << "\n";
    }
  }
  if (c.json()) {
    Json j;
    j["schema"] = kReportSchema;
    j["ok"] = ok;
    j["items"] = items;
    std::cout << j.dump(2) << "\n";
  }
  return ok ? kOk : kFailed;
}

LiteralInvolution::Kind involution_kind(const std::string& k) {
  if (k == "perp") return LiteralInvolution::Kind::perp;
  if (k == "top") return LiteralInvolution::Kind::top;
  return LiteralInvolution::Kind::identity;
}

int cmd_sym(const Common& c, const std::string& kind) {
  auto l = load(c);
  const auto* p = l.env.proof(c.name);
  if (!p) {
    const auto* s = l.env.sequent(c.name);
    if (!s) throw Usage("no proof or sequent named " + c.name);
    auto sym = symmetrize_sequent(*s, l.env.registry.involution(involution_kind(kind)));
    if (c.json())
      std::cout << Json({{"schema", kReportSchema}, {"sequent", to_string(sym)}}).dump(2) << "\n";
    else
      std::cout << to_string(sym, c.style()) << "\n";
    return kOk;
  }
  auto sym = symmetrize_proof(*p, l.cfg, l.env.registry, involution_kind(kind));
  auto rep = check_proof(sym, l.cfg.flipped(), l.env.registry);
  if (c.json()) {
    Json j;
    j["schema"] = kReportSchema;
    j["proof"] = to_json(sym);
    j["check"] = to_json(rep);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << proof_text(c.name + "_sym", sym, c.style());
    if (!rep.ok)
      for (const auto& f : rep.failures) std::cerr << failure_line(c.name + "_sym", f) << "\n";
  }
  return rep.ok ? kOk : kFailed;
}

int cmd_dual(const Common& c, const std::string& which) {
  auto script = load_script(c.file);
  auto env = build_environment(script);
  const auto* s = env.sequent(c.name);
  if (!s) throw Usage("no sequent named " + c.name);
  auto d = parse_duality(which);
  if (!d) throw Usage("--duality must be perp or top");
  Sequent out;
  auto map_side = [&](const std::vector<Slot>& in, std::vector<Slot>& to) {
    for (const auto& sl : in)
      to.push_back(sl.is_pair() ? Slot::pair(apply_duality(sl.first, *d), *sl.tag, apply_duality(sl.second, *d))
                                : Slot::single(apply_duality(sl.first, *d)));
  };
  map_side(s->left, out.left);
  map_side(s->right, out.right);
  if (c.json())
    std::cout << Json({{"schema", kReportSchema}, {"duality", which}, {"sequent", to_string(out)}}).dump(2) << "\n";
  else
    std::cout << to_string(out, c.style()) << "\n";
  return kOk;
}

int cmd_search(const Common& c, unsigned depth, bool expect_proof) {
  auto l = load(c);
  const auto* s = l.env.sequent(c.name);
  if (!s) throw Usage("no sequent named " + c.name);
  auto res = search_proof(*s, l.cfg, l.env.registry, depth);
  if (c.json()) {
    std::cout << to_json(res).dump(2) << "\n";
  } else if (res.found()) {
    std::cout << proof_text(c.name, *res.proof, c.style());
  } else {
    std::cout << c.name << ": " << to_string(res.status) << " at depth " << res.depth << "\n";
  }
  return res.found() || !expect_proof ? kOk : kFailed;
}

int cmd_corpus(const Common& c, const std::string& dir) {
  auto rep = run_corpus(dir);
  if (c.json()) {
    std::cout << to_json(rep).dump(2) << "\n";
  } else {
    for (const auto& e : rep.manifest_errors) std::cout << "manifest: " << e << "\n";
    for (const auto& i : rep.items) {
      std::cout << i.id << " " << (i.ok ? "pass" : "FAIL") << " (" << i.checked << " checks) " << i.anchor << "\n";
      for (const auto& m : i.messages) std::cout << "  " << m << "\n";
    }
  }
  return rep.ok() ? kOk : kFailed;
}

int cmd_qstate(const Common& c, const std::string& gate) {
  Json in;
  try {
    in = Json::parse(corpus_detail::read_file(c.file));
  } catch (const nlohmann::json::exception& e) {
    throw Usage(c.file + ": " + e.what());
  }
  if (!in.is_object() || !in.contains("alpha") || !in.contains("beta"))
    throw Usage(c.file + ": expected an object with alpha, beta and optional phi");
  auto q = Qubit::make(in.at("alpha").get<double>(), in.at("beta").get<double>(), in.value("phi", 0.0));
  if (!gate.empty()) q = apply_gate(gate == "X" ? Gate::X : Gate::Z, q);
  auto dom = measurement_domain(q);
  auto state = state_formula(q);
  auto coll = collapse(q);
  if (c.json()) {
    Json j;
    j["schema"] = kReportSchema;
    j["qubit"] = {{"alpha", q.alpha}, {"beta", q.beta}, {"phi", q.phi}};
    j["domain"] = dom.name;
    j["state"] = to_string(state);
    j["collapse"] = to_string(coll);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "domain " << dom.name << "\n";
    std::cout << "state " << to_string(state, c.style()) << "\n";
    std::cout << "collapse " << to_string(coll, c.style()) << "\n";
  }
  return kOk;
}

int cmd_bell(const Common& c, const std::string& phase, const std::string& corr) {
  BellState b;
  b.phase = phase == "plus" ? BellState::Phase::plus : BellState::Phase::minus;
  b.correlation = corr == "identical" || corr == "i" ? Corr::identical : Corr::opposite;
  auto f = bell_formula(b);
  if (c.json())
    std::cout << Json({{"schema", kReportSchema}, {"state", to_string(b)}, {"formula", to_string(f)}}).dump(2) << "\n";
  else
    std::cout << "(" << to_string(f, c.style()) << ")\n";
  return kOk;
}

int cmd_guard(const Common& c, const std::string& domain, bool collapse_demo) {
  auto reg = standard_registry(collapse_demo);
  const auto& r = reg.at(domain);
  CalculusConfig cfg;
  cfg.cut = true;
  if (r.substitution_allowed) cfg.substitution_domains.insert(domain);
  try {
    license_d_axiom(r, reg.membership_duality(domain));
    cfg.d_axiom_domains.insert({domain, reg.membership_duality(domain)});
  } catch (const Error&) {
    // no d-axioms for this domain
  }
  auto g = consistency_guard(reg, domain, cfg);
  bool checked = true;
  for (const auto& p : g.proofs) checked = checked && check_proof(p, cfg, reg).ok;
  if (c.json()) {
    Json j;
    j["schema"] = kReportSchema;
    j["domain"] = domain;
    j["verdict"] = to_string(g.verdict);
    j["proofs"] = Json::array();
    for (const auto& p : g.proofs) j["proofs"].push_back(to_json(p));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << domain << ": " << to_string(g.verdict) << "\n";
    for (size_t i = 0; i < g.proofs.size(); ++i)
      std::cout << proof_text(domain + "_" + std::to_string(i + 1), g.proofs[i], c.style());
  }
  return checked ? kOk : kFailed;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Config:
    case ErrorKind::UnknownDomain:
    case ErrorKind::InvalidQubit:
    case ErrorKind::InvariantViolation:
    case ErrorKind::NotSymmetricConfig:
      return kUsage;
    default:
      return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symlog: checker, search and qubit dictionary for symmetric sequent calculi"};
  app.require_subcommand(1);
  Common c;

  auto* check = app.add_subcommand("check", "check the proofs of a script");
  check->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  check->add_option("--name", c.name, "check only this proof");
  add_format(check, c);
  c.flags.attach(check);

  std::string kind = "identity";
  auto* sym = app.add_subcommand("sym", "print the symmetric of a proof or sequent");
  sym->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  sym->add_option("--name", c.name)->required();
  sym->add_option("--kind", kind, "literal involution")->check(CLI::IsMember({"identity", "perp", "top"}));
  add_format(sym, c);
  c.flags.attach(sym);

  std::string duality;
  auto* dual = app.add_subcommand("dual", "apply a qubit duality to a sequent");
  dual->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  dual->add_option("--name", c.name)->required();
  dual->add_option("--duality", duality)->required()->check(CLI::IsMember({"perp", "top"}));
  add_format(dual, c);

  unsigned depth = default_max_depth();
  bool expect_proof = true;
  auto* search = app.add_subcommand("search", "bounded proof search");
  search->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  search->add_option("--name", c.name)->required();
  search->add_option("--depth", depth, "proof height bound (default SYMLOG_DEPTH or 8)");
  search->add_flag("--expect-proof,!--no-expect-proof", expect_proof,
                   "exit 1 when no proof is found (on by default)");
  add_format(search, c);
  c.flags.attach(search);

  std::string dir = SYMLOG_CORPUS_DIR;
  auto* corpus = app.add_subcommand("corpus", "run the regression corpus");
  corpus->add_option("--dir", dir, "corpus directory")->check(CLI::ExistingDirectory);
  add_format(corpus, c);

  std::string gate;
  auto* qstate = app.add_subcommand("qstate", "measurement domain and formulas of a qubit");
  qstate->add_option("file", c.file, "JSON object with alpha, beta, phi")->required()->check(CLI::ExistingFile);
  qstate->add_option("--gate", gate, "apply a gate first")->check(CLI::IsMember({"X", "Z"}));
  add_format(qstate, c);

  std::string phase = "plus", corr = "identical";
  auto* bell = app.add_subcommand("bell", "formula of a Bell state");
  bell->add_option("--phase", phase)->check(CLI::IsMember({"plus", "minus"}));
  bell->add_option("--correlation", corr)->check(CLI::IsMember({"identical", "opposite", "i", "o"}));
  add_format(bell, c);

  std::string domain;
  bool collapse_demo = false;
  auto* guard = app.add_subcommand("guard", "consistency guard for d-axioms plus substitution");
  guard->add_option("domain", domain)->required();
  guard->add_flag("--collapse-demo", collapse_demo, "allow substitution on virtual singletons");
  add_format(guard, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(c);
    if (*sym) return cmd_sym(c, kind);
    if (*dual) return cmd_dual(c, duality);
    if (*search) return cmd_search(c, depth, expect_proof);
    if (*corpus) return cmd_corpus(c, dir);
    if (*qstate) return cmd_qstate(c, gate);
    if (*bell) return cmd_bell(c, phase, corr);
    if (*guard) return cmd_guard(c, domain, collapse_demo);
  } catch (const Usage& e) {
    std::cerr << "symlog: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "symlog: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "symlog: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
