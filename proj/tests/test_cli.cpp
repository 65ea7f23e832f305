#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout only; stderr is folded in when `merge` is set
Run run(const std::string& args, bool merge = false) {
  std::string cmd = std::string(SYMLOG_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string corpus(const std::string& f) { return std::string(SYMLOG_CORPUS_DIR) + "/" + f; }

fs::path scratch(const std::string& name, const std::string& body) {
  auto dir = fs::temp_directory_path() / "symlog_cli_test";
  fs::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("check /no/such/file.blq").code, 2);
}

TEST(Cli, CheckCorpusFile) {
  auto r = run("check " + corpus("C1.blq"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C1_member_to_exists: ok"), std::string::npos) << r.out;

  r = run("check " + corpus("C1.blq") + " --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["items"].size(), 2u);
}

TEST(Cli, CheckReportsBrokenProof) {
  auto f = scratch("broken.blq",
                   "domains standard\n"
                   "config { right }\n"
                   "proof bad:\n"
                   "  p |- q by id\n");
  auto r = run("check " + f.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("bad at /"), std::string::npos) << r.out;
}

TEST(Cli, ConfigFlagsReplaceScriptConfig) {
  // flags take over from the config block; a script with no config needs them
  EXPECT_EQ(run("check " + corpus("C17.blq")).code, 0);
  EXPECT_EQ(run("check " + corpus("C17.blq") + " --right --left").code, 0);
  auto f = scratch("noconfig.blq", "proof i:\n  p |- p by id\n");
  EXPECT_EQ(run("check " + f.string()).code, 2);
  EXPECT_EQ(run("check " + f.string() + " --left").code, 0);
  EXPECT_EQ(run("check " + f.string() + " --daxiom nocolon").code, 2);
  EXPECT_EQ(run("check " + f.string() + " --subst NoSuchDomain").code, 2);
}

TEST(Cli, ParseErrorsArePositioned) {
  auto f = scratch("bad_syntax.blq", "domains standard\nsequent s : p & q \\/ r\n");
  auto r = run("check " + f.string() + " --right", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 2, column"), std::string::npos) << r.out;
}

TEST(Cli, SearchFindsAndMisses) {
  auto r = run("search " + corpus("C17.blq") + " --name modus_ponens --depth 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("proof modus_ponens:"), std::string::npos) << r.out;

  r = run("search " + corpus("C16.blq") + " --name imp_reversal --depth 6");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("NotFound"), std::string::npos) << r.out;
  EXPECT_EQ(run("search " + corpus("C16.blq") + " --name imp_reversal --depth 6 --no-expect-proof").code, 0);

  r = run("search " + corpus("C16.blq") + " --name imp_reversal --depth 4 --format json");
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "NotFound");
  EXPECT_FALSE(j.contains("proof"));
}

TEST(Cli, SearchOutputChecks) {
  // a found proof printed as a script checks again
  auto r = run("search " + corpus("C17.blq") + " --name modus_ponens --depth 4");
  ASSERT_EQ(r.code, 0);
  auto f = scratch("found.blq", "domains standard\nconfig { right }\n" + r.out);
  EXPECT_EQ(run("check " + f.string()).code, 0);
}

TEST(Cli, Symmetrize) {
  auto r = run("sym " + corpus("C13.blq") + " --name C13_exists_forall");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("proof C13_exists_forall_sym:"), std::string::npos);
  // right-only config is not symmetric
  EXPECT_EQ(run("sym " + corpus("C17.blq") + " --name modus_ponens").code, 2);
  // sequents are printed directly
  r = run("sym " + corpus("C16.blq") + " --name imp_reversal --right --left");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("<-"), std::string::npos) << r.out;
}

TEST(Cli, Duality) {
  auto r = run("dual " + corpus("C15.blq") + " --name C15_formulas --duality perp");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("forall x in Dminus . A_1(x) join_o A_2(x)"), std::string::npos);
  // a free membership literal has no dictionary entry
  EXPECT_EQ(run("dual " + corpus("C15.blq") + " --name C15_plus_identical --duality perp").code, 1);
}

TEST(Cli, Bell) {
  auto r = run("bell --phase minus --correlation opposite");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(forall x in Dminus . A_1(x) join_o A_2(x))\n");
  r = run("bell --phase plus --correlation identical");
  EXPECT_EQ(r.out, "(forall x in Dplus . A_1(x) join_i A_2(x))\n");
  EXPECT_EQ(run("bell --phase sideways").code, 2);
}

TEST(Cli, Qstate) {
  auto down = scratch("down.json", R"({"alpha": 1, "beta": 0})");  // alpha weighs down
  auto r = run("qstate " + down.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("domain Ddown"), std::string::npos) << r.out;

  r = run("qstate " + down.string() + " --gate X --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["domain"], "Dup");

  auto bad = scratch("bad.json", R"({"alpha": 1, "beta": 1})");
  EXPECT_EQ(run("qstate " + bad.string()).code, 2);
  auto junk = scratch("junk.json", "{ not json");
  EXPECT_EQ(run("qstate " + junk.string()).code, 2);
}

TEST(Cli, Guard) {
  auto r = run("guard Dplus");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Dplus: Consistent\n");
  r = run("guard V --collapse-demo");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("V: Collapse\n", 0), 0u) << r.out;
  EXPECT_EQ(run("guard NoSuchDomain").code, 2);
}

TEST(Cli, CorpusRun) {
  auto r = run("corpus");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("C18 pass"), std::string::npos);
  auto a = run("corpus --format json");
  auto b = run("corpus --format json");
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out)["ok"].get<bool>());
}
