#include <gtest/gtest.h>

#include "symlog/corpus.hpp"

using namespace symlog;

namespace {

const CorpusReport& report() {
  static const CorpusReport rep = run_corpus(SYMLOG_CORPUS_DIR);
  return rep;
}

const ItemResult* item(const std::string& id) {
  for (const auto& i : report().items)
    if (i.id == id) return &i;
  return nullptr;
}

}  // namespace

TEST(Corpus, ManifestCoversEveryItem) {
  for (const auto& e : report().manifest_errors) ADD_FAILURE() << e;
  EXPECT_EQ(report().items.size(), 18u);
}

class CorpusItem : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusItem, MeetsExpectations) {
  const auto* i = item(GetParam());
  ASSERT_NE(i, nullptr);
  for (const auto& m : i->messages) ADD_FAILURE() << m;
  EXPECT_TRUE(i->ok);
  EXPECT_GT(i->checked, 0u);
}

INSTANTIATE_TEST_SUITE_P(All, CorpusItem, ::testing::ValuesIn(corpus_ids()));

TEST(Corpus, EveryScriptRoundTrips) {
  for (const auto& entry : std::filesystem::directory_iterator(SYMLOG_CORPUS_DIR)) {
    if (entry.path().extension() != ".blq") continue;
    auto sc = load_script(entry.path().string());
    auto again = parse_script(print_script(sc));
    EXPECT_TRUE(identical(sc, again)) << entry.path();
  }
}

TEST(Corpus, BrokenManifestIsReported) {
  auto dir = std::filesystem::temp_directory_path() / "symlog_corpus_broken";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "manifest.json") << R"({"items": [{"id": "C1", "anchor": "a", "file": "missing.blq", "expect": []}]})";
  }
  auto rep = run_corpus(dir);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.manifest_errors.size(), 17u);  // C2..C18 missing
  ASSERT_EQ(rep.items.size(), 1u);
  EXPECT_FALSE(rep.items[0].ok);
  std::filesystem::remove_all(dir);
}

TEST(Corpus, JsonReportIsDeterministic) {
  auto a = to_json(report()).dump(2);
  auto b = to_json(run_corpus(SYMLOG_CORPUS_DIR)).dump(2);
  EXPECT_EQ(a, b);
}
