#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cpath/features/consolidate.h"
#include "cpath/features/extract.h"
#include "cpath/features/path.h"
#include "cpath/features/pdfrate.h"
#include "cpath/features/space.h"
#include "cpath/mutation/mutate.h"
#include "fixtures/fixtures.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cpath::features {
namespace {

using pdf::Array;
using pdf::Dictionary;
using pdf::MakeName;
using pdf::MakeRef;
using pdf::Object;
using pdf::ObjectGraph;
using testing::Paths;

// Straightforward recursive enumeration used as a reference for ExtractPaths.
void NaiveWalk(const ObjectGraph& g, const Object& v, const std::string& path, size_t depth,
               std::set<pdf::ObjectNumber>& chain, size_t limit, std::set<std::string>& out) {
  if (v.IsReference()) {
    const auto n = v.AsReference().number;
    if (g.Find(n) == nullptr || chain.count(n)) return;
    chain.insert(n);
    NaiveWalk(g, *g.Find(n), path, depth, chain, limit, out);
    chain.erase(n);
  } else if (v.IsArray()) {
    for (const auto& e : v.AsArray()) NaiveWalk(g, e, path, depth, chain, limit, out);
  } else if (v.DictOrStreamDict() != nullptr) {
    for (const auto& [k, child] : *v.DictOrStreamDict()) {
      if (depth + 1 > limit || (v.IsStream() && k == "Length")) continue;
      const std::string p = path + "/" + k;
      out.insert(p);
      NaiveWalk(g, child, p, depth + 1, chain, limit, out);
    }
  }
}

std::set<std::string> NaivePaths(const ObjectGraph& g, size_t limit) {
  std::set<std::string> out;
  std::set<pdf::ObjectNumber> chain{g.root_number()};
  NaiveWalk(g, *g.Find(g.root_number()), "", 0, chain, limit, out);
  return out;
}

Object RandomValue(std::mt19937& rng, int objects, int nesting);

Dictionary RandomDict(std::mt19937& rng, int objects, int nesting) {
  static const char* kKeys[] = {"A", "B", "Kids", "Parent", "JS"};
  Dictionary d;
  const int n = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < n; ++i) {
    d.insert_or_assign(kKeys[rng() % 5], RandomValue(rng, objects, nesting + 1));
  }
  return d;
}

Object RandomValue(std::mt19937& rng, int objects, int nesting) {
  const int kind = std::uniform_int_distribution<int>(0, nesting > 2 ? 1 : 4)(rng);
  switch (kind) {
    case 0:
      return 1;
    case 1:
      // Occasionally dangling.
      return MakeRef(static_cast<pdf::ObjectNumber>(rng() % (objects + 1) + 1));
    case 2: {
      Array a;
      const int n = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int i = 0; i < n; ++i) a.push_back(RandomValue(rng, objects, nesting + 1));
      return a;
    }
    default:
      return RandomDict(rng, objects, nesting);
  }
}

ObjectGraph RandomGraph(std::mt19937& rng) {
  const int objects = std::uniform_int_distribution<int>(1, 6)(rng);
  ObjectGraph::ObjectMap map;
  for (int i = 1; i <= objects; ++i) {
    Dictionary d = RandomDict(rng, objects, 0);
    if (i > 1 && rng() % 3 == 0) {
      map[static_cast<pdf::ObjectNumber>(i)] = pdf::Stream{std::move(d), "payload"};
    } else {
      map[static_cast<pdf::ObjectNumber>(i)] = std::move(d);
    }
  }
  return ObjectGraph(std::move(map), Dictionary{{"Root", MakeRef(1)}}, pdf::Provenance::kMutated);
}

TEST(StructuralPathTest, RenderParseIdentity) {
  const StructuralPath p({"OpenAction", "JS"});
  EXPECT_EQ(p.rendered(), "/OpenAction/JS");
  EXPECT_EQ(StructuralPath::Parse(p.rendered()), p);
  const StructuralPath odd({"a/b", "c#d"});
  EXPECT_EQ(odd.rendered(), "/a#2Fb/c#23d");
  EXPECT_EQ(StructuralPath::Parse(odd.rendered()).components(), odd.components());
}

TEST(StructuralPathTest, RejectsMalformed) {
  EXPECT_THROW(StructuralPath::Parse(""), std::invalid_argument);
  EXPECT_THROW(StructuralPath::Parse("/"), std::invalid_argument);
  EXPECT_THROW(StructuralPath::Parse("A/B"), std::invalid_argument);
  EXPECT_THROW(StructuralPath::Parse("/A//B"), std::invalid_argument);
  EXPECT_THROW(StructuralPath(std::vector<std::string>{}), std::invalid_argument);
}

TEST(StructuralPathTest, PrefixRelation) {
  const auto a = StructuralPath::Parse("/Pages");
  const auto b = StructuralPath::Parse("/Pages/Kids");
  const auto c = StructuralPath::Parse("/PagesX");
  EXPECT_TRUE(a.IsStrictPrefixOf(b));
  EXPECT_FALSE(b.IsStrictPrefixOf(a));
  EXPECT_FALSE(a.IsStrictPrefixOf(a));
  EXPECT_FALSE(a.IsStrictPrefixOf(c));
}

TEST(ExtractPathsTest, OpenActionFixture) {
  const auto paths = Paths(fixtures::OpenActionDocument());
  for (const char* p : {"/Pages", "/OpenAction", "/OpenAction/S", "/OpenAction/JS"}) {
    EXPECT_TRUE(paths.count(p)) << p;
  }
}

TEST(ExtractPathsTest, EmptyCatalog) { EXPECT_TRUE(Paths(fixtures::EmptyCatalogDocument()).empty()); }

TEST(ExtractPathsTest, CyclicPagesByHand) {
  const std::set<std::string> expected = {
      "/Type",       "/Pages",          "/Pages/Type",          "/Pages/Count",
      "/Pages/Kids", "/Pages/Loop",     "/Pages/Kids/Type",     "/Pages/Kids/Parent",
      "/Pages/Kids/MediaBox", "/Pages/Kids/Self", "/Pages/Kids/Catalog"};
  EXPECT_EQ(Paths(fixtures::CyclicPagesDocument()), expected);
}

TEST(ExtractPathsTest, DepthLimitRespected) {
  const ObjectGraph g = fixtures::CyclicPagesDocument();
  EXPECT_EQ(RenderAll(ExtractPaths(g, 1)), (std::set<std::string>{"/Pages", "/Type"}));
  EXPECT_TRUE(ExtractPaths(g, 0).empty());
  for (size_t limit = 1; limit < 5; ++limit) {
    for (const auto& p : ExtractPaths(g, limit)) EXPECT_LE(p.size(), limit);
  }
}

TEST(ExtractPathsTest, ArraysAreTransparent) {
  const auto paths = Paths(fixtures::DuplicatedSubtreeDocument());
  EXPECT_TRUE(paths.count("/Pages/Kids/Parent"));
  EXPECT_FALSE(paths.count("/Pages/0"));
}

TEST(ExtractPathsTest, MatchesNaiveEnumerationOnRandomGraphs) {
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 500; ++trial) {
    const ObjectGraph g = RandomGraph(rng);
    const size_t limit = 1 + rng() % 6;
    ASSERT_EQ(RenderAll(ExtractPaths(g, limit)), NaivePaths(g, limit)) << "trial " << trial;
  }
}

TEST(ExtractPathsTest, DeletionIsMonotone) {
  for (const auto& [id, g] : fixtures::AllFixtures()) {
    for (const auto& p : ExtractPaths(g)) {
      const auto after = ExtractPaths(mutation::DeletePath(g, p).graph);
      EXPECT_TRUE(std::includes(ExtractPaths(g).begin(), ExtractPaths(g).end(), after.begin(),
                                after.end()))
          << id << " " << p.rendered();
      EXPECT_FALSE(after.count(p)) << id << " " << p.rendered();
    }
  }
}

TEST(ConsolidateTest, Examples) {
  const auto defaults = DefaultConsolidationRules();
  const auto open_s = StructuralPath::Parse("/OpenAction/S");
  EXPECT_EQ(Consolidate(open_s, defaults), open_s);
  EXPECT_EQ(Consolidate(open_s, {}), open_s);
  const auto rule = ConsolidationRule::Parse("/Pages/Kids/* -> /Pages/Kids");
  EXPECT_EQ(Consolidate(StructuralPath::Parse("/Pages/Kids/Kids/Count"), {rule}).rendered(),
            "/Pages/Kids/Count");
  EXPECT_EQ(Consolidate(StructuralPath::Parse("/Pages/Kids/Count"), {rule}).rendered(),
            "/Pages/Kids/Count");
}

TEST(ConsolidateTest, FirstMatchingRuleOnly) {
  const std::vector<ConsolidationRule> rules = {ConsolidationRule::Parse("/A -> /B"),
                                                ConsolidationRule::Parse("/B -> /C"),
                                                ConsolidationRule::Parse("/A/X -> /Z")};
  EXPECT_EQ(Consolidate(StructuralPath::Parse("/A/X"), rules).rendered(), "/B/X");
  EXPECT_EQ(Consolidate(StructuralPath::Parse("/B"), rules).rendered(), "/C");
}

TEST(ConsolidateTest, DefaultRulesIdempotent) {
  const auto rules = DefaultConsolidationRules();
  std::mt19937 rng(7);
  const char* kParts[] = {"Pages", "Kids", "Names", "Dests", "JS", "Parent"};
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::string> comps;
    const int n = 1 + static_cast<int>(rng() % 7);
    for (int k = 0; k < n; ++k) comps.push_back(kParts[rng() % 6]);
    const StructuralPath once = Consolidate(StructuralPath(comps), rules);
    EXPECT_EQ(Consolidate(once, rules), once) << once.rendered();
  }
}

TEST(ConsolidateTest, RuleFileRoundTrip) {
  const auto rules = ParseRuleFile("# comment\n\n/Pages/Kids/* -> /Pages/Kids\n/A -> /B # tail\n");
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_TRUE(rules[0].repeat_last);
  const auto again = ParseRuleFile(FormatRuleFile(rules));
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again[0].ToString(), rules[0].ToString());
  EXPECT_THROW(ParseRuleFile("/A -> \n"), std::invalid_argument);
  EXPECT_THROW(ParseRuleFile("nonsense\n"), std::invalid_argument);
}

TEST(PdfRateTest, Examples) {
  const CountFeatureDef javascript{"count_javascript", {"JavaScript"}, 1};
  EXPECT_EQ(ExtractPdfRateB(fixtures::OpenActionDocument(), {javascript}).bits(),
            std::vector<uint8_t>{1});
  const auto zeros = ExtractPdfRateB(fixtures::EmptyCatalogDocument(), DefaultCountFeatureDefs());
  EXPECT_TRUE(std::all_of(zeros.bits().begin(), zeros.bits().end(), [](uint8_t b) { return b == 0; }));
  const CountFeatureDef page{"count_page", {"Page"}, 1};
  EXPECT_EQ(ExtractPdfRateB(fixtures::ThreePagesDocument(), {page}).bits(), std::vector<uint8_t>{1});
  EXPECT_EQ(CountOccurrences(fixtures::ThreePagesDocument(), {page}).at("count_page"), 3u);
}

TEST(PdfRateTest, ThresholdAndUnreachableObjects) {
  CountFeatureDef page{"count_page", {"Page"}, 4};
  EXPECT_EQ(ExtractPdfRateB(fixtures::ThreePagesDocument(), {page}).bits(), std::vector<uint8_t>{0});
  auto objects = fixtures::ThreePagesDocument().objects();
  objects[9] = Dictionary{{"Type", MakeName("Page")}};  // unreachable
  const ObjectGraph g(objects, Dictionary{{"Root", MakeRef(1)}}, pdf::Provenance::kMutated);
  EXPECT_EQ(ExtractPdfRateB(g, {page}).bits(), std::vector<uint8_t>{1});
}

TEST(PdfRateTest, AddingMatchingObjectNeverClearsBits) {
  const auto defs = DefaultCountFeatureDefs();
  const char* kTokens[] = {"JS", "JavaScript", "Page", "CropBox", "Other"};
  std::mt19937 rng(3);
  for (const auto& [id, g] : fixtures::AllFixtures()) {
    const auto before = ExtractPdfRateB(g, defs);
    auto objects = g.objects();
    objects[g.MaxObjectNumber() + 1] = Dictionary{{kTokens[rng() % 5], MakeName(kTokens[rng() % 5])}};
    const auto after = ExtractPdfRateB(ObjectGraph(objects, g.trailer(), pdf::Provenance::kMutated), defs);
    for (size_t i = 0; i < before.size(); ++i) EXPECT_GE(after[i], before[i]) << id;
  }
}

TEST(PdfRateTest, ParseDefinitions) {
  const auto defs = ParseCountFeatureDefs(R"([{"name":"count_js","match":["JS"],"threshold":2}])");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].threshold, 2u);
  EXPECT_THROW(ParseCountFeatureDefs(R"([{"name":"a","match":[]}])"), std::invalid_argument);
  EXPECT_THROW(ParseCountFeatureDefs(R"([{"name":"a","match":["x"],"threshold":0}])"),
               std::invalid_argument);
  EXPECT_THROW(ParseCountFeatureDefs(R"([{"name":"a","match":["x"]},{"name":"a","match":["y"]}])"),
               std::invalid_argument);
}

TEST(FeatureSpaceTest, BuildIsSortedUnionAndOrderFree) {
  const std::vector<ObjectGraph> corpus = {fixtures::OpenActionDocument(), fixtures::ThreePagesDocument()};
  const FeatureSpace space = BuildFeatureSpace(corpus, SpaceKind::kSL2013, {});
  std::set<std::string> expected = Paths(corpus[0]);
  for (const auto& p : Paths(corpus[1])) expected.insert(p);
  EXPECT_EQ(space.names(), std::vector<std::string>(expected.begin(), expected.end()));
  const std::vector<ObjectGraph> reversed = {corpus[1], corpus[0]};
  EXPECT_EQ(BuildFeatureSpace(reversed, SpaceKind::kSL2013, {}), space);
  EXPECT_THROW(BuildFeatureSpace({}, SpaceKind::kSL2013, {}), std::invalid_argument);
}

TEST(FeatureSpaceTest, FileTextRoundTrip) {
  const FeatureSpace space(SpaceKind::kHidost, {"/b", "/a", "/b"});
  EXPECT_EQ(space.names(), (std::vector<std::string>{"/a", "/b"}));
  EXPECT_EQ(space.ToFileText(), "/a\n/b\n");
  EXPECT_EQ(FeatureSpace::FromFileText(SpaceKind::kHidost, space.ToFileText()), space);
  EXPECT_EQ(space.Sha256().size(), 64u);
}

TEST(FeatureSpaceTest, PdfRateBSpaceIsDefinitionNames) {
  const FeatureSpace space = BuildFeatureSpace({fixtures::MinimalDocument()}, SpaceKind::kPdfRateB, {});
  EXPECT_EQ(space.names(), (std::vector<std::string>{"count_box_other", "count_javascript", "count_js",
                                                     "count_page"}));
}

TEST(VectorizeTest, Examples) {
  auto space = std::make_shared<const FeatureSpace>(SpaceKind::kSL2013,
                                                    std::vector<std::string>{"/OpenAction", "/Pages"});
  EXPECT_EQ(Vectorize({StructuralPath::Parse("/Pages")}, space).vector.bits(),
            (std::vector<uint8_t>{0, 1}));
  EXPECT_EQ(Vectorize({}, space).vector.bits(), (std::vector<uint8_t>{0, 0}));
  const Vectorized v = Vectorize({StructuralPath::Parse("/Pages"), StructuralPath::Parse("/Zzz")}, space);
  EXPECT_EQ(v.vector.bits(), (std::vector<uint8_t>{0, 1}));
  EXPECT_EQ(v.ignored, 1u);
  auto pdfrate = std::make_shared<const FeatureSpace>(SpaceKind::kPdfRateB, std::vector<std::string>{"a"});
  EXPECT_THROW(Vectorize({}, pdfrate), std::invalid_argument);
}

TEST(FeatureVectorTest, Validation) {
  auto space = std::make_shared<const FeatureSpace>(SpaceKind::kSL2013, std::vector<std::string>{"/a", "/b"});
  EXPECT_THROW(FeatureVector(space, {1}), std::invalid_argument);
  EXPECT_THROW(FeatureVector(space, {1, 2}), std::invalid_argument);
  FeatureVector v(space, {1, 0});
  v.Flip(1);
  EXPECT_EQ(v.BitString(), "11");
}

TEST(DocumentFeaturesTest, HidostAppliesRules) {
  SpaceParams params;
  params.rules = {ConsolidationRule::Parse("/Pages/Kids -> /PK")};
  const auto names = DocumentFeatures(fixtures::ThreePagesDocument(), SpaceKind::kHidost, params);
  EXPECT_TRUE(names.count("/PK/Parent"));
  EXPECT_FALSE(names.count("/Pages/Kids/Parent"));
}

}  // namespace
}  // namespace cpath::features
