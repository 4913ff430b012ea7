#include <chrono>
#include <memory>
#include <string>

#include "cpath/features/extract.h"
#include "cpath/mutation/mutate.h"
#include "cpath/oracle/cached_oracle.h"
#include "cpath/oracle/command_oracle.h"
#include "cpath/oracle/rule_oracle.h"
#include "cpath/pdf/writer.h"
#include "cpath/util/encoding.h"
#include "fixtures/fixtures.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cpath::oracle {
namespace {

using features::StructuralPath;
using namespace std::chrono_literals;

std::string Bytes(const pdf::ObjectGraph& g) { return pdf::SerializePdf(g); }

OracleFailure FailureOf(Oracle& oracle, std::string_view pdf) {
  try {
    oracle.Evaluate(pdf);
  } catch (const OracleError& e) {
    return e.failure();
  }
  ADD_FAILURE() << "no OracleError";
  return OracleFailure::kParseFailure;
}

RuleOracle FixtureOracle() { return RuleOracle(ParseSignatureRules(fixtures::SignatureRulesJson())); }

TEST(RuleOracleTest, AnyNonEmptyExample) {
  RuleOracle oracle(ParseSignatureRules(
      R"([{"id":"oa","path":"/OpenAction/JS","predicate":"any_non_empty"}])"));
  const auto g = fixtures::OpenActionDocument();
  const Verdict v = oracle.Evaluate(Bytes(g));
  EXPECT_TRUE(v.malicious());
  EXPECT_EQ(v.signatures, std::vector<std::string>{"oa"});
  const auto deleted = mutation::DeletePath(g, StructuralPath::Parse("/OpenAction/JS")).graph;
  const Verdict after = oracle.Evaluate(Bytes(deleted));
  EXPECT_FALSE(after.malicious());
  EXPECT_TRUE(after.signatures.empty());
}

TEST(RuleOracleTest, CorpusLabels) {
  RuleOracle oracle = FixtureOracle();
  for (const auto& [id, g] : fixtures::MaliciousCorpus()) {
    EXPECT_TRUE(oracle.Evaluate(Bytes(g)).malicious()) << id;
  }
  for (const auto& [id, g] : fixtures::CleanCorpus()) {
    EXPECT_FALSE(oracle.Evaluate(Bytes(g)).malicious()) << id;
  }
  EXPECT_FALSE(oracle.Evaluate(Bytes(fixtures::BenignDonor())).malicious());
}

TEST(RuleOracleTest, UnparseableInputIsParseFailure) {
  RuleOracle oracle = FixtureOracle();
  EXPECT_EQ(FailureOf(oracle, "not a pdf"), OracleFailure::kParseFailure);
}

TEST(RuleOracleTest, ConsistentWithPathsAndPredicates) {
  RuleOracle oracle = FixtureOracle();
  for (const auto& [id, g] : fixtures::AllFixtures()) {
    // Every graph the oracle could see during a deletion pass.
    std::vector<pdf::ObjectGraph> variants{g};
    for (const auto& p : features::ExtractPaths(g)) variants.push_back(mutation::DeletePath(g, p).graph);
    for (const auto& v : variants) {
      bool expected = false;
      const auto paths = features::ExtractPaths(v);
      for (const auto& rule : oracle.rules()) {
        if (!paths.count(rule.required_path)) continue;
        for (const auto& site : mutation::LocateSites(v, rule.required_path)) {
          expected |= PredicateHolds(v, *mutation::ValueAt(v, site), rule.predicate);
        }
      }
      EXPECT_EQ(oracle.Evaluate(Bytes(v)).malicious(), expected) << id;
    }
  }
}

TEST(RuleOracleTest, DeletingOnlyMatchingPathIsBenign) {
  RuleOracle oracle = FixtureOracle();
  for (const auto& [id, g] : fixtures::MaliciousCorpus()) {
    const Verdict v = oracle.EvaluateGraph(g);
    if (v.signatures.size() != 1) continue;
    for (const auto& rule : oracle.rules()) {
      if (rule.id != v.signatures[0]) continue;
      const auto deleted = mutation::DeletePath(g, rule.required_path).graph;
      EXPECT_FALSE(oracle.Evaluate(Bytes(deleted)).malicious()) << id;
    }
  }
}

TEST(RuleOracleTest, ContainsTokenSeesStreamsAndReferences) {
  RuleOracle oracle = FixtureOracle();
  const auto a2 = fixtures::MaliciousCorpus()[1].graph;  // payload in a referenced stream
  EXPECT_EQ(oracle.EvaluateGraph(a2).signatures, std::vector<std::string>{"openaction-js"});
}

TEST(RuleOracleTest, RuleParsing) {
  EXPECT_THROW(ParseSignatureRules(R"([{"id":"x","path":"bad","predicate":"any_non_empty"}])"),
               std::invalid_argument);
  EXPECT_THROW(ParseSignatureRules(R"([{"id":"x","path":"/A","predicate":"sometimes"}])"),
               std::invalid_argument);
  EXPECT_THROW(ParseSignatureRules(R"({"id":"x"})"), std::invalid_argument);
  const auto rules = ParseSignatureRules(R"([{"id":"x","path":"/A","predicate":{"contains":"tok"}}])");
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(std::get<ContainsToken>(rules[0].predicate).token, "tok");
}

TEST(RuleOracleTest, PredicateEmptiness) {
  const auto g = fixtures::MinimalDocument();
  EXPECT_FALSE(PredicateHolds(g, pdf::MakeText(""), AnyNonEmpty{}));
  EXPECT_FALSE(PredicateHolds(g, pdf::Object(), AnyNonEmpty{}));
  EXPECT_TRUE(PredicateHolds(g, pdf::MakeName("X"), AnyNonEmpty{}));
  EXPECT_TRUE(PredicateHolds(g, pdf::Object(0), AnyNonEmpty{}));
  EXPECT_FALSE(PredicateHolds(g, pdf::MakeRef(77), AnyNonEmpty{}));
}

TEST(VerdictStoreTest, JsonlRoundTripAndValidation) {
  VerdictStore store;
  store.Put(std::string(64, 'a'), Verdict{Outcome::kMalicious, {"sig"}, 5ms});
  store.Put(std::string(64, 'b'), Verdict{Outcome::kBenign, {}, 0ms});
  const std::string text = store.ToJsonl();
  const VerdictStore back = VerdictStore::FromJsonl(text);
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(*back.Find(std::string(64, 'a')), (Verdict{Outcome::kMalicious, {"sig"}, 0ms}));
  EXPECT_EQ(back.ToJsonl(), text);
  EXPECT_THROW(VerdictStore::FromJsonl(R"({"sha256":"ab","verdict":"malicious","signatures":[]})"),
               std::invalid_argument);
  EXPECT_THROW(VerdictStore::FromJsonl("{oops}\n"), std::invalid_argument);
  EXPECT_EQ(VerdictStore::FromJsonl("").size(), 0u);
}

TEST(CachedOracleTest, StrictMissIsProtocolViolation) {
  CachedOracle oracle(VerdictStore{}, true);
  try {
    oracle.Evaluate("whatever");
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.failure(), OracleFailure::kProtocolViolation);
    EXPECT_NE(std::string(e.what()).find("cache miss in strict mode"), std::string::npos);
  }
  EXPECT_EQ(oracle.max_parallelism(), kUnlimitedParallelism);
}

TEST(CachedOracleTest, PermissiveRecordsAndReplays) {
  auto rules = std::make_shared<RuleOracle>(FixtureOracle());
  CachedOracle oracle(VerdictStore{}, false, rules);
  const std::string bytes = Bytes(fixtures::MaliciousCorpus()[0].graph);
  const Verdict first = oracle.Evaluate(bytes);
  const Verdict second = oracle.Evaluate(bytes);
  EXPECT_EQ(first, second);
  EXPECT_EQ(oracle.misses(), 1u);
  EXPECT_EQ(oracle.hits(), 1u);
  const VerdictStore snap = oracle.Snapshot();
  ASSERT_NE(snap.Find(Sha256Hex(bytes)), nullptr);
  // A strict replay of the snapshot answers without the fallback.
  CachedOracle replay(VerdictStore::FromJsonl(snap.ToJsonl()), true);
  EXPECT_EQ(replay.Evaluate(bytes), first);
  EXPECT_THROW(CachedOracle(VerdictStore{}, false), std::invalid_argument);
}

TEST(ParseCommandOutputTest, Protocol) {
  EXPECT_EQ(ParseCommandOutput(R"({"verdict":"malicious","signatures":["a"]})"),
            (Verdict{Outcome::kMalicious, {"a"}, 0ms}));
  EXPECT_EQ(ParseCommandOutput("{\"verdict\":\"benign\",\"signatures\":[]}\n").outcome, Outcome::kBenign);
  for (const char* bad : {"", "nope", R"({"verdict":"maybe","signatures":[]})",
                          R"({"verdict":"malicious","signatures":[]})",
                          R"({"verdict":"benign","signatures":["x"]})", R"({"verdict":"benign"})"}) {
    EXPECT_THROW(ParseCommandOutput(bad), OracleError) << bad;
  }
}

class CommandOracleTest : public ::testing::Test {
 protected:
  testing::TempDir dir_;
};

TEST_F(CommandOracleTest, ReportsProgramVerdict) {
  // Malicious when the file contains the payload token.
  const auto script = testing::WriteScript(
      dir_.path(), "grep_oracle.sh",
      "if grep -q 'unescape' \"$1\"; then\n"
      "  echo '{\"verdict\":\"malicious\",\"signatures\":[\"token\"]}'\n"
      "else\n"
      "  echo '{\"verdict\":\"benign\",\"signatures\":[]}'\n"
      "fi\n");
  CommandOracle oracle(script.string(), 10s, 4);
  EXPECT_EQ(oracle.max_parallelism(), 4u);
  EXPECT_TRUE(oracle.Evaluate(Bytes(fixtures::MaliciousCorpus()[0].graph)).malicious());
  EXPECT_FALSE(oracle.Evaluate(Bytes(fixtures::MinimalDocument())).malicious());
}

TEST_F(CommandOracleTest, Timeout) {
  const auto script = testing::WriteScript(dir_.path(), "slow.sh", "sleep 5\necho '{}'\n");
  CommandOracle oracle(script.string(), 200ms);
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(FailureOf(oracle, "%PDF-1.5"), OracleFailure::kTimeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 3s);
}

TEST_F(CommandOracleTest, NonZeroExit) {
  const auto script = testing::WriteScript(
      dir_.path(), "fail.sh", "echo '{\"verdict\":\"benign\",\"signatures\":[]}'\nexit 3\n");
  CommandOracle oracle(script.string(), 10s);
  EXPECT_EQ(FailureOf(oracle, "%PDF-1.5"), OracleFailure::kProtocolViolation);
}

TEST_F(CommandOracleTest, MalformedOutput) {
  const auto script = testing::WriteScript(dir_.path(), "chatty.sh", "echo 'all good'\n");
  CommandOracle oracle(script.string(), 10s);
  EXPECT_EQ(FailureOf(oracle, "%PDF-1.5"), OracleFailure::kProtocolViolation);
}

TEST_F(CommandOracleTest, MissingProgram) {
  CommandOracle oracle((dir_.path() / "does_not_exist").string(), 10s);
  EXPECT_THROW(oracle.Evaluate("%PDF-1.5"), OracleError);
}

TEST_F(CommandOracleTest, ReceivesExactBytes) {
  const auto script = testing::WriteScript(
      dir_.path(), "hash.sh",
      "if [ \"$(sha256sum \"$1\" | cut -d' ' -f1)\" = \"" + Sha256Hex("%PDF-exact\n") + "\" ]; then\n"
      "  echo '{\"verdict\":\"malicious\",\"signatures\":[\"same\"]}'\n"
      "else\n"
      "  echo '{\"verdict\":\"benign\",\"signatures\":[]}'\n"
      "fi\n");
  CommandOracle oracle(script.string(), 10s);
  EXPECT_TRUE(oracle.Evaluate("%PDF-exact\n").malicious());
}

}  // namespace
}  // namespace cpath::oracle
