#include <string>

#include "cpath/pdf/graph.h"
#include "cpath/pdf/json_io.h"
#include "cpath/pdf/parser.h"
#include "cpath/pdf/writer.h"
#include "cpath/util/error.h"
#include "fixtures/fixtures.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cpath::pdf {
namespace {

using testing::Paths;
using testing::RawPdf;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

std::string MinimalBody(RawPdf& pdf) {
  pdf.Object(1, "<</Type /Catalog /Pages 2 0 R>>")
      .Object(2, "<</Type /Pages /Kids [3 0 R] /Count 1>>")
      .Object(3, "<</Type /Page /Parent 2 0 R /MediaBox [0 0 612 792]>>");
  return pdf.bytes();
}

TEST(ParsePdfTest, MinimalDocument) {
  RawPdf pdf;
  MinimalBody(pdf);
  pdf.XrefTable("/Root 1 0 R");
  const ObjectGraph g = ParsePdf(pdf.bytes());
  EXPECT_EQ(g.objects().size(), 3u);
  EXPECT_EQ(g.provenance(), Provenance::kParsedPdf);
  EXPECT_EQ(g.catalog().at("Type"), MakeName("Catalog"));
  EXPECT_EQ(Resolve(g, Reference{1, 0}), Object(g.catalog()));
}

TEST(ParsePdfTest, OpenActionDictionaryReachable) {
  RawPdf pdf;
  pdf.Object(1, "<</Type /Catalog /Pages 2 0 R /OpenAction <</S /JavaScript /JS (app.alert\\(1\\))>>>>")
      .Object(2, "<</Type /Pages /Kids [] /Count 0>>")
      .XrefTable("/Root 1 0 R");
  const ObjectGraph g = ParsePdf(pdf.bytes());
  const Object& action = g.catalog().at("OpenAction");
  ASSERT_TRUE(action.IsDict());
  EXPECT_EQ(action.AsDict().at("S"), MakeName("JavaScript"));
  EXPECT_EQ(action.AsDict().at("JS"), MakeText("app.alert(1)"));
}

TEST(ParsePdfTest, HexStringsAndEscapes) {
  const Object o = ParseObjectText("[<48656C6C6F> (a\\)b\\n) /A#20B -1.5 true null 3 0 R]");
  const Array& a = o.AsArray();
  ASSERT_EQ(a.size(), 7u);
  EXPECT_EQ(a[0], MakeText("Hello"));
  EXPECT_EQ(a[1], MakeText("a)b\n"));
  EXPECT_EQ(a[2], MakeName("A B"));
  EXPECT_DOUBLE_EQ(a[3].AsNumber(), -1.5);
  EXPECT_TRUE(a[4].IsBool());
  EXPECT_TRUE(a[5].IsNull());
  EXPECT_EQ(a[6], MakeRef(3));
}

TEST(ParsePdfTest, IncrementalUpdateNewestWins) {
  RawPdf pdf;
  MinimalBody(pdf);
  pdf.XrefTable("/Root 1 0 R");
  pdf.Object(1, "<</Type /Catalog /Pages 2 0 R /OpenAction 4 0 R>>")
      .Object(4, "<</S /JavaScript /JS (x)>>")
      .XrefTable("/Root 1 0 R");
  const ObjectGraph g = ParsePdf(pdf.bytes());
  EXPECT_EQ(g.objects().size(), 4u);
  EXPECT_TRUE(Paths(g).count("/OpenAction/JS"));
  EXPECT_TRUE(Paths(g).count("/Pages/Kids/MediaBox"));
}

TEST(ParsePdfTest, XrefStreamWithObjectStream) {
  // Objects 2 and 3 live in object stream 4; the xref stream is object 5.
  const std::string objects = "<</Type /Pages /Kids [3 0 R] /Count 1>> <</Type /Page /Parent 2 0 R>>";
  const std::string header = "2 0 3 40 ";
  const std::string payload = header + objects;
  ASSERT_EQ(payload.find("<</Type /Page /Parent"), header.size() + 40);
  RawPdf pdf;
  pdf.Object(1, "<</Type /Catalog /Pages 2 0 R>>")
      .StreamObject(4, "/Type /ObjStm /N 2 /First " + std::to_string(header.size()) +
                           " /Filter /FlateDecode",
                    testing::Deflate(payload))
      .XrefStream(5, "/Root 1 0 R", {{2, {4, 0}}, {3, {4, 1}}});
  const ObjectGraph g = ParsePdf(pdf.bytes());
  EXPECT_EQ(Paths(g), (std::set<std::string>{"/Pages", "/Pages/Count", "/Pages/Kids",
                                             "/Pages/Kids/Parent", "/Pages/Kids/Type",
                                             "/Pages/Type", "/Type"}));
  // Structural streams are unpacked, not kept.
  EXPECT_EQ(g.Find(4), nullptr);
  EXPECT_EQ(g.Find(5), nullptr);
}

TEST(ParsePdfTest, XrefStreamUpdateOverClassicTable) {
  RawPdf pdf;
  MinimalBody(pdf);
  pdf.XrefTable("/Root 1 0 R");
  pdf.Object(1, "<</Type /Catalog /Pages 2 0 R /Lang (en)>>").XrefStream(6, "/Root 1 0 R");
  EXPECT_TRUE(Paths(ParsePdf(pdf.bytes())).count("/Lang"));
}

TEST(ParsePdfTest, EncryptedDocumentUnsupported) {
  RawPdf pdf;
  MinimalBody(pdf);
  pdf.Object(9, "<</Filter /Standard /V 1 /R 2>>").XrefTable("/Root 1 0 R /Encrypt 9 0 R");
  EXPECT_EQ(CodeOf([&] { ParsePdf(pdf.bytes()); }), ErrorCode::kUnsupportedConstruct);
}

TEST(ParsePdfTest, BrokenXrefRecoveredByScanning) {
  RawPdf pdf;
  MinimalBody(pdf);
  std::string bytes = pdf.bytes() + "trailer\n<</Size 4 /Root 1 0 R>>\nstartxref\n999999\n%%EOF\n";
  const ObjectGraph g = ParsePdf(bytes);
  EXPECT_EQ(g.objects().size(), 3u);
}

TEST(ParsePdfTest, MalformedInputs) {
  EXPECT_EQ(CodeOf([] { ParsePdf(""); }), ErrorCode::kMalformedPdf);
  EXPECT_EQ(CodeOf([] { ParsePdf("hello world"); }), ErrorCode::kMalformedPdf);
  RawPdf no_root;
  MinimalBody(no_root);
  no_root.XrefTable("");
  EXPECT_EQ(CodeOf([&] { ParsePdf(no_root.bytes()); }), ErrorCode::kMalformedPdf);
}

TEST(ParsePdfTest, SameBytesSameGraph) {
  const std::string bytes = SerializePdf(fixtures::MaliciousCorpus()[4].graph);
  EXPECT_EQ(ParsePdf(bytes), ParsePdf(bytes));
}

TEST(ResolveTest, DanglingAndChains) {
  const ObjectGraph g = fixtures::IndirectionChainDocument();
  const Object terminal = Resolve(g, Reference{4, 0});
  ASSERT_TRUE(terminal.IsDict());
  EXPECT_EQ(terminal.AsDict().at("S"), MakeName("JavaScript"));
  EXPECT_TRUE(Resolve(g, Reference{99, 0}).IsNull());
  EXPECT_EQ(Resolve(g, MakeText("x")), MakeText("x"));
}

TEST(ResolveTest, ReferenceCycleIsNull) {
  const ObjectGraph g({{1, Dictionary{}}, {2, MakeRef(3)}, {3, MakeRef(2)}},
                      Dictionary{{"Root", MakeRef(1)}}, Provenance::kParsedPdf);
  EXPECT_TRUE(Resolve(g, Reference{2, 0}).IsNull());
}

TEST(ObjectGraphTest, RootMustBeDictionary) {
  EXPECT_EQ(CodeOf([] {
              ObjectGraph({{1, MakeText("x")}}, Dictionary{{"Root", MakeRef(1)}},
                          Provenance::kParsedPdf);
            }),
            ErrorCode::kMalformedPdf);
  EXPECT_EQ(CodeOf([] { ObjectGraph({{1, Dictionary{}}}, Dictionary{}, Provenance::kParsedPdf); }),
            ErrorCode::kMalformedPdf);
}

TEST(ObjectGraphTest, DanglingReferencesListed) {
  const ObjectGraph g({{1, Dictionary{{"Outlines", MakeRef(7)}}}}, Dictionary{{"Root", MakeRef(1)}},
                      Provenance::kMutated);
  ASSERT_EQ(g.DanglingReferences().size(), 1u);
  EXPECT_EQ(g.DanglingReferences()[0].number, 7u);
}

TEST(SerializePdfTest, SingleRevisionLayout) {
  const std::string bytes = SerializePdf(fixtures::MinimalDocument());
  EXPECT_EQ(bytes.rfind("%PDF-1.5", 0), 0u);
  auto count = [&bytes](std::string_view needle) {
    size_t n = 0;
    for (size_t p = bytes.find(needle); p != std::string::npos; p = bytes.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("\nxref\n"), 1u);
  EXPECT_EQ(count("trailer"), 1u);
  EXPECT_EQ(count(" 0 obj"), 3u);
  EXPECT_EQ(bytes.substr(bytes.size() - 6), "%%EOF\n");
}

TEST(SerializePdfTest, DanglingReferenceWrittenAsNull) {
  const ObjectGraph g({{1, Dictionary{{"Outlines", MakeRef(7)}, {"Pages", MakeRef(1)}}}},
                      Dictionary{{"Root", MakeRef(1)}}, Provenance::kMutated);
  const std::string bytes = SerializePdf(g);
  EXPECT_NE(bytes.find("/Outlines null"), std::string::npos);
  const ObjectGraph back = ParsePdf(bytes);
  EXPECT_TRUE(back.catalog().at("Outlines").IsNull());
  EXPECT_TRUE(back.DanglingReferences().empty());
}

TEST(SerializePdfTest, NestedStreamRejected) {
  const ObjectGraph g({{1, Dictionary{{"Metadata", Stream{Dictionary{}, "x"}}}}},
                      Dictionary{{"Root", MakeRef(1)}}, Provenance::kMutated);
  EXPECT_EQ(CodeOf([&] { SerializePdf(g); }), ErrorCode::kSerializationFailure);
}

TEST(SerializePdfTest, GenerationsNormalized) {
  RawPdf pdf;
  pdf.Raw("1 3 obj\n<</Type /Catalog /Pages 2 5 R>>\nendobj\n2 5 obj\n<</Count 0>>\nendobj\n");
  pdf.Raw("trailer\n<</Root 1 3 R>>\n%%EOF\n");
  const std::string bytes = SerializePdf(ParsePdf(pdf.bytes()));
  EXPECT_EQ(bytes.find(" 3 obj"), std::string::npos);
  EXPECT_NE(bytes.find("/Pages 2 0 R"), std::string::npos);
}

TEST(SerializePdfTest, RoundTripPreservesPathsAndStreams) {
  for (const auto& [id, graph] : fixtures::AllFixtures()) {
    SCOPED_TRACE(id);
    const std::string bytes = SerializePdf(graph);
    const ObjectGraph back = ParsePdf(bytes);
    EXPECT_EQ(Paths(back), Paths(graph));
    EXPECT_EQ(SerializePdf(back), bytes);
    for (const auto& [n, o] : graph.objects()) {
      if (o.IsStream()) EXPECT_EQ(back.Find(n)->AsStream().data, o.AsStream().data);
    }
  }
}

TEST(GraphJsonTest, MinimalSchema) {
  const ObjectGraph g =
      LoadGraphJson(R"({"trailer":{"Root":{"ref":1}},"objects":{"1":{"dict":{"Type":{"name":"Catalog"}}}}})");
  EXPECT_EQ(g.objects().size(), 1u);
  EXPECT_EQ(g.provenance(), Provenance::kLoadedJson);
  EXPECT_EQ(Paths(g), (std::set<std::string>{"/Type"}));
}

TEST(GraphJsonTest, SchemaViolations) {
  EXPECT_EQ(CodeOf([] { LoadGraphJson(R"({"trailer":{},"objects":{"1":{"dict":{}}}})"); }),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(CodeOf([] { LoadGraphJson("[1,2]"); }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(CodeOf([] { LoadGraphJson(R"({"trailer":{"Root":{"ref":1}},"objects":{"x":null}})"); }),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(CodeOf([] {
              LoadGraphJson(R"({"trailer":{"Root":{"ref":1}},"objects":{"1":{"text_b64":"@@"}}})");
            }),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(CodeOf([] { LoadGraphJson("{not json"); }), ErrorCode::kSchemaViolation);
}

TEST(GraphJsonTest, ErrorNamesJsonPath) {
  try {
    LoadGraphJson(R"({"trailer":{"Root":{"ref":1}},"objects":{"1":{"dict":{"A":{"bogus":1}}}}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("objects.1"), std::string::npos) << e.what();
  }
}

TEST(GraphJsonTest, LoadersAgree) {
  for (const auto& [id, graph] : fixtures::AllFixtures()) {
    SCOPED_TRACE(id);
    const std::string json = SerializeGraphJson(graph);
    const ObjectGraph from_json = LoadGraphJson(json);
    EXPECT_EQ(from_json, graph);
    EXPECT_EQ(Paths(from_json), Paths(ParsePdf(SerializePdf(graph))));
    EXPECT_EQ(SerializeGraphJson(from_json), json);
  }
}

}  // namespace
}  // namespace cpath::pdf
