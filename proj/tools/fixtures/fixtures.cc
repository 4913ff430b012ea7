#include "fixtures/fixtures.h"

#include <utility>

namespace cpath::fixtures {
namespace {

using pdf::Array;
using pdf::Dictionary;
using pdf::MakeName;
using pdf::MakeRef;
using pdf::MakeText;
using pdf::Object;
using pdf::ObjectGraph;
using pdf::Stream;

constexpr char kPayload[] =
    "var s = unescape('%u4141%u4141%u4141'); while (s.length < 4096) s += s; app.alert(s.length);";

class Builder {
 public:
  Builder& Add(pdf::ObjectNumber n, Object value) {
    objects_.insert_or_assign(n, std::move(value));
    return *this;
  }
  ObjectGraph Build(pdf::ObjectNumber root = 1) const {
    return ObjectGraph(objects_, Dictionary{{"Root", MakeRef(root)}}, pdf::Provenance::kParsedPdf);
  }

 private:
  ObjectGraph::ObjectMap objects_;
};

Object MediaBox() { return Array{0, 0, 612, 792}; }

Object JsAction(std::string script) {
  return Dictionary{{"S", MakeName("JavaScript")}, {"JS", MakeText(std::move(script))}};
}

Dictionary Page(pdf::ObjectNumber parent) {
  return Dictionary{{"Type", MakeName("Page")}, {"Parent", MakeRef(parent)}, {"MediaBox", MediaBox()}};
}

Dictionary PageTree(Array kids) {
  const int count = static_cast<int>(kids.size());
  return Dictionary{{"Type", MakeName("Pages")}, {"Kids", std::move(kids)}, {"Count", count}};
}

Dictionary Catalog() {
  return Dictionary{{"Type", MakeName("Catalog")}, {"Pages", MakeRef(2)}};
}

// Catalog (1), page tree (2) and one page (3); callers add to the catalog.
Builder BaseDocument(Dictionary catalog_extra) {
  Dictionary catalog = Catalog();
  for (auto& [k, v] : catalog_extra) catalog.insert_or_assign(k, std::move(v));
  Builder b;
  b.Add(1, std::move(catalog)).Add(2, PageTree(Array{MakeRef(3)})).Add(3, Page(2));
  return b;
}

Object Metadata() {
  return Stream{Dictionary{{"Type", MakeName("Metadata")}, {"Subtype", MakeName("XML")}},
                "<?xpacket begin=''?><x:xmpmeta xmlns:x='adobe:ns:meta/'/><?xpacket end='w'?>"};
}

}  // namespace

ObjectGraph MinimalDocument() { return BaseDocument({}).Build(); }

ObjectGraph OpenActionDocument() {
  return BaseDocument({{"OpenAction", JsAction("app.alert(1)")}}).Build();
}

ObjectGraph LeafPagesDocument() {
  return Builder()
      .Add(1, Dictionary{{"Type", MakeName("Catalog")}, {"Pages", MakeRef(2)}})
      .Add(2, Dictionary{})
      .Build();
}

ObjectGraph EmptyCatalogDocument() { return Builder().Add(1, Dictionary{}).Build(); }

ObjectGraph CyclicPagesDocument() {
  Dictionary page = Page(2);
  page["Self"] = MakeRef(3);
  page["Catalog"] = MakeRef(1);
  Dictionary tree = PageTree(Array{MakeRef(3)});
  tree["Loop"] = MakeRef(2);
  return Builder().Add(1, Catalog()).Add(2, std::move(tree)).Add(3, std::move(page)).Build();
}

ObjectGraph DuplicatedSubtreeDocument() {
  Dictionary catalog{{"Type", MakeName("Catalog")}, {"Pages", Array{MakeRef(2), MakeRef(4)}}};
  return Builder()
      .Add(1, std::move(catalog))
      .Add(2, PageTree(Array{MakeRef(3)}))
      .Add(3, Page(2))
      .Add(4, PageTree(Array{MakeRef(5)}))
      .Add(5, Page(4))
      .Build();
}

ObjectGraph NamesChainDocument() {
  Dictionary names{{"JavaScript", Dictionary{{"Names", Array{MakeText("startup"), JsAction(kPayload)}}}}};
  return BaseDocument({{"Names", std::move(names)}}).Build();
}

ObjectGraph ThreePagesDocument() {
  return Builder()
      .Add(1, Catalog())
      .Add(2, PageTree(Array{MakeRef(3), MakeRef(4), MakeRef(5)}))
      .Add(3, Page(2))
      .Add(4, Page(2))
      .Add(5, Page(2))
      .Build();
}

ObjectGraph IndirectionChainDocument() {
  return BaseDocument({{"OpenAction", MakeRef(4)}})
      .Add(4, MakeRef(5))
      .Add(5, JsAction("app.alert(2)"))
      .Build();
}

std::vector<NamedGraph> MaliciousCorpus() {
  std::vector<NamedGraph> corpus;

  // Inline action, payload as a string.
  corpus.push_back({"a1_openaction_inline",
                    BaseDocument({{"OpenAction", JsAction(kPayload)}, {"PageMode", MakeName("UseNone")}})
                        .Build()});

  // Indirect action with the payload in a stream.
  corpus.push_back(
      {"a2_openaction_stream",
       BaseDocument({{"OpenAction", MakeRef(4)}, {"Lang", MakeText("en-US")}})
           .Add(4, Dictionary{{"Type", MakeName("Action")},
                              {"S", MakeName("JavaScript")},
                              {"JS", MakeRef(5)}})
           .Add(5, Stream{Dictionary{}, kPayload})
           .Build()});

  // Inline action next to viewer preferences and an XMP stream.
  corpus.push_back(
      {"a3_openaction_decoys",
       BaseDocument({{"OpenAction", JsAction(kPayload)},
                     {"ViewerPreferences", Dictionary{{"DisplayDocTitle", true}}},
                     {"Metadata", MakeRef(4)}})
           .Add(4, Metadata())
           .Build()});

  // Document-level JavaScript name tree, all inline.
  {
    Dictionary names{
        {"JavaScript", Dictionary{{"Names", Array{MakeText("init"), JsAction(kPayload)}}}}};
    corpus.push_back({"b1_names_inline",
                      BaseDocument({{"Names", std::move(names)}, {"PageMode", MakeName("UseOutlines")}})
                          .Build()});
  }

  // Same tree spread over numbered objects, payload in a stream.
  corpus.push_back(
      {"b2_names_indirect",
       BaseDocument({{"Names", MakeRef(4)}, {"Metadata", MakeRef(8)}})
           .Add(4, Dictionary{{"JavaScript", MakeRef(5)}})
           .Add(5, Dictionary{{"Names", Array{MakeText("a"), MakeRef(6)}}})
           .Add(6, Dictionary{{"S", MakeName("JavaScript")}, {"JS", MakeRef(7)}})
           .Add(7, Stream{Dictionary{}, kPayload})
           .Add(8, Metadata())
           .Build()});

  // Payload in the open action of both pages.
  {
    Dictionary p1 = Page(2);
    p1["AA"] = Dictionary{{"O", JsAction(kPayload)}};
    Dictionary p2 = Page(2);
    p2["AA"] = Dictionary{{"O", JsAction(kPayload)}};
    corpus.push_back({"c1_page_action",
                      Builder()
                          .Add(1, Catalog())
                          .Add(2, PageTree(Array{MakeRef(3), MakeRef(4)}))
                          .Add(3, std::move(p1))
                          .Add(4, std::move(p2))
                          .Build()});
  }
  return corpus;
}

std::vector<NamedGraph> CleanCorpus() {
  std::vector<NamedGraph> corpus;
  corpus.push_back({"clean_minimal", MinimalDocument()});
  corpus.push_back({"clean_three_pages", ThreePagesDocument()});
  corpus.push_back(
      {"clean_outline",
       BaseDocument({{"PageMode", MakeName("UseOutlines")}, {"Outlines", MakeRef(4)}})
           .Add(4, Dictionary{{"Type", MakeName("Outlines")}, {"Count", 0}})
           .Build()});
  corpus.push_back({"clean_alert", OpenActionDocument()});
  return corpus;
}

ObjectGraph BenignDonor() {
  Dictionary page = Page(2);
  page["AA"] = Dictionary{{"O", JsAction("console.println('page opened');")}};
  Dictionary catalog = Catalog();
  catalog["OpenAction"] = JsAction("app.alert('hello');");
  return Builder().Add(1, std::move(catalog)).Add(2, PageTree(Array{MakeRef(3)})).Add(3, std::move(page)).Build();
}

std::string SignatureRulesJson() {
  const std::string token = kPayloadToken;
  return "[\n"
         "  {\"id\": \"openaction-js\", \"path\": \"/OpenAction/JS\", \"predicate\": {\"contains\": \"" +
         token +
         "\"}},\n"
         "  {\"id\": \"names-js\", \"path\": \"/Names/JavaScript/Names/JS\", \"predicate\": {\"contains\": \"" +
         token +
         "\"}},\n"
         "  {\"id\": \"page-open-js\", \"path\": \"/Pages/Kids/AA/O/JS\", \"predicate\": {\"contains\": \"" +
         token + "\"}}\n]\n";
}

std::set<std::string> ExpectedConservedPaths() {
  return {"/Names", "/Names/JavaScript", "/Names/JavaScript/Names", "/Names/JavaScript/Names/JS",
          "/OpenAction", "/OpenAction/JS"};
}

std::set<std::string> DecoyPaths() {
  return {"/Type",
          "/PageMode",
          "/Lang",
          "/ViewerPreferences",
          "/ViewerPreferences/DisplayDocTitle",
          "/Metadata",
          "/Metadata/Type",
          "/Metadata/Subtype",
          "/OpenAction/S",
          "/OpenAction/Type",
          "/Names/JavaScript/Names/S",
          "/Pages",
          "/Pages/Type",
          "/Pages/Count",
          "/Pages/Kids",
          "/Pages/Kids/Type",
          "/Pages/Kids/Parent",
          "/Pages/Kids/MediaBox",
          "/Pages/Kids/AA",
          "/Pages/Kids/AA/O",
          "/Pages/Kids/AA/O/S",
          "/Pages/Kids/AA/O/JS"};
}

std::vector<NamedGraph> AllFixtures() {
  std::vector<NamedGraph> all{
      {"minimal", MinimalDocument()},
      {"openaction", OpenActionDocument()},
      {"leaf_pages", LeafPagesDocument()},
      {"empty_catalog", EmptyCatalogDocument()},
      {"cyclic_pages", CyclicPagesDocument()},
      {"duplicated_subtree", DuplicatedSubtreeDocument()},
      {"names_chain", NamesChainDocument()},
      {"three_pages", ThreePagesDocument()},
      {"indirection_chain", IndirectionChainDocument()},
      {"benign_donor", BenignDonor()},
  };
  for (auto& g : MaliciousCorpus()) all.push_back(std::move(g));
  for (auto& g : CleanCorpus()) all.push_back(std::move(g));
  return all;
}

}  // namespace cpath::fixtures
