#ifndef CPATH_TOOLS_FIXTURES_FIXTURES_H_
#define CPATH_TOOLS_FIXTURES_FIXTURES_H_

#include <set>
#include <string>
#include <vector>

#include "cpath/pdf/graph.h"

// Hand-built documents shared by the tests and the data generator.
namespace cpath::fixtures {

struct NamedGraph {
  std::string id;
  pdf::ObjectGraph graph;
};

// Token the shipped signature rules look for in JavaScript payloads.
inline constexpr char kPayloadToken[] = "unescape(";

// Catalog (1) -> Pages (2) -> Page (3).
pdf::ObjectGraph MinimalDocument();
// MinimalDocument plus an inline /OpenAction << /S /JavaScript /JS (app.alert(1)) >>.
pdf::ObjectGraph OpenActionDocument();
// Catalog whose /Pages value is an empty dictionary.
pdf::ObjectGraph LeafPagesDocument();
// Catalog with no keys at all.
pdf::ObjectGraph EmptyCatalogDocument();
// Page tree whose page points back at the catalog and at itself.
pdf::ObjectGraph CyclicPagesDocument();
// /Pages is an array of two page-tree nodes, so /Pages/Kids has two sites.
pdf::ObjectGraph DuplicatedSubtreeDocument();
// Inline /Names /JavaScript /Names [(a) << /S /JavaScript /JS (...) >>].
pdf::ObjectGraph NamesChainDocument();
// Page tree with three Page objects.
pdf::ObjectGraph ThreePagesDocument();
// A reference to a reference: /OpenAction 4 0 R, object 4 is "5 0 R".
pdf::ObjectGraph IndirectionChainDocument();

// Malicious seeds carrying the payload under /OpenAction/JS,
// /Names/JavaScript/Names/JS or a page's /AA/O/JS, plus decoy keys.
std::vector<NamedGraph> MaliciousCorpus();
// Benign documents used as the clean set.
std::vector<NamedGraph> CleanCorpus();
// Benign donor for replacement probes.
pdf::ObjectGraph BenignDonor();

// JSON rules for the rule oracle matching the three payload locations.
std::string SignatureRulesJson();

// Uniform conserved SL2013 set the pipeline must find on MaliciousCorpus.
std::set<std::string> ExpectedConservedPaths();
// Paths present in the corpus that must not be reported as conserved.
std::set<std::string> DecoyPaths();

// Every document above, for round-trip and mutation sweeps.
std::vector<NamedGraph> AllFixtures();

}  // namespace cpath::fixtures

#endif  // CPATH_TOOLS_FIXTURES_FIXTURES_H_
