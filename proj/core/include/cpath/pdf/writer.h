#ifndef CPATH_PDF_WRITER_H_
#define CPATH_PDF_WRITER_H_

#include <string>

#include "cpath/pdf/graph.h"

namespace cpath::pdf {

// Writes the graph as a single-revision PDF: "%PDF-1.5" header, every object
// in object-number order with generation 0, one classic xref table, a
// trailer (/Size, /Root, plus /Info and /ID when present) and %%EOF.
// Dangling references are written as null. Output is a pure function of the
// graph contents.
//
// Throws Error{kSerializationFailure} for streams that are not top-level
// objects, which PDF syntax cannot express.
std::string SerializePdf(const ObjectGraph& graph);

// Single object in PDF syntax, references written as-is. Streams are
// rejected as above.
std::string SerializeObject(const Object& object);

}  // namespace cpath::pdf

#endif  // CPATH_PDF_WRITER_H_
