#ifndef CPATH_PDF_JSON_IO_H_
#define CPATH_PDF_JSON_IO_H_

#include <string>
#include <string_view>

#include "cpath/pdf/graph.h"

namespace cpath::pdf {

// JSON interchange form of an object graph:
//
//   {"trailer": <dict>, "objects": {"<decimal number>": <object>, ...}}
//
// with objects encoded as
//   null | true/false | <number> | {"text_b64": ...} | {"name": ...} |
//   [<object>...] | {"dict": {...}} | {"dict": {...}, "stream_b64": ...} |
//   {"ref": <int>, "gen": <int, default 0>}
//
// Throws Error{kSchemaViolation} naming the JSON path of the first problem.
ObjectGraph LoadGraphJson(std::string_view text);

// Inverse of LoadGraphJson; keys are emitted sorted so output is stable.
std::string SerializeGraphJson(const ObjectGraph& graph);

}  // namespace cpath::pdf

#endif  // CPATH_PDF_JSON_IO_H_
