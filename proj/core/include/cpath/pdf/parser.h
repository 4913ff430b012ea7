#ifndef CPATH_PDF_PARSER_H_
#define CPATH_PDF_PARSER_H_

#include <string_view>

#include "cpath/pdf/graph.h"

namespace cpath::pdf {

// Parses a PDF file into an object graph.
//
// Reads classic cross-reference tables, cross-reference streams, object
// streams (FlateDecode with optional PNG predictors) and /Prev chains, newest
// section first. Linearized files parse like any other; their hint stream is
// just an unreachable object. When the cross-reference data is unusable the
// body is scanned for "N G obj" headers and a trailer dictionary.
//
// Stream payloads are kept verbatim and each stream's /Length is rewritten to
// the payload size. Object and cross-reference streams are unpacked and not
// kept as objects.
//
// Throws Error{kMalformedPdf} (with byte offset or object number) when no
// usable trailer/Root can be found, Error{kUnsupportedConstruct} for
// encrypted files and unsupported filters on structural streams.
ObjectGraph ParsePdf(std::string_view bytes);

// Parses a single serialized object (no "obj" wrapper), mostly for tests.
Object ParseObjectText(std::string_view text);

}  // namespace cpath::pdf

#endif  // CPATH_PDF_PARSER_H_
