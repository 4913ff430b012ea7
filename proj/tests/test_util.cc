#include "test_util.h"

#include <zlib.h>

#include <cstdlib>
#include <stdexcept>

#include "cpath/features/extract.h"
#include "cpath/util/files.h"

namespace cpath::testing {

std::set<std::string> Paths(const pdf::ObjectGraph& graph) {
  return features::RenderAll(features::ExtractPaths(graph));
}

std::string Deflate(std::string_view data) {
  uLongf size = compressBound(data.size());
  std::string out(size, '\0');
  if (compress(reinterpret_cast<Bytef*>(out.data()), &size,
               reinterpret_cast<const Bytef*>(data.data()), data.size()) != Z_OK) {
    throw std::runtime_error("compress failed");
  }
  out.resize(size);
  return out;
}

RawPdf& RawPdf::Object(uint32_t number, std::string_view body) {
  offsets_[number] = bytes_.size();
  section_[number] = bytes_.size();
  bytes_ += std::to_string(number) + " 0 obj\n";
  bytes_ += body;
  bytes_ += "\nendobj\n";
  return *this;
}

RawPdf& RawPdf::StreamObject(uint32_t number, std::string_view dict_entries,
                             std::string_view data) {
  std::string body = "<<" + std::string(dict_entries) + " /Length " +
                     std::to_string(data.size()) + ">>\nstream\n";
  body += data;
  body += "\nendstream";
  return Object(number, body);
}

RawPdf& RawPdf::Raw(std::string_view text) {
  bytes_ += text;
  return *this;
}

RawPdf& RawPdf::XrefTable(std::string_view trailer_entries) {
  const size_t start = bytes_.size();
  uint32_t size = 1;
  for (const auto& [n, off] : offsets_) size = std::max(size, n + 1);
  bytes_ += "xref\n";
  if (!has_prev_) {
    bytes_ += "0 1\n0000000000 65535 f \n";
  }
  for (const auto& [n, off] : section_) {
    char line[32];
    std::snprintf(line, sizeof(line), "%u 1\n%010zu 00000 n \n", n, off);
    bytes_ += line;
  }
  bytes_ += "trailer\n<</Size " + std::to_string(size) + " " + std::string(trailer_entries);
  if (has_prev_) bytes_ += " /Prev " + std::to_string(last_xref_);
  bytes_ += ">>\nstartxref\n" + std::to_string(start) + "\n%%EOF\n";
  last_xref_ = start;
  has_prev_ = true;
  section_.clear();
  return *this;
}

RawPdf& RawPdf::XrefStream(uint32_t number, std::string_view extra_entries,
                           const std::map<uint32_t, std::pair<uint32_t, uint32_t>>& compressed) {
  const size_t start = bytes_.size();
  offsets_[number] = start;
  uint32_t size = number + 1;
  for (const auto& [n, off] : offsets_) size = std::max(size, n + 1);
  for (const auto& [n, loc] : compressed) size = std::max(size, n + 1);
  std::string rows;
  auto row = [&rows](int type, uint32_t field2, uint32_t field3) {
    rows += static_cast<char>(type);
    rows += static_cast<char>((field2 >> 8) & 0xff);
    rows += static_cast<char>(field2 & 0xff);
    rows += static_cast<char>(field3 & 0xff);
  };
  for (uint32_t n = 0; n < size; ++n) {
    if (auto c = compressed.find(n); c != compressed.end()) {
      row(2, c->second.first, c->second.second);
    } else if (auto o = offsets_.find(n); o != offsets_.end()) {
      row(1, static_cast<uint32_t>(o->second), 0);
    } else {
      row(0, 0, n == 0 ? 255 : 0);
    }
  }
  const std::string data = Deflate(rows);
  bytes_ += std::to_string(number) + " 0 obj\n<</Type /XRef /Size " + std::to_string(size) +
            " /W [1 2 1] /Filter /FlateDecode /Length " + std::to_string(data.size()) + " " +
            std::string(extra_entries);
  if (has_prev_) bytes_ += " /Prev " + std::to_string(last_xref_);
  bytes_ += ">>\nstream\n" + data + "\nendstream\nendobj\nstartxref\n" + std::to_string(start) +
            "\n%%EOF\n";
  last_xref_ = start;
  has_prev_ = true;
  section_.clear();
  return *this;
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "cpath_test_XXXXXX").string();
  if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path WriteScript(const std::filesystem::path& dir, const std::string& name,
                                  const std::string& body) {
  const auto path = dir / name;
  WriteFile(path, "#!/bin/sh\n" + body);
  std::filesystem::permissions(path, std::filesystem::perms::owner_all);
  return path;
}

}  // namespace cpath::testing
