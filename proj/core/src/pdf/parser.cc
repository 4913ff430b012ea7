#include "cpath/pdf/parser.h"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "cpath/util/error.h"

namespace cpath::pdf {
namespace {

bool IsWhite(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' ||
         c == '\0';
}

bool IsDelim(char c) {
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

bool IsRegular(char c) { return !IsWhite(c) && !IsDelim(c); }

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void Malformed(size_t offset, const std::string& what) {
  throw Error(ErrorCode::kMalformedPdf,
              what + " at byte offset " + std::to_string(offset));
}

// Resolves an indirect /Length while a stream is being read.
using LengthResolver = std::function<std::optional<size_t>(ObjectNumber)>;

// Recursive-descent reader for the object syntax.
class Lexer {
 public:
  Lexer(std::string_view data, size_t pos, LengthResolver lengths = {})
      : data_(data), pos_(pos), lengths_(std::move(lengths)) {}

  size_t pos() const { return pos_; }
  void set_pos(size_t p) { pos_ = p; }
  bool AtEnd() { SkipSpace(); return pos_ >= data_.size(); }

  void SkipSpace() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (IsWhite(c)) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r')
          ++pos_;
      } else {
        break;
      }
    }
  }

  // Reads a run of regular characters without consuming it.
  std::string_view PeekToken() {
    SkipSpace();
    size_t end = pos_;
    while (end < data_.size() && IsRegular(data_[end])) ++end;
    return data_.substr(pos_, end - pos_);
  }

  std::string_view ReadToken() {
    std::string_view t = PeekToken();
    pos_ += t.size();
    return t;
  }

  bool ConsumeKeyword(std::string_view kw) {
    const size_t save = pos_;
    if (ReadToken() == kw) return true;
    pos_ = save;
    return false;
  }

  std::optional<int64_t> ReadInteger() {
    const size_t save = pos_;
    std::string_view t = ReadToken();
    int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size()) {
      pos_ = save;
      return std::nullopt;
    }
    return v;
  }

  Object ReadObject(int depth = 0) {
    if (depth > 256) Malformed(pos_, "object nesting too deep");
    SkipSpace();
    if (pos_ >= data_.size()) Malformed(pos_, "unexpected end of data");
    const char c = data_[pos_];
    switch (c) {
      case '/':
        return ReadName();
      case '(':
        return ReadLiteralString();
      case '[': {
        ++pos_;
        Array arr;
        while (true) {
          SkipSpace();
          if (pos_ >= data_.size()) Malformed(pos_, "unterminated array");
          if (data_[pos_] == ']') { ++pos_; break; }
          arr.push_back(ReadObject(depth + 1));
        }
        return arr;
      }
      case '<':
        if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
          return ReadDictOrStream(depth);
        }
        return ReadHexString();
      case ')': case '>': case ']': case '{': case '}':
        Malformed(pos_, std::string("unexpected '") + c + "'");
      default:
        break;
    }
    const size_t start = pos_;
    std::string_view tok = ReadToken();
    if (tok.empty()) Malformed(start, "unexpected character");
    if (tok == "null") return Null{};
    if (tok == "true") return true;
    if (tok == "false") return false;

    // Integer possibly starting an "n g R" reference.
    int64_t n = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (ec == std::errc() && p == tok.data() + tok.size()) {
      const size_t after = pos_;
      if (n >= 0) {
        auto gen = ReadInteger();
        if (gen && *gen >= 0 && ConsumeKeyword("R")) {
          return Reference{static_cast<ObjectNumber>(n),
                           static_cast<uint32_t>(*gen)};
        }
      }
      pos_ = after;
      return static_cast<double>(n);
    }
    std::string s(tok);
    char* endp = nullptr;
    const double d = std::strtod(s.c_str(), &endp);
    if (endp == s.c_str() || *endp != '\0') {
      Malformed(start, "unrecognized token '" + s + "'");
    }
    return d;
  }

 private:
  Object ReadName() {
    const size_t start = pos_;
    ++pos_;  // '/'
    std::string out;
    while (pos_ < data_.size() && IsRegular(data_[pos_])) {
      char c = data_[pos_];
      if (c == '#' && pos_ + 2 < data_.size() &&
          HexValue(data_[pos_ + 1]) >= 0 && HexValue(data_[pos_ + 2]) >= 0) {
        out.push_back(static_cast<char>(HexValue(data_[pos_ + 1]) * 16 +
                                        HexValue(data_[pos_ + 2])));
        pos_ += 3;
      } else {
        out.push_back(c);
        ++pos_;
      }
    }
    if (out.empty()) Malformed(start, "empty name");
    return Name{std::move(out)};
  }

  Object ReadLiteralString() {
    const size_t start = pos_;
    ++pos_;  // '('
    std::string out;
    int depth = 1;
    while (true) {
      if (pos_ >= data_.size()) Malformed(start, "unterminated string");
      char c = data_[pos_++];
      if (c == '(') {
        ++depth;
        out.push_back(c);
      } else if (c == ')') {
        if (--depth == 0) break;
        out.push_back(c);
      } else if (c == '\\') {
        if (pos_ >= data_.size()) Malformed(start, "unterminated string");
        char e = data_[pos_++];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          case 'b': out.push_back('\b'); break;
          case 'f': out.push_back('\f'); break;
          case '\r':
            if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
            break;
          case '\n':
            break;
          default:
            if (e >= '0' && e <= '7') {
              int v = e - '0';
              for (int k = 0; k < 2 && pos_ < data_.size() &&
                              data_[pos_] >= '0' && data_[pos_] <= '7';
                   ++k) {
                v = v * 8 + (data_[pos_++] - '0');
              }
              out.push_back(static_cast<char>(v & 0xff));
            } else {
              out.push_back(e);
            }
        }
      } else if (c == '\r') {
        if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
        out.push_back('\n');
      } else {
        out.push_back(c);
      }
    }
    return Text{std::move(out)};
  }

  Object ReadHexString() {
    const size_t start = pos_;
    ++pos_;  // '<'
    std::string out;
    int hi = -1;
    while (true) {
      if (pos_ >= data_.size()) Malformed(start, "unterminated hex string");
      char c = data_[pos_++];
      if (c == '>') break;
      if (IsWhite(c)) continue;
      int v = HexValue(c);
      if (v < 0) Malformed(pos_ - 1, "bad hex digit");
      if (hi < 0) {
        hi = v;
      } else {
        out.push_back(static_cast<char>(hi * 16 + v));
        hi = -1;
      }
    }
    if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
    return Text{std::move(out)};
  }

  Object ReadDictOrStream(int depth) {
    const size_t start = pos_;
    pos_ += 2;  // "<<"
    Dictionary dict;
    while (true) {
      SkipSpace();
      if (pos_ + 1 < data_.size() && data_[pos_] == '>' &&
          data_[pos_ + 1] == '>') {
        pos_ += 2;
        break;
      }
      if (pos_ >= data_.size()) Malformed(start, "unterminated dictionary");
      if (data_[pos_] != '/') Malformed(pos_, "dictionary key is not a name");
      std::string key = ReadName().AsName().token;
      SkipSpace();
      if (pos_ + 1 < data_.size() && data_[pos_] == '>' &&
          data_[pos_ + 1] == '>') {
        // Key without value; PDF readers treat the value as null.
        dict.insert_or_assign(std::move(key), Object(Null{}));
        continue;
      }
      dict.insert_or_assign(std::move(key), ReadObject(depth + 1));
    }
    const size_t after_dict = pos_;
    if (!ConsumeKeyword("stream")) {
      pos_ = after_dict;
      return dict;
    }
    // One EOL after the keyword; a lone CR is tolerated.
    if (pos_ < data_.size() && data_[pos_] == '\r') ++pos_;
    if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
    const size_t data_start = pos_;

    std::optional<size_t> declared;
    if (auto it = dict.find("Length"); it != dict.end()) {
      if (it->second.IsNumber() && it->second.AsNumber() >= 0) {
        declared = static_cast<size_t>(it->second.AsNumber());
      } else if (it->second.IsReference() && lengths_) {
        declared = lengths_(it->second.AsReference().number);
      }
    }
    std::optional<size_t> payload_len;
    if (declared && data_start + *declared <= data_.size()) {
      Lexer probe(data_, data_start + *declared);
      if (probe.ConsumeKeyword("endstream")) {
        payload_len = *declared;
        pos_ = probe.pos();
      }
    }
    if (!payload_len) {
      const size_t end = data_.find("endstream", data_start);
      if (end == std::string_view::npos) Malformed(data_start, "stream without endstream");
      size_t len = end - data_start;
      if (len > 0 && data_[data_start + len - 1] == '\n') --len;
      if (len > 0 && data_[data_start + len - 1] == '\r') --len;
      payload_len = len;
      pos_ = end + std::string_view("endstream").size();
    }
    Stream s;
    s.data = std::string(data_.substr(data_start, *payload_len));
    s.dict = std::move(dict);
    s.dict.insert_or_assign("Length", Object(static_cast<double>(s.data.size())));
    return s;
  }

  std::string_view data_;
  size_t pos_;
  LengthResolver lengths_;
};

std::string Inflate(std::string_view in, size_t offset_hint) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) {
    throw Error(ErrorCode::kMalformedPdf, "zlib init failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  std::string out;
  char buf[16384];
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof(buf);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) break;
    out.append(buf, sizeof(buf) - zs.avail_out);
  } while (rc != Z_STREAM_END && zs.avail_in > 0);
  inflateEnd(&zs);
  if (rc != Z_OK && rc != Z_STREAM_END) {
    Malformed(offset_hint, "corrupt FlateDecode data");
  }
  return out;
}

int64_t DictInt(const Dictionary& d, std::string_view key, int64_t fallback) {
  auto it = d.find(key);
  if (it == d.end() || !it->second.IsNumber()) return fallback;
  return static_cast<int64_t>(it->second.AsNumber());
}

std::string UndoPngPredictor(const std::string& in, const Dictionary& parms,
                             size_t offset_hint) {
  const int64_t predictor = DictInt(parms, "Predictor", 1);
  if (predictor == 1) return in;
  if (predictor < 10) {
    throw Error(ErrorCode::kUnsupportedConstruct,
                "predictor " + std::to_string(predictor) +
                    " on structural stream at byte offset " +
                    std::to_string(offset_hint));
  }
  const int64_t colors = DictInt(parms, "Colors", 1);
  const int64_t bpc = DictInt(parms, "BitsPerComponent", 8);
  const int64_t columns = DictInt(parms, "Columns", 1);
  const size_t bpp = static_cast<size_t>(std::max<int64_t>(1, colors * bpc / 8));
  const size_t row = static_cast<size_t>((colors * bpc * columns + 7) / 8);
  std::string out;
  std::string prev(row, '\0');
  size_t i = 0;
  while (i + 1 + row <= in.size()) {
    const unsigned char type = static_cast<unsigned char>(in[i]);
    std::string cur(in.substr(i + 1, row));
    for (size_t k = 0; k < row; ++k) {
      const int a = k >= bpp ? static_cast<unsigned char>(cur[k - bpp]) : 0;
      const int b = static_cast<unsigned char>(prev[k]);
      const int c = k >= bpp ? static_cast<unsigned char>(prev[k - bpp]) : 0;
      int x = static_cast<unsigned char>(cur[k]);
      switch (type) {
        case 0: break;
        case 1: x += a; break;
        case 2: x += b; break;
        case 3: x += (a + b) / 2; break;
        case 4: {
          const int p = a + b - c;
          const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
          x += (pa <= pb && pa <= pc) ? a : (pb <= pc ? b : c);
          break;
        }
        default:
          Malformed(offset_hint, "bad PNG predictor row type");
      }
      cur[k] = static_cast<char>(x & 0xff);
    }
    out += cur;
    prev = std::move(cur);
    i += 1 + row;
  }
  return out;
}

// Decodes a structural (object or xref) stream. Only FlateDecode is needed
// in practice.
std::string DecodeStructural(const Stream& s, size_t offset_hint) {
  auto f = s.dict.find("Filter");
  if (f == s.dict.end()) return s.data;
  std::vector<std::string> filters;
  if (f->second.IsName()) {
    filters.push_back(f->second.AsName().token);
  } else if (f->second.IsArray()) {
    for (const auto& e : f->second.AsArray()) {
      if (e.IsName()) filters.push_back(e.AsName().token);
    }
  }
  Dictionary parms;
  if (auto p = s.dict.find("DecodeParms"); p != s.dict.end()) {
    if (p->second.IsDict()) {
      parms = p->second.AsDict();
    } else if (p->second.IsArray() && !p->second.AsArray().empty() &&
               p->second.AsArray().front().IsDict()) {
      parms = p->second.AsArray().front().AsDict();
    }
  }
  std::string data = s.data;
  for (const auto& name : filters) {
    if (name != "FlateDecode" && name != "Fl") {
      throw Error(ErrorCode::kUnsupportedConstruct,
                  "filter /" + name + " on structural stream at byte offset " +
                      std::to_string(offset_hint));
    }
    data = UndoPngPredictor(Inflate(data, offset_hint), parms, offset_hint);
  }
  return data;
}

struct XrefEntry {
  enum Kind { kInUse, kCompressed } kind = kInUse;
  size_t offset = 0;            // kInUse
  ObjectNumber container = 0;   // kCompressed
  size_t index = 0;             // kCompressed
};

bool IsTypeName(const Dictionary& d, std::string_view type) {
  auto it = d.find("Type");
  return it != d.end() && it->second.IsName() && it->second.AsName().token == type;
}

class DocumentReader {
 public:
  explicit DocumentReader(std::string_view data) : data_(data) {}

  ObjectGraph Read() {
    if (data_.empty()) Malformed(0, "empty input");
    if (data_.substr(0, 1024).find("%PDF-") == std::string_view::npos) {
      Malformed(0, "missing %PDF- header");
    }
    bool xref_ok = false;
    try {
      xref_ok = ReadXrefChain();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kUnsupportedConstruct) throw;
      xref_ok = false;
    }
    if (!xref_ok || trailer_.find("Root") == trailer_.end()) {
      RecoverByScanning();
    }
    if (trailer_.count("Encrypt") != 0) {
      throw Error(ErrorCode::kUnsupportedConstruct,
                  "encrypted document (trailer /Encrypt) is not supported");
    }
    if (trailer_.find("Root") == trailer_.end()) {
      Malformed(data_.size(), "no trailer with /Root");
    }
    LoadAllObjects();

    Dictionary trailer;
    for (const char* key : {"Root", "Info", "ID"}) {
      if (auto it = trailer_.find(key); it != trailer_.end()) {
        trailer.emplace(key, it->second);
      }
    }
    return ObjectGraph(std::move(objects_), std::move(trailer),
                       Provenance::kParsedPdf);
  }

 private:
  // Returns false when the startxref/xref structure is unusable.
  bool ReadXrefChain() {
    const size_t sx = data_.rfind("startxref");
    if (sx == std::string_view::npos) return false;
    Lexer lex(data_, sx + 9);
    auto off = lex.ReadInteger();
    if (!off || *off < 0 || static_cast<size_t>(*off) >= data_.size()) return false;

    std::set<size_t> visited;
    std::vector<size_t> pending{static_cast<size_t>(*off)};
    while (!pending.empty()) {
      const size_t at = pending.back();
      pending.pop_back();
      if (!visited.insert(at).second) continue;
      Dictionary section_trailer;
      Lexer probe(data_, at);
      if (probe.PeekToken() == "xref") {
        section_trailer = ReadXrefTable(at);
      } else {
        section_trailer = ReadXrefStream(at);
      }
      for (auto& [k, v] : section_trailer) trailer_.emplace(k, v);
      // Hybrid files: /XRefStm supplements the table it sits in and takes
      // precedence over the /Prev section.
      const int64_t prev = DictInt(section_trailer, "Prev", -1);
      if (prev >= 0 && static_cast<size_t>(prev) < data_.size()) {
        pending.push_back(static_cast<size_t>(prev));
      }
      const int64_t stm = DictInt(section_trailer, "XRefStm", -1);
      if (stm >= 0 && static_cast<size_t>(stm) < data_.size()) {
        pending.push_back(static_cast<size_t>(stm));
      }
    }
    return !xref_.empty();
  }

  Dictionary ReadXrefTable(size_t at) {
    Lexer lex(data_, at);
    lex.ReadToken();  // "xref"
    while (true) {
      if (lex.PeekToken() == "trailer") {
        lex.ReadToken();
        Object t = lex.ReadObject();
        if (!t.IsDict()) Malformed(lex.pos(), "trailer is not a dictionary");
        return t.AsDict();
      }
      auto first = lex.ReadInteger();
      auto count = lex.ReadInteger();
      if (!first || !count || *first < 0 || *count < 0) {
        Malformed(lex.pos(), "bad xref subsection header");
      }
      for (int64_t i = 0; i < *count; ++i) {
        auto offset = lex.ReadInteger();
        auto gen = lex.ReadInteger();
        std::string_view kind = lex.ReadToken();
        if (!offset || !gen || (kind != "n" && kind != "f")) {
          Malformed(lex.pos(), "bad xref entry");
        }
        const ObjectNumber num = static_cast<ObjectNumber>(*first + i);
        // Sections are read newest first; the first decision for a number wins.
        if (num == 0 || !decided_.insert(num).second) continue;
        if (kind == "n") {
          XrefEntry e;
          e.offset = static_cast<size_t>(*offset);
          xref_.emplace(num, e);
        }
      }
    }
  }

  Dictionary ReadXrefStream(size_t at) {
    Lexer lex(data_, at);
    auto num = lex.ReadInteger();
    auto gen = lex.ReadInteger();
    if (!num || !gen || !lex.ConsumeKeyword("obj")) {
      Malformed(at, "startxref does not point at an xref table or stream");
    }
    Object o = lex.ReadObject();
    if (!o.IsStream() || !IsTypeName(o.AsStream().dict, "XRef")) {
      Malformed(at, "expected cross-reference stream");
    }
    const Stream& s = o.AsStream();
    if (s.dict.count("Encrypt") != 0) {
      throw Error(ErrorCode::kUnsupportedConstruct,
                  "encrypted document (trailer /Encrypt) is not supported");
    }
    structural_.insert(static_cast<ObjectNumber>(*num));
    const std::string rows = DecodeStructural(s, at);

    std::vector<size_t> widths;
    if (auto w = s.dict.find("W"); w != s.dict.end() && w->second.IsArray()) {
      for (const auto& e : w->second.AsArray()) {
        widths.push_back(e.IsNumber() ? static_cast<size_t>(e.AsNumber()) : 0);
      }
    }
    if (widths.size() != 3) Malformed(at, "xref stream /W must have 3 entries");
    std::vector<std::pair<int64_t, int64_t>> ranges;
    if (auto idx = s.dict.find("Index"); idx != s.dict.end() && idx->second.IsArray()) {
      const Array& a = idx->second.AsArray();
      for (size_t i = 0; i + 1 < a.size(); i += 2) {
        ranges.emplace_back(static_cast<int64_t>(a[i].AsNumber()),
                            static_cast<int64_t>(a[i + 1].AsNumber()));
      }
    } else {
      ranges.emplace_back(0, DictInt(s.dict, "Size", 0));
    }
    const size_t row_len = widths[0] + widths[1] + widths[2];
    size_t p = 0;
    auto field = [&](size_t width, uint64_t fallback) -> uint64_t {
      if (width == 0) return fallback;
      uint64_t v = 0;
      for (size_t k = 0; k < width; ++k) {
        v = (v << 8) | static_cast<unsigned char>(rows[p++]);
      }
      return v;
    };
    for (auto [first, count] : ranges) {
      for (int64_t i = 0; i < count; ++i) {
        if (p + row_len > rows.size()) Malformed(at, "xref stream data truncated");
        const uint64_t type = field(widths[0], 1);
        const uint64_t f2 = field(widths[1], 0);
        const uint64_t f3 = field(widths[2], 0);
        const ObjectNumber n = static_cast<ObjectNumber>(first + i);
        if (n == 0 || !decided_.insert(n).second) continue;
        if (type == 1) {
          XrefEntry e;
          e.offset = static_cast<size_t>(f2);
          xref_.emplace(n, e);
        } else if (type == 2) {
          XrefEntry e;
          e.kind = XrefEntry::kCompressed;
          e.container = static_cast<ObjectNumber>(f2);
          e.index = static_cast<size_t>(f3);
          xref_.emplace(n, e);
        }
      }
    }
    return s.dict;
  }

  // Rebuilds the xref by locating every "N G obj" header; later definitions
  // win, matching how incremental updates append.
  void RecoverByScanning() {
    xref_.clear();
    size_t pos = 0;
    while ((pos = data_.find("obj", pos)) != std::string_view::npos) {
      const size_t kw = pos;
      pos += 3;
      if (pos < data_.size() && IsRegular(data_[pos])) continue;
      // Walk back over "N G ".
      size_t b = kw;
      auto back_digits = [&]() -> bool {
        while (b > 0 && IsWhite(data_[b - 1])) --b;
        const size_t end = b;
        while (b > 0 && data_[b - 1] >= '0' && data_[b - 1] <= '9') --b;
        return b < end;
      };
      if (!back_digits()) continue;  // generation
      if (!back_digits()) continue;  // object number
      if (b > 0 && IsRegular(data_[b - 1])) continue;
      Lexer lex(data_, b);
      auto num = lex.ReadInteger();
      if (!num || *num <= 0) continue;
      XrefEntry e;
      e.offset = b;
      xref_.insert_or_assign(static_cast<ObjectNumber>(*num), e);
    }
    // Last trailer dictionary in the file, else the newest xref stream dict.
    size_t t = data_.rfind("trailer");
    while (t != std::string_view::npos) {
      try {
        Lexer lex(data_, t + 7);
        Object o = lex.ReadObject();
        if (o.IsDict() && o.AsDict().count("Root") != 0) {
          for (auto& [k, v] : o.AsDict()) trailer_.insert_or_assign(k, v);
          break;
        }
      } catch (const Error&) {
      }
      if (t == 0) break;
      t = data_.rfind("trailer", t - 1);
    }
    if (trailer_.find("Root") == trailer_.end()) {
      for (auto it = xref_.rbegin(); it != xref_.rend(); ++it) {
        try {
          Object o = ParseIndirect(it->first, it->second.offset);
          if (o.IsStream() && IsTypeName(o.AsStream().dict, "XRef") &&
              o.AsStream().dict.count("Root") != 0) {
            for (auto& [k, v] : o.AsStream().dict) trailer_.insert_or_assign(k, v);
            break;
          }
        } catch (const Error&) {
        }
      }
    }
    // The recovered xref may point at object streams; expand them lazily via
    // LoadAllObjects which understands compressed entries only from xref
    // streams, so unpack any /ObjStm found here directly.
    std::vector<ObjectNumber> containers;
    for (const auto& [num, e] : xref_) {
      try {
        Object o = ParseIndirect(num, e.offset);
        if (o.IsStream() && IsTypeName(o.AsStream().dict, "ObjStm")) {
          containers.push_back(num);
        }
      } catch (const Error&) {
      }
    }
    for (ObjectNumber c : containers) {
      try {
        for (auto& [n, obj] : UnpackObjectStream(c)) {
          if (xref_.count(n) == 0) recovered_compressed_.insert_or_assign(n, std::move(obj));
        }
      } catch (const Error&) {
      }
    }
  }

  Object ParseIndirect(ObjectNumber expected, size_t offset) {
    if (offset >= data_.size()) {
      throw Error(ErrorCode::kMalformedPdf,
                  "object " + std::to_string(expected) +
                      " offset beyond end of file");
    }
    Lexer lex(data_, offset, [this](ObjectNumber n) { return ResolveLength(n); });
    auto num = lex.ReadInteger();
    auto gen = lex.ReadInteger();
    if (!num || !gen || !lex.ConsumeKeyword("obj") ||
        static_cast<ObjectNumber>(*num) != expected) {
      throw Error(ErrorCode::kMalformedPdf,
                  "object " + std::to_string(expected) +
                      " not found at byte offset " + std::to_string(offset));
    }
    return lex.ReadObject();
  }

  std::optional<size_t> ResolveLength(ObjectNumber n) {
    if (!length_guard_.insert(n).second) return std::nullopt;
    struct Release {
      std::set<ObjectNumber>& s;
      ObjectNumber n;
      ~Release() { s.erase(n); }
    } release{length_guard_, n};
    auto it = xref_.find(n);
    if (it == xref_.end() || it->second.kind != XrefEntry::kInUse) return std::nullopt;
    try {
      Object o = ParseIndirect(n, it->second.offset);
      if (o.IsNumber() && o.AsNumber() >= 0) return static_cast<size_t>(o.AsNumber());
    } catch (const Error&) {
    }
    return std::nullopt;
  }

  std::map<ObjectNumber, Object> UnpackObjectStream(ObjectNumber container) {
    auto it = xref_.find(container);
    if (it == xref_.end() || it->second.kind != XrefEntry::kInUse) {
      throw Error(ErrorCode::kMalformedPdf,
                  "object stream " + std::to_string(container) + " not found");
    }
    Object o = ParseIndirect(container, it->second.offset);
    if (!o.IsStream() || !IsTypeName(o.AsStream().dict, "ObjStm")) {
      throw Error(ErrorCode::kMalformedPdf,
                  "object " + std::to_string(container) + " is not an object stream");
    }
    structural_.insert(container);
    const Stream& s = o.AsStream();
    const std::string body = DecodeStructural(s, it->second.offset);
    const int64_t n = DictInt(s.dict, "N", 0);
    const int64_t first = DictInt(s.dict, "First", 0);
    if (n < 0 || first < 0 || static_cast<size_t>(first) > body.size()) {
      throw Error(ErrorCode::kMalformedPdf,
                  "object stream " + std::to_string(container) + " has bad /N or /First");
    }
    Lexer header(body, 0);
    std::map<ObjectNumber, Object> out;
    std::vector<std::pair<ObjectNumber, size_t>> index;
    for (int64_t i = 0; i < n; ++i) {
      auto num = header.ReadInteger();
      auto off = header.ReadInteger();
      if (!num || !off) {
        throw Error(ErrorCode::kMalformedPdf,
                    "object stream " + std::to_string(container) + " header truncated");
      }
      index.emplace_back(static_cast<ObjectNumber>(*num),
                         static_cast<size_t>(first + *off));
    }
    for (auto [num, off] : index) {
      Lexer lex(body, off);
      out.emplace(num, lex.ReadObject());
    }
    return out;
  }

  void LoadAllObjects() {
    std::map<ObjectNumber, std::map<ObjectNumber, Object>> unpacked;
    for (const auto& [num, entry] : xref_) {
      if (entry.kind == XrefEntry::kInUse) {
        try {
          objects_.insert_or_assign(num, ParseIndirect(num, entry.offset));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kUnsupportedConstruct) throw;
          // Stale offset: fall back to a scan for this object's header.
          auto found = ScanFor(num);
          if (!found) throw;
          objects_.insert_or_assign(num, ParseIndirect(num, *found));
        }
      }
    }
    for (const auto& [num, entry] : xref_) {
      if (entry.kind != XrefEntry::kCompressed) continue;
      auto c = unpacked.find(entry.container);
      if (c == unpacked.end()) {
        c = unpacked.emplace(entry.container, UnpackObjectStream(entry.container)).first;
      }
      auto o = c->second.find(num);
      if (o == c->second.end()) {
        throw Error(ErrorCode::kMalformedPdf,
                    "object " + std::to_string(num) + " missing from object stream " +
                        std::to_string(entry.container));
      }
      objects_.insert_or_assign(num, o->second);
    }
    for (auto& [num, obj] : recovered_compressed_) objects_.emplace(num, std::move(obj));
    for (auto it = objects_.begin(); it != objects_.end();) {
      const bool drop =
          structural_.count(it->first) != 0 ||
          (it->second.IsStream() && (IsTypeName(it->second.AsStream().dict, "XRef") ||
                                     IsTypeName(it->second.AsStream().dict, "ObjStm")));
      it = drop ? objects_.erase(it) : std::next(it);
    }
  }

  std::optional<size_t> ScanFor(ObjectNumber num) {
    const std::string needle = std::to_string(num) + " ";
    size_t pos = 0;
    std::optional<size_t> last;
    while ((pos = data_.find(needle, pos)) != std::string_view::npos) {
      if (pos == 0 || !IsRegular(data_[pos - 1])) {
        Lexer lex(data_, pos);
        auto n = lex.ReadInteger();
        auto g = lex.ReadInteger();
        if (n && g && lex.ConsumeKeyword("obj")) last = pos;
      }
      pos += needle.size();
    }
    return last;
  }

  std::string_view data_;
  std::map<ObjectNumber, XrefEntry> xref_;
  std::set<ObjectNumber> decided_;
  std::set<ObjectNumber> structural_;
  std::set<ObjectNumber> length_guard_;
  std::map<ObjectNumber, Object> recovered_compressed_;
  Dictionary trailer_;
  ObjectGraph::ObjectMap objects_;
};

}  // namespace

ObjectGraph ParsePdf(std::string_view bytes) {
  return DocumentReader(bytes).Read();
}

Object ParseObjectText(std::string_view text) {
  Lexer lex(text, 0);
  Object o = lex.ReadObject();
  if (!lex.AtEnd()) Malformed(lex.pos(), "trailing data after object");
  return o;
}

}  // namespace cpath::pdf
