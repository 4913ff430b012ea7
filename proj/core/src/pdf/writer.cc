#include "cpath/pdf/writer.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "cpath/util/error.h"

namespace cpath::pdf {
namespace {

bool NeedsNameEscape(unsigned char c) {
  if (c < '!' || c > '~') return true;
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%': case '#':
      return true;
    default:
      return false;
  }
}

void AppendNumber(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += '0';
    return;
  }
  char buf[64];
  if (v == std::trunc(v) && std::fabs(v) < 9.0e15) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<int64_t>(v));
    out.append(buf, p);
    return;
  }
  // PDF reals have no exponent form.
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  out.append(buf, p);
}

void AppendName(std::string& out, const std::string& token) {
  out += '/';
  for (unsigned char c : token) {
    if (NeedsNameEscape(c)) {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "#%02X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
}

void AppendText(std::string& out, const std::string& bytes) {
  out += '(';
  for (unsigned char c : bytes) {
    switch (c) {
      case '(': out += "\\("; break;
      case ')': out += "\\)"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 32 || c >= 127) {
          char buf[5];
          std::snprintf(buf, sizeof(buf), "\\%03o", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += ')';
}

class Writer {
 public:
  explicit Writer(const ObjectGraph* graph) : graph_(graph) {}

  void Append(std::string& out, const Object& o, bool top_level) const {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Null>) {
            out += "null";
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, double>) {
            AppendNumber(out, v);
          } else if constexpr (std::is_same_v<T, Text>) {
            AppendText(out, v.bytes);
          } else if constexpr (std::is_same_v<T, Name>) {
            AppendName(out, v.token);
          } else if constexpr (std::is_same_v<T, Array>) {
            out += '[';
            for (size_t i = 0; i < v.size(); ++i) {
              if (i > 0) out += ' ';
              Append(out, v[i], false);
            }
            out += ']';
          } else if constexpr (std::is_same_v<T, Dictionary>) {
            AppendDict(out, v);
          } else if constexpr (std::is_same_v<T, Stream>) {
            if (!top_level) {
              throw Error(ErrorCode::kSerializationFailure,
                          "stream nested inside another object");
            }
            Dictionary d = v.dict;
            d.insert_or_assign("Length", Object(static_cast<double>(v.data.size())));
            AppendDict(out, d);
            out += "\nstream\n";
            out += v.data;
            out += "\nendstream";
          } else if constexpr (std::is_same_v<T, Reference>) {
            if (graph_ != nullptr && graph_->Find(v.number) == nullptr) {
              out += "null";
            } else {
              out += std::to_string(v.number);
              out += graph_ != nullptr ? " 0 R" : " " + std::to_string(v.generation) + " R";
            }
          }
        },
        o.value());
  }

 private:
  void AppendDict(std::string& out, const Dictionary& d) const {
    out += "<<";
    for (const auto& [k, v] : d) {
      AppendName(out, k);
      out += ' ';
      Append(out, v, false);
    }
    out += ">>";
  }

  const ObjectGraph* graph_;
};

}  // namespace

std::string SerializeObject(const Object& object) {
  std::string out;
  Writer(nullptr).Append(out, object, false);
  return out;
}

std::string SerializePdf(const ObjectGraph& graph) {
  const Writer writer(&graph);
  std::string out = "%PDF-1.5\n%\xE2\xE3\xCF\xD3\n";
  const ObjectNumber size = graph.MaxObjectNumber() + 1;
  std::vector<size_t> offsets(size, 0);
  std::vector<bool> used(size, false);
  for (const auto& [num, obj] : graph.objects()) {
    offsets[num] = out.size();
    used[num] = true;
    out += std::to_string(num);
    out += " 0 obj\n";
    writer.Append(out, obj, true);
    out += "\nendobj\n";
  }
  const size_t xref_at = out.size();
  out += "xref\n0 " + std::to_string(size) + "\n";
  // Free entries form a linked list headed by object 0.
  std::vector<ObjectNumber> free_list;
  for (ObjectNumber n = 1; n < size; ++n) {
    if (!used[n]) free_list.push_back(n);
  }
  char line[24];
  auto free_next = [&](size_t i) -> ObjectNumber {
    return i < free_list.size() ? free_list[i] : 0;
  };
  std::snprintf(line, sizeof(line), "%010u 65535 f\r\n", free_next(0));
  out += line;
  size_t free_idx = 0;
  for (ObjectNumber n = 1; n < size; ++n) {
    if (used[n]) {
      std::snprintf(line, sizeof(line), "%010zu 00000 n\r\n", offsets[n]);
    } else {
      ++free_idx;
      std::snprintf(line, sizeof(line), "%010u 00001 f\r\n", free_next(free_idx));
    }
    out += line;
  }
  Dictionary trailer;
  trailer.emplace("Size", Object(static_cast<double>(size)));
  for (const char* key : {"Root", "Info", "ID"}) {
    if (auto it = graph.trailer().find(key); it != graph.trailer().end()) {
      trailer.emplace(key, it->second);
    }
  }
  out += "trailer\n";
  writer.Append(out, Object(std::move(trailer)), false);
  out += "\nstartxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
  return out;
}

}  // namespace cpath::pdf
