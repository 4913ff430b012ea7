#include "cpath/pdf/json_io.h"

#include <charconv>
#include <cmath>

#include "cpath/util/encoding.h"
#include "cpath/util/error.h"
#include "json.hpp"

namespace cpath::pdf {
namespace {

using nlohmann::json;

[[noreturn]] void Violation(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, path + ": " + what);
}

Dictionary DecodeDict(const json& j, const std::string& path);

Object Decode(const json& j, const std::string& path, bool top_level) {
  switch (j.type()) {
    case json::value_t::null:
      return Null{};
    case json::value_t::boolean:
      return j.get<bool>();
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float:
      return j.get<double>();
    case json::value_t::array: {
      Array arr;
      for (size_t i = 0; i < j.size(); ++i) {
        arr.push_back(Decode(j[i], path + "[" + std::to_string(i) + "]", false));
      }
      return arr;
    }
    case json::value_t::object:
      break;
    default:
      Violation(path, "unsupported JSON value");
  }
  if (j.contains("text_b64")) {
    if (j.size() != 1 || !j["text_b64"].is_string()) {
      Violation(path, "text must be {\"text_b64\": <string>}");
    }
    auto bytes = Base64Decode(j["text_b64"].get<std::string>());
    if (!bytes) Violation(path + ".text_b64", "invalid base64");
    return Text{std::move(*bytes)};
  }
  if (j.contains("name")) {
    if (j.size() != 1 || !j["name"].is_string() ||
        j["name"].get<std::string>().empty()) {
      Violation(path, "name must be {\"name\": <non-empty string>}");
    }
    return Name{j["name"].get<std::string>()};
  }
  if (j.contains("ref")) {
    const json& r = j["ref"];
    if (!r.is_number_unsigned() && !(r.is_number_integer() && r.get<int64_t>() >= 0)) {
      Violation(path + ".ref", "must be a non-negative integer");
    }
    uint32_t gen = 0;
    if (j.contains("gen")) {
      const json& g = j["gen"];
      if (!g.is_number_integer() || g.get<int64_t>() < 0) {
        Violation(path + ".gen", "must be a non-negative integer");
      }
      gen = g.get<uint32_t>();
    }
    if (j.size() != (j.contains("gen") ? 2u : 1u)) {
      Violation(path, "unexpected keys in reference");
    }
    return Reference{r.get<ObjectNumber>(), gen};
  }
  if (j.contains("dict")) {
    Dictionary dict = DecodeDict(j["dict"], path + ".dict");
    if (j.contains("stream_b64")) {
      if (j.size() != 2 || !j["stream_b64"].is_string()) {
        Violation(path, "stream must be {\"dict\":..., \"stream_b64\": <string>}");
      }
      if (!top_level) Violation(path, "streams must be top-level objects");
      auto bytes = Base64Decode(j["stream_b64"].get<std::string>());
      if (!bytes) Violation(path + ".stream_b64", "invalid base64");
      Stream s;
      s.data = std::move(*bytes);
      s.dict = std::move(dict);
      return s;
    }
    if (j.size() != 1) Violation(path, "unexpected keys in dictionary");
    return dict;
  }
  Violation(path, "object has none of text_b64/name/ref/dict");
}

Dictionary DecodeDict(const json& j, const std::string& path) {
  if (!j.is_object()) Violation(path, "must be a JSON object");
  Dictionary dict;
  for (const auto& [k, v] : j.items()) {
    if (k.empty()) Violation(path, "empty dictionary key");
    dict.emplace(k, Decode(v, path + "." + k, false));
  }
  return dict;
}

json EncodeDict(const Dictionary& d);

json Encode(const Object& o) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Null>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          if (v == std::trunc(v) && std::fabs(v) < 9.0e15) {
            return static_cast<int64_t>(v);
          }
          return v;
        } else if constexpr (std::is_same_v<T, Text>) {
          return json{{"text_b64", Base64Encode(v.bytes)}};
        } else if constexpr (std::is_same_v<T, Name>) {
          return json{{"name", v.token}};
        } else if constexpr (std::is_same_v<T, Array>) {
          json arr = json::array();
          for (const auto& e : v) arr.push_back(Encode(e));
          return arr;
        } else if constexpr (std::is_same_v<T, Dictionary>) {
          return json{{"dict", EncodeDict(v)}};
        } else if constexpr (std::is_same_v<T, Stream>) {
          return json{{"dict", EncodeDict(v.dict)},
                      {"stream_b64", Base64Encode(v.data)}};
        } else {
          json r{{"ref", v.number}};
          if (v.generation != 0) r["gen"] = v.generation;
          return r;
        }
      },
      o.value());
}

json EncodeDict(const Dictionary& d) {
  json j = json::object();
  for (const auto& [k, v] : d) j[k] = Encode(v);
  return j;
}

}  // namespace

ObjectGraph LoadGraphJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Violation("$", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Violation("$", "top level must be an object");
  if (!doc.contains("trailer")) Violation("$.trailer", "missing");
  if (!doc.contains("objects")) Violation("$.objects", "missing");
  for (const auto& [k, v] : doc.items()) {
    if (k != "trailer" && k != "objects") Violation("$." + k, "unexpected key");
  }
  Dictionary trailer = DecodeDict(doc["trailer"], "$.trailer");
  if (trailer.find("Root") == trailer.end()) Violation("$.trailer.Root", "missing");
  if (!doc["objects"].is_object()) Violation("$.objects", "must be a JSON object");
  ObjectGraph::ObjectMap objects;
  for (const auto& [k, v] : doc["objects"].items()) {
    ObjectNumber num = 0;
    auto [p, ec] = std::from_chars(k.data(), k.data() + k.size(), num);
    if (k.empty() || ec != std::errc() || p != k.data() + k.size() || num == 0) {
      Violation("$.objects." + k, "key must be a positive decimal object number");
    }
    objects.emplace(num, Decode(v, "$.objects." + k, true));
  }
  try {
    return ObjectGraph(std::move(objects), std::move(trailer), Provenance::kLoadedJson);
  } catch (const Error& e) {
    Violation("$.trailer.Root", e.what());
  }
}

std::string SerializeGraphJson(const ObjectGraph& graph) {
  json objects = json::object();
  for (const auto& [num, obj] : graph.objects()) objects[std::to_string(num)] = Encode(obj);
  json doc{{"objects", std::move(objects)}, {"trailer", EncodeDict(graph.trailer())}};
  return doc.dump(1);
}

}  // namespace cpath::pdf
