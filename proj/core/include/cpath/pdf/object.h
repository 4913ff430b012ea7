#ifndef CPATH_PDF_OBJECT_H_
#define CPATH_PDF_OBJECT_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cpath::pdf {

using ObjectNumber = uint32_t;

struct Null {
  friend bool operator==(const Null&, const Null&) = default;
};

struct Name {
  std::string token;
  friend bool operator==(const Name&, const Name&) = default;
};

// Raw bytes of a string object; the literal/hex distinction is not kept.
struct Text {
  std::string bytes;
  friend bool operator==(const Text&, const Text&) = default;
};

struct Reference {
  ObjectNumber number = 0;
  uint32_t generation = 0;
  friend bool operator==(const Reference&, const Reference&) = default;
};

class Object;
using Array = std::vector<Object>;

// Keys are unique and iterate in byte order, which is also the order used
// for serialization.
using Dictionary = std::map<std::string, Object, std::less<>>;

struct Stream {
  Dictionary dict;
  std::string data;  // payload bytes exactly as stored, filters untouched
  friend bool operator==(const Stream&, const Stream&);
};

class Object {
 public:
  using Value = std::variant<Null, bool, double, Text, Name, Array, Dictionary,
                             Stream, Reference>;

  Object() : value_(Null{}) {}
  Object(Null v) : value_(v) {}
  Object(bool v) : value_(v) {}
  Object(int v) : value_(static_cast<double>(v)) {}
  Object(int64_t v) : value_(static_cast<double>(v)) {}
  Object(double v) : value_(v) {}
  Object(Text v) : value_(std::move(v)) {}
  Object(Name v) : value_(std::move(v)) {}
  Object(Array v) : value_(std::move(v)) {}
  Object(Dictionary v) : value_(std::move(v)) {}
  Object(Stream v) : value_(std::move(v)) {}
  Object(Reference v) : value_(v) {}
  // Would otherwise silently convert to bool.
  Object(const char*) = delete;

  const Value& value() const { return value_; }
  Value& value() { return value_; }

  bool IsNull() const { return std::holds_alternative<Null>(value_); }
  bool IsBool() const { return std::holds_alternative<bool>(value_); }
  bool IsNumber() const { return std::holds_alternative<double>(value_); }
  bool IsText() const { return std::holds_alternative<Text>(value_); }
  bool IsName() const { return std::holds_alternative<Name>(value_); }
  bool IsArray() const { return std::holds_alternative<Array>(value_); }
  bool IsDict() const { return std::holds_alternative<Dictionary>(value_); }
  bool IsStream() const { return std::holds_alternative<Stream>(value_); }
  bool IsReference() const { return std::holds_alternative<Reference>(value_); }

  bool AsBool() const { return std::get<bool>(value_); }
  double AsNumber() const { return std::get<double>(value_); }
  const Text& AsText() const { return std::get<Text>(value_); }
  const Name& AsName() const { return std::get<Name>(value_); }
  const Array& AsArray() const { return std::get<Array>(value_); }
  Array& AsArray() { return std::get<Array>(value_); }
  const Dictionary& AsDict() const { return std::get<Dictionary>(value_); }
  Dictionary& AsDict() { return std::get<Dictionary>(value_); }
  const Stream& AsStream() const { return std::get<Stream>(value_); }
  Stream& AsStream() { return std::get<Stream>(value_); }
  const Reference& AsReference() const { return std::get<Reference>(value_); }

  // Dictionary of a Dictionary or Stream object, nullptr otherwise.
  const Dictionary* DictOrStreamDict() const;
  Dictionary* DictOrStreamDict();

  friend bool operator==(const Object& a, const Object& b) {
    return a.value_ == b.value_;
  }

 private:
  Value value_;
};

inline bool operator==(const Stream& a, const Stream& b) {
  return a.dict == b.dict && a.data == b.data;
}

// Convenience constructors used heavily by tests and fixtures.
inline Object MakeName(std::string token) { return Name{std::move(token)}; }
inline Object MakeText(std::string bytes) { return Text{std::move(bytes)}; }
inline Object MakeRef(ObjectNumber n, uint32_t gen = 0) {
  return Reference{n, gen};
}

}  // namespace cpath::pdf

#endif  // CPATH_PDF_OBJECT_H_
