#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paperjson::pdf {

class Object;

using Array = std::vector<Object>;
using Dict = std::map<std::string, Object, std::less<>>;

struct Ref {
  int num = 0;
  int gen = 0;
  friend bool operator==(const Ref&, const Ref&) = default;
};

struct Name {
  std::string value;
};

struct String {
  std::string bytes;
};

struct StreamData;

// Immutable PDF value. Composite values share their storage, so copies are
// cheap.
class Object {
 public:
  Object() = default;
  Object(bool b) : v_(b) {}
  Object(std::int64_t i) : v_(i) {}
  Object(double d) : v_(d) {}
  Object(Name n) : v_(std::move(n)) {}
  Object(String s) : v_(std::move(s)) {}
  Object(Ref r) : v_(r) {}
  Object(Array a) : v_(std::make_shared<const Array>(std::move(a))) {}
  Object(Dict d) : v_(std::make_shared<const Dict>(std::move(d))) {}
  Object(std::shared_ptr<const StreamData> s) : v_(std::move(s)) {}

  bool is_null() const { return std::holds_alternative<std::monostate>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_number() const { return is_int() || std::holds_alternative<double>(v_); }
  bool is_name() const { return std::holds_alternative<Name>(v_); }
  bool is_name(std::string_view n) const { return is_name() && name() == n; }
  bool is_string() const { return std::holds_alternative<String>(v_); }
  bool is_array() const { return std::holds_alternative<std::shared_ptr<const Array>>(v_); }
  bool is_dict() const { return std::holds_alternative<std::shared_ptr<const Dict>>(v_); }
  bool is_stream() const { return std::holds_alternative<std::shared_ptr<const StreamData>>(v_); }
  bool is_ref() const { return std::holds_alternative<Ref>(v_); }

  bool as_bool() const { return is_bool() && std::get<bool>(v_); }
  std::int64_t as_int() const;
  double as_number() const;
  const std::string& name() const { return std::get<Name>(v_).value; }
  const std::string& str() const { return std::get<String>(v_).bytes; }
  const Array& array() const { return *std::get<std::shared_ptr<const Array>>(v_); }
  // For streams this is the stream dictionary.
  const Dict& dict() const;
  const StreamData& stream() const { return *std::get<std::shared_ptr<const StreamData>>(v_); }
  Ref ref() const { return std::get<Ref>(v_); }

 private:
  std::variant<std::monostate, bool, std::int64_t, double, Name, String, Ref,
               std::shared_ptr<const Array>, std::shared_ptr<const Dict>,
               std::shared_ptr<const StreamData>>
      v_;
};

struct StreamData {
  Dict dict;
  std::string raw;  // still encoded
};

// Returns a null object when the key is absent.
const Object& lookup(const Dict& d, std::string_view key);

}  // namespace paperjson::pdf
