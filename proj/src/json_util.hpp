#pragma once

#include <string>

#include <json.hpp>

#include "qwp/errors.hpp"

namespace qwp::detail {

// parse_error messages already carry "line L, column C"
inline nlohmann::json parse_json(const std::string& text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(source + ": malformed JSON: " + e.what());
  }
}

// Typed field access with "source: field: problem" diagnostics.
struct FieldReader {
  std::string source;
  explicit FieldReader(std::string s) : source(std::move(s)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw DomainError(source + ": field '" + field + "': " + what);
  }

  static std::string join(const std::string& at, const std::string& key) {
    return at.empty() ? key : at + "." + key;
  }

  const nlohmann::json& field(const nlohmann::json& obj, const std::string& key,
                              const std::string& at = "") const {
    if (!obj.is_object()) fail(at.empty() ? "<root>" : at, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(at, key), "missing");
    return *it;
  }

  template <class T>
  T get(const nlohmann::json& obj, const std::string& key, const std::string& at = "") const {
    const auto& v = field(obj, key, at);
    try {
      return v.get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(join(at, key), "has the wrong type (" + std::string(v.type_name()) + ")");
    }
  }

  const nlohmann::json& array(const nlohmann::json& obj, const std::string& key,
                              const std::string& at = "") const {
    const auto& v = field(obj, key, at);
    if (!v.is_array()) fail(join(at, key), "expected an array");
    return v;
  }
};

// Compact single-line dump with a space after separators.
inline std::string dump_inline(const nlohmann::json& j) {
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) s += ", ";
      s += dump_inline(j[i]);
    }
    return s + "]";
  }
  return j.dump();
}

}  // namespace qwp::detail
