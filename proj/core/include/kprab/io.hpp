#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kprab::io {

/// %.17g, with non-finite values written as null.
std::string number(double v);

/// Quoted JSON string with escapes.
std::string quoted(std::string_view s);

/// Builds a flat or nested JSON object with keys in insertion order.
class JsonObject {
 public:
  JsonObject& add(std::string_view key, double v);
  JsonObject& add(std::string_view key, long long v);
  JsonObject& add(std::string_view key, std::size_t v) { return add(key, static_cast<long long>(v)); }
  JsonObject& add(std::string_view key, int v) { return add(key, static_cast<long long>(v)); }
  JsonObject& add(std::string_view key, bool v);
  JsonObject& add(std::string_view key, std::string_view v);
  JsonObject& add(std::string_view key, const char* v) { return add(key, std::string_view(v)); }
  JsonObject& add_raw(std::string_view key, std::string raw);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

/// JSON array of already-serialised elements.
std::string array(const std::vector<std::string>& raw_elements);

}  // namespace kprab::io
