#include "kprab/io.hpp"

#include <cmath>
#include <cstdio>

namespace kprab::io {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

JsonObject& JsonObject::add(std::string_view key, double v) {
  fields_.emplace_back(std::string(key), number(v));
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, long long v) {
  fields_.emplace_back(std::string(key), std::to_string(v));
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, bool v) {
  fields_.emplace_back(std::string(key), v ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, std::string_view v) {
  fields_.emplace_back(std::string(key), quoted(v));
  return *this;
}

JsonObject& JsonObject::add_raw(std::string_view key, std::string raw) {
  fields_.emplace_back(std::string(key), std::move(raw));
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += quoted(fields_[i].first) + ":" + fields_[i].second;
  }
  return out + "}";
}

std::string array(const std::vector<std::string>& raw_elements) {
  std::string out = "[";
  for (std::size_t i = 0; i < raw_elements.size(); ++i) {
    if (i) out += ",";
    out += raw_elements[i];
  }
  return out + "]";
}

}  // namespace kprab::io
