#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

// Minimal JSON emitter with a fixed, caller-controlled field order and a
// fixed float format (17 significant digits round-trips binary64), so equal
// inputs serialize to byte-identical output.

namespace mcera {

inline std::string json_double(double v) {
  if (v != v) return "null";
  if (v > 1.7976931348623157e308) return "null";
  if (v < -1.7976931348623157e308) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

class JsonWriter {
 public:
  JsonWriter& begin_object() { open('{'); return *this; }
  JsonWriter& end_object() { close('}'); return *this; }
  JsonWriter& begin_array() { open('['); return *this; }
  JsonWriter& end_array() { close(']'); return *this; }

  JsonWriter& key(const std::string& name) {
    comma();
    out_ += '"';
    out_ += json_escape(name);
    out_ += "\":";
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return raw(json_double(v)); }
  JsonWriter& value(std::int64_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::uint64_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(const std::string& v) {
    return raw('"' + json_escape(v) + '"');
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null() { return raw("null"); }
  // Splices pre-serialized JSON in as one value.
  JsonWriter& raw_json(const std::string& json) { return raw(json); }

  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (!first_.empty() && !first_.back() && !pending_value_) out_ += ',';
    if (!first_.empty()) first_.back() = false;
  }
  void open(char ch) {
    comma();
    pending_value_ = false;
    out_ += ch;
    first_.push_back(true);
  }
  void close(char ch) {
    out_ += ch;
    first_.pop_back();
  }
  JsonWriter& raw(const std::string& text) {
    comma();
    pending_value_ = false;
    out_ += text;
    return *this;
  }

  std::string out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

}  // namespace mcera
