#include "koch/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "koch/errors.hpp"

namespace koch {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

static std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
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
  return out;
}

void JsonWriter::indent() {
  out_ += '\n';
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::pre_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (has_items_.back()) out_ += ',';
    indent();
    has_items_.back() = true;
  }
}

void JsonWriter::begin_object() {
  pre_value();
  out_ += '{';
  stack_.push_back('o');
  has_items_.push_back(false);
}

void JsonWriter::end_object() {
  bool had = has_items_.back();
  stack_.pop_back();
  has_items_.pop_back();
  if (had) indent();
  out_ += '}';
}

void JsonWriter::begin_array() {
  pre_value();
  out_ += '[';
  stack_.push_back('a');
  has_items_.push_back(false);
}

void JsonWriter::end_array() {
  bool had = has_items_.back();
  stack_.pop_back();
  has_items_.pop_back();
  if (had) indent();
  out_ += ']';
}

void JsonWriter::key(std::string_view name) {
  if (has_items_.back()) out_ += ',';
  indent();
  has_items_.back() = true;
  out_ += '"';
  out_ += json_escape(name);
  out_ += "\": ";
  pending_key_ = true;
}

void JsonWriter::value(double v) {
  pre_value();
  if (std::isnan(v) || std::isinf(v)) {
    out_ += "null";
  } else {
    out_ += fmt_g17(v);
  }
}

void JsonWriter::value(int v) { value(static_cast<std::int64_t>(v)); }

void JsonWriter::value(std::int64_t v) {
  pre_value();
  out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
  pre_value();
  out_ += std::to_string(v);
}

void JsonWriter::value(std::string_view s) {
  pre_value();
  out_ += '"';
  out_ += json_escape(s);
  out_ += '"';
}

void JsonWriter::value_bool(bool b) {
  pre_value();
  out_ += b ? "true" : "false";
}

void JsonWriter::value_null() {
  pre_value();
  out_ += "null";
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvWriter::cell(double v) { cell(std::string_view(fmt_g17(v))); }

void CsvWriter::cell(std::int64_t v) { cell(std::string_view(std::to_string(v))); }

void CsvWriter::cell(std::uint64_t v) { cell(std::string_view(std::to_string(v))); }

void CsvWriter::cell(std::string_view s) {
  if (in_row_ >= columns_) throw ConfigError("csv row wider than header");
  if (in_row_) out_ += ',';
  out_.append(s);
  ++in_row_;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw ConfigError("csv row narrower than header");
  out_ += '\n';
  in_row_ = 0;
}

}  // namespace koch
