#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace koch {

// %.17g rendering used for every floating-point value we emit; NaN and
// infinities render as JSON null / CSV nan deliberately.
std::string fmt_g17(double v);

// Minimal streaming JSON writer: insertion-ordered keys, deterministic bytes,
// two-space indentation, doubles through fmt_g17.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(std::string_view name);
  void value(double v);
  void value(int v);
  void value(std::int64_t v);
  void value(std::uint64_t v);
  void value(std::string_view s);
  void value_bool(bool b);
  void value_null();

  const std::string& str() const { return out_; }

 private:
  void pre_value();
  void indent();

  std::string out_;
  std::vector<char> stack_;  // 'o' object, 'a' array
  std::vector<bool> has_items_;
  bool pending_key_ = false;
};

// Minimal CSV writer: fixed header, %.17g cells, '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void cell(double v);
  void cell(std::int64_t v);
  void cell(std::uint64_t v);
  void cell(std::string_view s);
  void end_row();

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

}  // namespace koch
