#pragma once

// Minimal RFC 4180 writer: fields containing a comma, quote or line break are quoted,
// with embedded quotes doubled. Rows end in '\n'.

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bhlearn/text_format.hpp"

namespace bhlearn {

inline std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvRow {
 public:
  CsvRow& operator<<(std::string_view s) {
    fields_.push_back(csv_escape(s));
    return *this;
  }
  CsvRow& operator<<(const std::string& s) { return *this << std::string_view(s); }
  CsvRow& operator<<(const char* s) { return *this << std::string_view(s); }
  CsvRow& operator<<(double v) { return *this << format_double(v); }
  CsvRow& operator<<(bool v) { return *this << (v ? "1" : "0"); }
  template <class I>
    requires std::is_integral_v<I>
  CsvRow& operator<<(I v) {
    return *this << std::to_string(v);
  }

  void write(std::ostream& os) const {
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) os << ',';
      os << fields_[i];
    }
    os << '\n';
  }

 private:
  std::vector<std::string> fields_;
};

inline void write_csv_header(std::ostream& os, std::initializer_list<std::string_view> names) {
  CsvRow row;
  for (auto n : names) row << n;
  row.write(os);
}

}  // namespace bhlearn
