#pragma once

// Line-oriented text serialization.
//
//   n=<int> kind=table     followed by 2^n lines "<value>" in index order
//   n=<int> kind=coeffs    followed by lines "<subset-hex> <value>" in ascending mask order
//
// Values use the shortest decimal form that round-trips to the same double.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "bhlearn/errors.hpp"
#include "bhlearn/hypercube.hpp"

namespace bhlearn {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

inline std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse unsigned integer '" + std::string(text) + "'");
  }
  return v;
}

inline void write_table(std::ostream& os, const TruthTable& f) {
  os << "n=" << f.dimension() << " kind=table\n";
  for (double v : f.values()) os << format_double(v) << '\n';
}

inline void write_coeffs(std::ostream& os, const CoefficientMap& c) {
  os << "n=" << c.dimension() << " kind=coeffs\n";
  for (const auto& [s, v] : c) os << s.to_hex() << ' ' << format_double(v) << '\n';
}

using SerializedFunction = std::variant<TruthTable, CoefficientMap>;

inline SerializedFunction read_function(std::istream& is, std::size_t cap = kDefaultDenseCap) {
  std::string header;
  if (!std::getline(is, header)) throw InvalidArgument("missing header line");
  std::istringstream hs(header);
  std::string n_field;
  std::string kind_field;
  hs >> n_field >> kind_field;
  if (!n_field.starts_with("n=") || !kind_field.starts_with("kind=")) {
    throw InvalidArgument("malformed header '" + header + "'");
  }
  const auto n = static_cast<std::size_t>(parse_u64(std::string_view(n_field).substr(2)));
  const std::string kind = kind_field.substr(5);

  std::string line;
  if (kind == "table") {
    detail::require_dense(n, cap);
    std::vector<double> values;
    values.reserve(std::size_t{1} << n);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      values.push_back(parse_double(line));
    }
    return TruthTable(n, std::move(values), cap);
  }
  if (kind == "coeffs") {
    CoefficientMap c(n);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto space = line.find(' ');
      detail::require(space != std::string::npos, "coefficient line needs '<hex> <value>'");
      const SubsetMask s = SubsetMask::from_hex(n, std::string_view(line).substr(0, space));
      detail::require(!c.contains(s), "duplicate subset " + s.to_hex());
      c.set(s, parse_double(std::string_view(line).substr(space + 1)));
    }
    return c;
  }
  throw InvalidArgument("unknown kind '" + kind + "'");
}

}  // namespace bhlearn
