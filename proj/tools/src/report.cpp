#include "compana/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace compana::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_plain(const std::string& s, std::string_view whole) {
  if (s.empty()) throw ArgumentError("empty number in '" + std::string(whole) + "'");
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ArgumentError("not a number: '" + std::string(whole) + "'");
  }
  return v;
}

bool is_digits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  if (const auto caret = s.find('^'); caret != std::string::npos) {
    const double base = parse_plain(s.substr(0, caret), text);
    const double exponent = parse_plain(s.substr(caret + 1), text);
    const double v = std::pow(base, exponent);
    if (!std::isfinite(v)) throw ArgumentError("number out of range: '" + s + "'");
    return v;
  }
  return parse_plain(s, text);
}

std::uint64_t parse_count(std::string_view text) {
  const std::string s = trim(text);
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  // Integer powers are done in integers so 10^18 stays exact.
  if (const auto caret = s.find('^'); caret != std::string::npos) {
    const std::string base_s = s.substr(0, caret);
    const std::string exp_s = s.substr(caret + 1);
    if (is_digits(base_s) && is_digits(exp_s)) {
      const std::uint64_t base = parse_count(base_s);
      const std::uint64_t exponent = parse_count(exp_s);
      std::uint64_t v = 1;
      for (std::uint64_t i = 0; i < exponent; ++i) {
        if (base != 0 && v > (kLimit - 1) / base) throw ArgumentError("number out of range: '" + s + "'");
        v *= base;
        if (v == 0) break;
      }
      return v;
    }
  }
  if (is_digits(s)) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || v >= kLimit) throw ArgumentError("number out of range: '" + s + "'");
    return v;
  }
  const double v = parse_real(s);
  if (v < 0.0 || v != std::floor(v)) throw ArgumentError("expected a non-negative integer: '" + s + "'");
  if (v >= 9223372036854775808.0) throw ArgumentError("number out of range: '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_count_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const std::uint64_t lo = parse_count(item.substr(0, dots));
      const std::uint64_t hi = parse_count(item.substr(dots + 2));
      if (lo == 0 || lo > hi) throw ArgumentError("bad range '" + std::string(item) + "'");
      for (std::uint64_t v = lo; v < hi; v *= 2) out.push_back(v);
      out.push_back(hi);
    } else {
      out.push_back(parse_count(item));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Record& Record::add(std::string name, Cell value) {
  if (const double* d = std::get_if<double>(&value); d != nullptr && !std::isfinite(*d)) {
    throw NonFiniteValue("non-finite value for field '" + name + "'");
  }
  fields.emplace_back(std::move(name), std::move(value));
  return *this;
}

const Cell* Record::find(std::string_view name) const {
  for (const auto& [key, value] : fields) {
    if (key == name) return &value;
  }
  return nullptr;
}

std::string format_real(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<Record>& rows, int precision) {
  if (rows.empty()) return;
  const auto& header = rows.front().fields;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i].first;
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.fields.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
            } else if constexpr (std::is_same_v<T, std::string>) {
              os << csv_escape(v);
            } else if constexpr (std::is_same_v<T, double>) {
              os << format_real(v, precision);
            } else {
              os << v;
            }
          },
          row.fields[i].second);
    }
    os << '\n';
  }
}

}  // namespace compana::cli
