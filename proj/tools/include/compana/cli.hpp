#pragma once

// Command-line front end. Everything runs in-process through run(), which
// writes results to `out` (or the --out file) and diagnostics to `err`.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace compana::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kNumericalError = 3,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// -- argument parsing ---------------------------------------------------------

/// Thrown for malformed numeric arguments (exit code 2).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Real value from "123", "1.5e6", "10^6" or "2^20".
double parse_real(std::string_view text);

/// Non-negative integer from the same forms; must be integral and < 2^63.
std::uint64_t parse_count(std::string_view text);

/// Comma separated counts and ranges. "a..b" expands to a, 2a, 4a, ... below
/// b followed by b itself.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

// -- reports ------------------------------------------------------------------

using Cell = std::variant<std::monostate, std::string, std::int64_t, std::uint64_t, double>;

/// One output row: ordered (field name, value) pairs. An empty cell prints as
/// an empty CSV field and as null in JSON.
struct Record {
  std::vector<std::pair<std::string, Cell>> fields;

  Record& add(std::string name, Cell value);
  const Cell* find(std::string_view name) const;
};

enum class Format { csv, json };

struct OutputOptions {
  Format format = Format::csv;
  int precision = 12;
};

/// Formats a double with `precision` significant digits (%g style).
std::string format_real(double x, int precision);

/// Header line from the first record, then one line per record.
void write_csv(std::ostream& os, const std::vector<Record>& rows, int precision);

/// Thrown when a computed value is NaN or infinite (exit code 3).
struct NonFiniteValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace compana::cli
