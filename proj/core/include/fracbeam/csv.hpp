#pragma once

// Flat CSV output: UTF-8, comma separated, header row, LF line endings,
// doubles written with 17 significant digits so a re-read is bit exact.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fracbeam {

using CsvCell = std::variant<double, std::int64_t, std::string>;
using CsvRow = std::vector<CsvCell>;

struct CsvSchema {
  std::vector<std::string> columns;
};

namespace schema {
inline const CsvSchema spectrum{{"re", "im"}};
inline const CsvSchema resolvent{{"lambda", "norm"}};
inline const CsvSchema energy{{"t", "energy"}};
inline const CsvSchema regionmap{{"tau", "sigma", "region", "phi_theory", "phi_hat", "r2", "pass"}};
}  // namespace schema

std::string format_double(double value);

/// Throws std::invalid_argument if a row width differs from the schema.
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, const CsvSchema& schema);

/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema,
               const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws std::runtime_error if absent.
  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

}  // namespace fracbeam
