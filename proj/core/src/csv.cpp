#include "fracbeam/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracbeam {

namespace {

std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CellWriter {
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const std::string& s) const { return escape(s); }
};

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, const CsvSchema& schema) {
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    out << (c ? "," : "") << escape(schema.columns[c]);
  }
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema.columns.size()) {
      throw std::invalid_argument("write_csv: row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " cells, schema has " +
                                  std::to_string(schema.columns.size()));
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out << (c ? "," : "") << std::visit(CellWriter{}, rows[r][c]);
    }
    out << '\n';
  }
}

void write_csv(const std::vector<CsvRow>& rows, const CsvSchema& schema,
               const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_csv(buffer, rows, schema);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << buffer.str();
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("CSV has no column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size()) {
        throw std::runtime_error("CSV row " + std::to_string(table.rows.size() + 1) + " has " +
                                 std::to_string(cells.size()) + " cells, header has " +
                                 std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

}  // namespace fracbeam
