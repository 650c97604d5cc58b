#pragma once

// Plain-text formats used by the command line tool: vectors as one value per
// line (or whitespace separated columns for several right-hand sides) and
// matrices as CSV rows joined by ", ".

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "circkr/dense_matrix.hpp"
#include "circkr/error.hpp"

namespace circkr::text {

/// Shortest decimal text that reads back as `value`, rounded to
/// `precision` significant digits. Negative zero prints as 0.
inline std::string format(double value, int precision) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

/// Shortest round-trip decimal text.
inline std::string format(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

inline std::string join(std::span<const double> values, int precision, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += sep;
    out += format(values[k], precision);
  }
  return out;
}

inline void write_csv_row(std::ostream& os, std::span<const double> values, int precision) {
  os << join(values, precision, ", ") << '\n';
}

inline void write_csv(std::ostream& os, const DenseMatrix<double>& m, int precision) {
  for (std::size_t i = 0; i < m.order(); ++i) write_csv_row(os, m.row(i), precision);
}

inline double parse_scalar(std::string_view token) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw Error(ErrorKind::InvalidInput, "cannot parse '" + std::string(token) + "' as a number");
  }
  return value;
}

/// Reads rows of whitespace separated numbers; blank lines and lines starting
/// with '#' are skipped. Every row must have the same number of entries.
/// Returns the data column by column.
inline std::vector<std::vector<double>> read_columns(std::istream& is) {
  std::vector<std::vector<double>> columns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      if (row.empty() && token.front() == '#') break;
      row.push_back(parse_scalar(token));
    }
    if (row.empty()) continue;
    if (columns.empty()) columns.resize(row.size());
    if (row.size() != columns.size()) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + " has " +
                                               std::to_string(row.size()) + " values, expected " +
                                               std::to_string(columns.size()));
    }
    for (std::size_t k = 0; k < row.size(); ++k) columns[k].push_back(row[k]);
  }
  return columns;
}

/// Writes columns back in the row layout `read_columns` accepts.
inline void write_columns(std::ostream& os, const std::vector<std::vector<double>>& columns,
                          int precision) {
  if (columns.empty()) return;
  const std::size_t rows = columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k > 0) os << ' ';
      os << format(columns[k][i], precision);
    }
    os << '\n';
  }
}

/// Parses a square matrix written by `write_csv`.
inline DenseMatrix<double> read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = line.find(',', start);
      std::string token = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
      const auto b = token.find_first_not_of(" \t");
      const auto e = token.find_last_not_of(" \t\r");
      row.push_back(parse_scalar(b == std::string::npos ? "" : token.substr(b, e - b + 1)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  DenseMatrix<double> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorKind::InvalidInput, "csv matrix is not square");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace circkr::text
