#pragma once

// Column-oriented result tables and their CSV / JSON-lines encodings.
//
// Numbers are written with std::to_chars (shortest round-trip form, '.'
// decimal separator regardless of locale); CSV fields are quoted per RFC 4180.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qie::cli {

/// Empty, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<Cell> row);
  std::size_t column_index(std::string_view name) const;
};

enum class OutputFormat { csv, jsonl };

OutputFormat parse_output_format(std::string_view text);
std::string_view extension(OutputFormat format);

/// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);
std::string format_cell(const Cell& cell);

void write_csv(const Table& table, std::ostream& out);
void write_jsonl(const Table& table, std::ostream& out);
void write_table(const Table& table, OutputFormat format, std::ostream& out);
/// Writes to `path`, creating parent directories.
void write_table_file(const Table& table, OutputFormat format, const std::string& path);

/// RFC 4180 reader returning raw field text; the first record is the header.
struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
};

CsvDocument read_csv(std::istream& in);
CsvDocument read_csv_file(const std::string& path);

/// Inverse of format_number; throws std::invalid_argument on bad text.
double parse_number(std::string_view text);

}  // namespace qie::cli
