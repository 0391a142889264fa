#include "qie/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace qie::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("table row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column named " + std::string(name));
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "jsonl") return OutputFormat::jsonl;
  throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

std::string_view extension(OutputFormat format) {
  return format == OutputFormat::csv ? ".csv" : ".jsonl";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

namespace {

void write_csv_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (const char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

nlohmann::json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return nullptr;
    }
    nlohmann::json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  auto line = [&](const auto& fields, auto&& text) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      write_csv_field(out, text(fields[i]));
    }
    out << "\r\n";
  };
  line(table.columns, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) line(row, format_cell);
}

void write_jsonl(const Table& table, std::ostream& out) {
  for (const auto& row : table.rows) {
    // ordered_json keeps the column order of the table.
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    out << obj.dump() << '\n';
  }
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    write_csv(table, out);
  } else {
    write_jsonl(table, out);
  }
}

void write_table_file(const Table& table, OutputFormat format, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_table(table, format, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

CsvDocument read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get();
      end_record();
    } else if (c == '\n') {
      end_record();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
  if (field_started || !record.empty()) end_record();

  CsvDocument doc;
  if (records.empty()) return doc;
  doc.header = std::move(records.front());
  doc.records.assign(std::make_move_iterator(records.begin() + 1),
                     std::make_move_iterator(records.end()));
  for (const auto& r : doc.records) {
    if (r.size() != doc.header.size()) throw std::invalid_argument("csv: ragged record");
  }
  return doc;
}

CsvDocument read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

double parse_number(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace qie::cli
