#include "antichain/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "antichain/errors.hpp"

namespace antichain {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_table(const std::string& path, const CsvTable& table, const std::string& format) {
  if (format == "csv") {
    write_csv(path, table);
    return;
  }
  if (format != "json") throw std::domain_error("format must be csv or json");
  nlohmann::ordered_json j;
  j["header"] = table.header;
  j["rows"] = table.rows;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw parse_error("missing column '" + name + "'", 1);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << table.header[i] << (i + 1 == table.header.size() ? "" : ",");
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << row[i] << (i + 1 == row.size() ? "" : ",");
    out << "\n";
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open: " + path);
  CsvTable table;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (lineno == 1) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size())
      throw parse_error("expected " + std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()),
                        lineno);
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw parse_error("empty file: " + path);
  return table;
}

double parse_double_field(const std::string& field, long line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(field, &pos);
    if (pos != field.size()) throw parse_error("trailing characters in number '" + field + "'", line);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("not a number: '" + field + "'", line);
  }
}

long parse_long_field(const std::string& field, long line) {
  try {
    std::size_t pos = 0;
    long v = std::stol(field, &pos);
    if (pos != field.size()) throw parse_error("trailing characters in integer '" + field + "'", line);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("not an integer: '" + field + "'", line);
  }
}

}  // namespace antichain
