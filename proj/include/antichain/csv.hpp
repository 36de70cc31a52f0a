#pragma once

#include <string>
#include <vector>

namespace antichain {

// Round-trippable decimal rendering of a double (shortest form not needed;
// 17 significant digits are).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws parse_error
};

void write_csv(const std::string& path, const CsvTable& table);

// format: "csv" or "json" ({header, rows}); data interchange stays CSV,
// JSON is for reports and configs.
void write_table(const std::string& path, const CsvTable& table, const std::string& format);

// Strict reader for the artifact's own schemas: no quoting, fixed column
// counts; malformed rows raise parse_error with the line number.
CsvTable read_csv(const std::string& path);

double parse_double_field(const std::string& field, long line);
long parse_long_field(const std::string& field, long line);

}  // namespace antichain
