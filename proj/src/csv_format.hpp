#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qra/measurement_model.hpp"

namespace qra::detail {

struct CsvField {
  std::string text;
  std::size_t column = 1;  // 1-based column of the first character
  bool quoted = false;
};

struct CsvRecord {
  std::vector<CsvField> fields;
  std::size_t line = 1;
};

/// RFC 4180 records; quoted fields may span lines. Blank lines are dropped.
std::vector<CsvRecord> read_csv_records(std::string_view text);

struct CsvParse {
  QraDataset dataset;
  std::vector<std::size_t> measurement_lines;  // file line of each measurement
};

CsvParse parse_csv_with_lines(std::string_view text);

/// Shortest decimal text that reads back to exactly `v`.
std::string format_real(double v);
/// Decimal real; false on anything else (hex, inf, nan, trailing junk).
bool parse_real(std::string_view text, double& out);

}  // namespace qra::detail
