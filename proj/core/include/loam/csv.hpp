#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "loam/grid.hpp"

namespace loam {

/// Parsed long-format file: one measurement per row under the header
/// `subject,observer,replicate,value`, any column order. An optional
/// `method` column is accepted but must hold a single value (two-method
/// data belongs in the wide format or in two files); its value is
/// surfaced in `method`.
struct LongCsv {
  std::vector<LongRecord> records;
  std::string method;  // empty when the file has no method column
};

/// Parsed wide-format comparison file: `subject,observer,replicate`
/// plus exactly two method columns whose header names become the method
/// names. Row order is shared, so records_x and records_y are aligned.
struct WideCsv {
  std::string method_x;
  std::string method_y;
  std::vector<LongRecord> records_x;
  std::vector<LongRecord> records_y;
};

/// Both parsers accept quoted fields with doubled-quote escapes and CRLF
/// or LF line ends, and throw ParseError naming the offending line.
LongCsv parse_long_csv(std::string_view text);
WideCsv parse_wide_csv(std::string_view text);

/// Serializes a grid to long format in storage order. Values are written
/// with the shortest representation that parses back bit-exactly.
std::string write_long_csv(const MeasurementGrid& grid);

/// Serializes a paired study to wide format (two value columns).
std::string write_wide_csv(const MeasurementGrid& grid_x, const MeasurementGrid& grid_y,
                           std::string_view method_x, std::string_view method_y);

}  // namespace loam
