#pragma once

#include <string>
#include <vector>

#include "fcprog/timeseries.hpp"

namespace fcprog {

/// Shortest decimal string that round-trips the exact double value.
/// All file output goes through this so reruns are byte-identical.
std::string format_double(double value);

/// Reads a two-column `time_h,value` CSV. Header row is required, times must
/// be strictly increasing. Irregular grids are resampled by linear
/// interpolation onto the uniform grid spanning the same range with the same
/// sample count. Throws ParseError (with 1-based line numbers) on bad input.
TimeSeries read_timeseries_csv(const std::string& path);

/// Writes `time_h,value` rows with a trailing newline.
void write_timeseries_csv(const std::string& path, const TimeSeries& series);

/// Generic CSV writer for wider exports; caller formats the cells.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Generic reader used by tests and report tooling: header + raw string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv_table(const std::string& path);

/// Strict double parse of a whole cell; throws ParseError mentioning the
/// 1-based line when malformed or non-finite.
double parse_double_cell(const std::string& cell, std::size_t line);

}  // namespace fcprog
