#include "fcprog/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace fcprog {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double_cell(const std::string& cell, std::size_t line) {
    std::string s = trim(cell);
    if (s.empty()) throw ParseError("empty numeric cell", line);
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    double out = 0.0;
    auto res = std::from_chars(first, last, out, std::chars_format::general);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError("cannot parse number '" + s + "'", line);
    if (!std::isfinite(out))
        throw ParseError("non-finite value '" + s + "'", line);
    return out;
}

TimeSeries read_timeseries_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    std::vector<double> times;
    std::vector<double> values;

    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (!saw_header) {
            auto cells = split_cells(stripped);
            if (cells.size() != 2 || cells[0] != "time_h" || cells[1] != "value")
                throw ParseError("expected header 'time_h,value', got '" + stripped + "'", lineno);
            saw_header = true;
            continue;
        }
        auto cells = split_cells(stripped);
        if (cells.size() != 2)
            throw ParseError("expected 2 columns, got " + std::to_string(cells.size()), lineno);
        double t = parse_double_cell(cells[0], lineno);
        double v = parse_double_cell(cells[1], lineno);
        if (!times.empty() && t <= times.back())
            throw ParseError("time must be strictly increasing", lineno);
        times.push_back(t);
        values.push_back(v);
    }

    if (!saw_header) throw ParseError("missing header 'time_h,value'", 1);
    if (times.size() < 2) throw ParseError("need at least 2 data rows, got " + std::to_string(times.size()), lineno == 0 ? 1 : lineno);

    const std::size_t n = times.size();
    const double t0 = times.front();
    const double dt = (times.back() - t0) / static_cast<double>(n - 1);

    double max_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_dev = std::max(max_dev, std::abs(times[i] - (t0 + static_cast<double>(i) * dt)));
    if (max_dev <= 1e-6 * dt)
        return TimeSeries(t0, dt, std::move(values));

    // Irregular grid: resample onto the uniform grid spanning the same range.
    std::vector<double> resampled(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        while (j + 2 < n && times[j + 1] <= t) ++j;
        const double w = (t - times[j]) / (times[j + 1] - times[j]);
        resampled[i] = values[j] + std::clamp(w, 0.0, 1.0) * (values[j + 1] - values[j]);
    }
    return TimeSeries(t0, dt, std::move(resampled));
}

void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << "time_h,value\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_double(series.time_at(i)) << ',' << format_double(series[i]) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << row[c];
        }
        out << '\n';
    }
    if (!out) throw Error("write failed for '" + path + "'");
}

CsvTable read_csv_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto cells = split_cells(stripped);
        if (!saw_header) {
            table.header = std::move(cells);
            saw_header = true;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (!saw_header) throw ParseError("empty CSV '" + path + "'", 1);
    return table;
}

}  // namespace fcprog
