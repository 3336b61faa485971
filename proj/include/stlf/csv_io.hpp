#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stlf/series.hpp"

namespace stlf::io {

/// Column selection for series ingestion. An empty time column means the
/// file carries no timestamps and the default half-hour period applies.
struct SeriesColumns {
    std::string value = "value";
    std::string time;
};

/// Reads a header-first CSV. Missing, non-numeric or non-finite values are
/// rejected with the offending line number; nothing is imputed.
TimeSeries read_series_csv(std::istream& in, const SeriesColumns& columns);
TimeSeries read_series_csv(const std::filesystem::path& path, const SeriesColumns& columns);

/// Accepts "YYYY-MM-DD HH:MM[:SS]", "YYYY/MM/DD HH:MM[:SS]" and the ISO 'T'
/// separator.
TimePoint parse_timestamp(const std::string& text);
std::string format_timestamp(TimePoint tp);

/// Error table with datasets as rows and models as columns; the first column
/// holds the dataset label.
struct ErrorMatrix {
    std::vector<std::string> models;
    std::vector<std::string> datasets;
    Eigen::MatrixXd values;  // datasets x models
};

ErrorMatrix read_error_matrix_csv(std::istream& in);
ErrorMatrix read_error_matrix_csv(const std::filesystem::path& path);

/// Splits one CSV line; double quotes protect embedded commas.
std::vector<std::string> split_csv_line(const std::string& line);

double parse_double(const std::string& field, std::size_t line_no, const std::string& what);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace stlf::io
