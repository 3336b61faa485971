#include "stlf/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>

#include "stlf/errors.hpp"

namespace stlf::io {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name)
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("CSV has no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::ifstream open(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return in;
}

bool blank(const std::string& line)
{
    return trim(line).empty();
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& field, std::size_t line_no, const std::string& what)
{
    const std::string f = trim(field);
    if (f.empty()) throw DataError("line " + std::to_string(line_no) + ": missing " + what);
    double v = 0.0;
    const char* first = f.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw DataError("line " + std::to_string(line_no) + ": cannot parse " + what + " '" + f + "'");
    }
    if (!std::isfinite(v)) throw DataError("line " + std::to_string(line_no) + ": non-finite " + what);
    return v;
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

TimePoint parse_timestamp(const std::string& text)
{
    const std::string t = trim(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep1 = 0, sep2 = 0, mid = 0;
    int consumed = 0;
    const int got = std::sscanf(t.c_str(), "%d%c%d%c%d%c%d:%d%n", &y, &sep1, &mo, &sep2, &d, &mid, &h, &mi, &consumed);
    if (got < 8 || sep1 != sep2 || (sep1 != '-' && sep1 != '/') || (mid != ' ' && mid != 'T')) {
        throw DataError("unrecognized timestamp '" + t + "'");
    }
    std::size_t pos = static_cast<std::size_t>(consumed);
    if (pos < t.size() && t[pos] == ':') {
        int more = 0;
        if (std::sscanf(t.c_str() + pos, ":%d%n", &s, &more) != 1) throw DataError("unrecognized timestamp '" + t + "'");
        pos += static_cast<std::size_t>(more);
    }
    if (pos != t.size()) throw DataError("unrecognized timestamp '" + t + "'");
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) {
        throw DataError("invalid calendar timestamp '" + t + "'");
    }
    return std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} + std::chrono::seconds{s};
}

std::string format_timestamp(TimePoint tp)
{
    const auto days = std::chrono::floor<std::chrono::days>(tp);
    const std::chrono::year_month_day ymd{days};
    const std::chrono::hh_mm_ss hms{tp - days};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

TimeSeries read_series_csv(std::istream& in, const SeriesColumns& columns)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) break;
    }
    if (blank(line)) throw DataError("CSV input is empty (a header row is required)");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
    const auto header = split_csv_line(line);
    const std::size_t value_col = find_column(header, columns.value);
    const bool timed = !columns.time.empty();
    const std::size_t time_col = timed ? find_column(header, columns.time) : 0;

    std::vector<double> values;
    std::vector<TimePoint> stamps;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(fields.size()));
        }
        values.push_back(parse_double(fields[value_col], line_no, "value"));
        if (timed) {
            try {
                stamps.push_back(parse_timestamp(fields[time_col]));
            } catch (const DataError& e) {
                throw DataError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (in.bad()) throw IoError("read failure");
    if (values.empty()) throw DataError("CSV contains a header but no data rows");
    if (timed) return TimeSeries(std::move(values), std::move(stamps));
    return TimeSeries(std::move(values));
}

TimeSeries read_series_csv(const std::filesystem::path& path, const SeriesColumns& columns)
{
    auto in = open(path);
    try {
        return read_series_csv(in, columns);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Data) throw DataError(path.string() + ": " + e.what());
        throw;
    }
}

ErrorMatrix read_error_matrix_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) break;
    }
    if (blank(line)) throw DataError("error matrix CSV is empty");
    const auto header = split_csv_line(line);
    if (header.size() < 2) throw DataError("error matrix needs a label column and at least one model column");
    ErrorMatrix m;
    m.models.assign(header.begin() + 1, header.end());
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": ragged row with " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(header.size()));
        }
        m.datasets.push_back(fields[0]);
        std::vector<double> row;
        for (std::size_t c = 1; c < fields.size(); ++c) row.push_back(parse_double(fields[c], line_no, "error value"));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("error matrix has no data rows");
    m.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.models.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

ErrorMatrix read_error_matrix_csv(const std::filesystem::path& path)
{
    auto in = open(path);
    return read_error_matrix_csv(in);
}

}  // namespace stlf::io
