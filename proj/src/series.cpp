#include "stlf/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "stlf/errors.hpp"

namespace stlf {

namespace {

void require_finite(std::span<const double> values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DataError("non-finite value at index " + std::to_string(i));
        }
    }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, Seconds sampling_period)
    : values_(std::move(values)), period_(sampling_period)
{
    if (values_.empty()) throw SizingError("time series must contain at least one value");
    if (period_.count() <= 0) throw ConfigError("sampling period must be positive");
    require_finite(values_);
}

TimeSeries::TimeSeries(std::vector<double> values, std::vector<TimePoint> timestamps)
    : values_(std::move(values)), period_(kHalfHour)
{
    if (values_.empty()) throw SizingError("time series must contain at least one value");
    require_finite(values_);
    if (timestamps.size() != values_.size()) {
        throw ShapeError("timestamp count " + std::to_string(timestamps.size()) +
                         " does not match value count " + std::to_string(values_.size()));
    }
    if (timestamps.size() >= 2) {
        period_ = timestamps[1] - timestamps[0];
        if (period_.count() <= 0) throw DataError("timestamps must be strictly increasing (index 1)");
        for (std::size_t i = 2; i < timestamps.size(); ++i) {
            if (timestamps[i] - timestamps[i - 1] != period_) {
                throw DataError("irregular timestamp spacing at index " + std::to_string(i));
            }
        }
    }
    timestamps_ = std::move(timestamps);
}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const
{
    if (begin >= end || end > values_.size()) {
        throw IndexError("invalid slice [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") of series with " + std::to_string(values_.size()) + " values");
    }
    std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>(begin),
                          values_.begin() + static_cast<std::ptrdiff_t>(end));
    if (timestamps_) {
        std::vector<TimePoint> ts(timestamps_->begin() + static_cast<std::ptrdiff_t>(begin),
                                  timestamps_->begin() + static_cast<std::ptrdiff_t>(end));
        TimeSeries out(std::move(v), std::move(ts));
        out.period_ = period_;
        return out;
    }
    return TimeSeries(std::move(v), period_);
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const
{
    if (values.size() != values_.size()) {
        throw ShapeError("replacement values have length " + std::to_string(values.size()) +
                         ", expected " + std::to_string(values_.size()));
    }
    TimeSeries out = *this;
    require_finite(values);
    out.values_ = std::move(values);
    return out;
}

void NormalizationParams::validate() const
{
    if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw ConfigError("normalization bounds must be finite");
    }
    if (!(x_max > x_min)) {
        std::ostringstream os;
        os << "degenerate normalization parameters: x_max (" << x_max << ") must exceed x_min ("
           << x_min << ")";
        throw ConfigError(os.str());
    }
}

NormalizationParams fit_normalization(const TimeSeries& train)
{
    const auto v = train.values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    NormalizationParams p{*lo, *hi};
    p.validate();
    return p;
}

TimeSeries normalize(const TimeSeries& series, const NormalizationParams& params)
{
    params.validate();
    std::vector<double> out(series.size());
    std::ranges::transform(series.values(), out.begin(), [&](double x) { return params.apply(x); });
    return series.with_values(std::move(out));
}

TimeSeries denormalize(const TimeSeries& series, const NormalizationParams& params)
{
    params.validate();
    std::vector<double> out(series.size());
    std::ranges::transform(series.values(), out.begin(), [&](double z) { return params.invert(z); });
    return series.with_values(std::move(out));
}

void SplitSpec::validate() const
{
    auto in_open = [](double f) { return f > 0.0 && f < 1.0; };
    if (!in_open(train_fraction)) throw ConfigError("train fraction must lie in (0, 1)");
    if (!(valid_fraction >= 0.0 && valid_fraction < 1.0)) {
        throw ConfigError("validation fraction must lie in [0, 1)");
    }
    if (!in_open(test_fraction)) throw ConfigError("test fraction must lie in (0, 1)");
    const double total = train_fraction + valid_fraction + test_fraction;
    if (std::abs(total - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "split fractions sum to " << total << ", expected 1";
        throw ConfigError(os.str());
    }
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec)
{
    spec.validate();
    // The small offset keeps products such as 0.29 * 100 from flooring to 28.
    auto part = [n](double f) {
        return static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 1e-9));
    };
    SplitSizes s;
    s.valid = part(spec.valid_fraction);
    s.test = part(spec.test_fraction);
    if (s.test == 0 || (spec.valid_fraction > 0.0 && s.valid == 0) || s.valid + s.test >= n) {
        throw SizingError("series of length " + std::to_string(n) +
                          " is too short for the requested split");
    }
    s.train = n - s.valid - s.test;
    return s;
}

std::tuple<TimeSeries, TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec)
{
    const SplitSizes s = split_sizes(series.size(), spec);
    if (s.valid == 0) {
        throw SizingError("validation segment is empty; use split_sizes() for train/test only splits");
    }
    return {series.slice(0, s.train), series.slice(s.train, s.train + s.valid),
            series.slice(s.train + s.valid, series.size())};
}

std::size_t layout_width(const FeatureLayout& layout)
{
    return std::accumulate(layout.begin(), layout.end(), std::size_t{0},
                           [](std::size_t acc, const FeatureBlock& b) { return acc + b.width; });
}

std::string layout_to_string(const FeatureLayout& layout)
{
    std::string out;
    for (const auto& b : layout) {
        if (!out.empty()) out += ';';
        out += b.source + ':' + std::to_string(b.width);
    }
    return out;
}

FeatureMatrix FeatureMatrix::select_targets(std::size_t begin, std::size_t end) const
{
    std::vector<Eigen::Index> keep;
    for (std::size_t i = 0; i < target_index.size(); ++i) {
        if (target_index[i] >= begin && target_index[i] < end) keep.push_back(static_cast<Eigen::Index>(i));
    }
    FeatureMatrix out;
    out.order = order;
    out.layout = layout;
    out.inputs.resize(static_cast<Eigen::Index>(keep.size()), inputs.cols());
    out.targets.resize(static_cast<Eigen::Index>(keep.size()));
    out.target_index.reserve(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        const auto src = keep[r];
        out.inputs.row(static_cast<Eigen::Index>(r)) = inputs.row(src);
        out.targets(static_cast<Eigen::Index>(r)) = targets(src);
        out.target_index.push_back(target_index[static_cast<std::size_t>(src)]);
    }
    return out;
}

FeatureMatrix build_lag_matrix(const TimeSeries& series, std::size_t order)
{
    const std::size_t len = series.size();
    if (order == 0 || order >= len) {
        throw SizingError("lag order " + std::to_string(order) +
                          " must lie in [1, series length " + std::to_string(len) + ")");
    }
    const std::size_t n = len - order;
    FeatureMatrix fm;
    fm.order = order;
    fm.layout = {{"raw", order}};
    fm.inputs.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(order));
    fm.targets.resize(static_cast<Eigen::Index>(n));
    fm.target_index.resize(n);
    const auto v = series.values();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < order; ++j) {
            fm.inputs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i + j];
        }
        fm.targets(static_cast<Eigen::Index>(i)) = v[i + order];
        fm.target_index[i] = i + order;
    }
    return fm;
}

double median(std::vector<double> values)
{
    if (values.empty()) throw SizingError("median of an empty sample");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

DescriptiveStats describe(const TimeSeries& series)
{
    const auto v = series.values();
    const std::size_t n = v.size();
    if (n < 2) throw SizingError("descriptive statistics need at least 2 observations");
    const double nd = static_cast<double>(n);

    DescriptiveStats s;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    s.min = *lo;
    s.max = *hi;
    s.median = median(std::vector<double>(v.begin(), v.end()));
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / nd;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    s.std = std::sqrt(m2 / (nd - 1.0));
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;

    // Relative threshold so that round-off on a constant series reads as zero spread.
    const double scale = std::max(std::abs(s.max), std::abs(s.min));
    if (m2 <= 1e-28 * std::max(1.0, scale * scale)) {
        s.std = 0.0;
        return s;
    }
    if (n >= 3) {
        const double g1 = m3 / std::pow(m2, 1.5);
        s.skewness = std::sqrt(nd * (nd - 1.0)) / (nd - 2.0) * g1;
    }
    if (n >= 4) {
        const double g2 = m4 / (m2 * m2) - 3.0;
        s.kurtosis = ((nd + 1.0) * g2 + 6.0) * (nd - 1.0) / ((nd - 2.0) * (nd - 3.0));
    }
    return s;
}

}  // namespace stlf
