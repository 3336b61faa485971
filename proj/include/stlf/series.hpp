#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace stlf {

using Seconds = std::chrono::seconds;
using TimePoint = std::chrono::sys_seconds;

/// Uniformly sampled observation sequence with optional timestamps.
///
/// Values are finite and non-empty. When timestamps are present they are
/// strictly increasing with constant spacing equal to the sampling period.
class TimeSeries {
public:
    static constexpr Seconds kHalfHour{1800};

    explicit TimeSeries(std::vector<double> values, Seconds sampling_period = kHalfHour);
    TimeSeries(std::vector<double> values, std::vector<TimePoint> timestamps);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::optional<std::vector<TimePoint>>& timestamps() const noexcept { return timestamps_; }
    Seconds sampling_period() const noexcept { return period_; }

    /// Half-open slice [begin, end); timestamps follow the values.
    TimeSeries slice(std::size_t begin, std::size_t end) const;

    /// Same shape and timestamps, new values.
    TimeSeries with_values(std::vector<double> values) const;

private:
    std::vector<double> values_;
    std::optional<std::vector<TimePoint>> timestamps_;
    Seconds period_;
};

/// Max-min scaling parameters, fitted on the training segment only.
struct NormalizationParams {
    double x_min = 0.0;
    double x_max = 1.0;

    void validate() const;
    double apply(double x) const { return (x - x_min) / (x_max - x_min); }
    double invert(double z) const { return z * (x_max - x_min) + x_min; }
};

NormalizationParams fit_normalization(const TimeSeries& train);
TimeSeries normalize(const TimeSeries& series, const NormalizationParams& params);
TimeSeries denormalize(const TimeSeries& series, const NormalizationParams& params);

/// Chronological train / validation / test fractions.
struct SplitSpec {
    double train_fraction = 0.7;
    double valid_fraction = 0.1;
    double test_fraction = 0.2;

    void validate() const;
};

/// Segment lengths for a series of length n: floor(fraction * n) for the
/// validation and test segments, the remainder goes to training.
struct SplitSizes {
    std::size_t train = 0;
    std::size_t valid = 0;
    std::size_t test = 0;
};

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);
std::tuple<TimeSeries, TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec);

/// One contiguous group of feature columns.
struct FeatureBlock {
    std::string source;  // "raw" or "ewt_<i>"
    std::size_t width = 0;

    bool operator==(const FeatureBlock&) const = default;
};

using FeatureLayout = std::vector<FeatureBlock>;

std::size_t layout_width(const FeatureLayout& layout);
std::string layout_to_string(const FeatureLayout& layout);

/// Supervised view of a series: row i predicts targets[i] = x(target_index[i])
/// from observations strictly earlier than target_index[i].
struct FeatureMatrix {
    Eigen::MatrixXd inputs;
    Eigen::VectorXd targets;
    std::vector<std::size_t> target_index;
    std::size_t order = 0;
    FeatureLayout layout;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(inputs.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(inputs.cols()); }

    /// Rows whose target index lies in [begin, end).
    FeatureMatrix select_targets(std::size_t begin, std::size_t end) const;
};

FeatureMatrix build_lag_matrix(const TimeSeries& series, std::size_t order);

struct DescriptiveStats {
    double max = 0.0;
    double min = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;  // excess
};

/// Sample statistics; skewness and excess kurtosis are the bias-corrected
/// estimators (G1, G2). Constant series report 0 for both.
DescriptiveStats describe(const TimeSeries& series);

/// Elementwise median of a sample; averages the middle pair for even sizes.
double median(std::vector<double> values);

}  // namespace stlf
