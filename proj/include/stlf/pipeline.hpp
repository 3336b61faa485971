#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stlf/edrvfl.hpp"
#include "stlf/metrics.hpp"
#include "stlf/series.hpp"
#include "stlf/tuning.hpp"
#include "stlf/walkforward.hpp"

namespace stlf {

enum class ModelKind { MeaEdRvfl, MedEdRvfl, EwtMeaEdRvfl, EwtMedEdRvfl, Rvfl, EwtRvfl, Persistence };

std::string_view model_name(ModelKind kind) noexcept;
/// Case-insensitive; accepts the display names ("EWTMea-edRVFL") and
/// lower-case CLI spellings ("ewtmea-edrvfl").
ModelKind parse_model_kind(std::string_view name);
bool uses_ewt(ModelKind kind) noexcept;
const std::vector<ModelKind>& all_model_kinds();

/// How input rows are built from the normalized series. Without EWT the rows
/// are the last `order` raw values; with EWT they come from walk-forward
/// decomposition.
struct FeatureSpec {
    bool use_ewt = false;
    WalkForwardConfig walk_forward;

    std::size_t order() const noexcept { return walk_forward.order; }
    std::size_t first_origin() const noexcept { return use_ewt ? walk_forward.window : walk_forward.order; }
    std::size_t feature_dim() const noexcept;
    FeatureLayout layout() const;
};

/// Rows for every origin t in [spec.first_origin(), values.size()).
FeatureMatrix build_features(const TimeSeries& normalized, const FeatureSpec& spec);
/// Row for one origin; t may equal values.size().
Eigen::VectorXd feature_row(std::span<const double> normalized, std::size_t t, const FeatureSpec& spec);

struct PipelineConfig {
    ModelKind model = ModelKind::EwtMeaEdRvfl;
    WalkForwardConfig walk_forward;
    /// Reuse the boundaries detected on the training segment for every window.
    bool freeze_boundaries_from_train = false;
    SplitSpec split;
    std::size_t layers = 5;
    SearchSpace search;
    double weight_scale = 1.0;
    bool use_bias = true;
    std::uint64_t seed = 0;

    void validate() const;
};

/// A fitted forecaster: normalization, feature recipe and (unless the model
/// is persistence) the network.
struct TrainedModel {
    ModelKind kind = ModelKind::Persistence;
    NormalizationParams normalization;
    FeatureSpec features;
    std::optional<EdRvflModel> network;

    /// One-step-ahead forecasts in original units for origins [begin, end);
    /// end may be series.size() + 1. Each forecast reads only x(< t).
    std::vector<double> forecast(const TimeSeries& series, std::size_t begin, std::size_t end) const;
    /// Same, keeping each layer's output (empty for persistence).
    std::vector<std::vector<double>> layer_forecasts(const TimeSeries& series, std::size_t begin,
                                                     std::size_t end) const;
};

struct SegmentForecast {
    std::string name;
    std::vector<std::size_t> index;
    std::vector<double> actual;
    std::vector<double> forecast;
    std::vector<std::vector<double>> per_layer;  // layer -> values
    std::optional<MetricReport> metrics;
};

struct TrainOutcome {
    TrainedModel model;
    SplitSizes sizes;
    std::optional<TuningTrace> trace;
    SegmentForecast train;
    SegmentForecast valid;
    SegmentForecast test;
    std::vector<double> per_layer_test_rmse;
};

TrainOutcome train_model(const TimeSeries& series, const PipelineConfig& cfg);

}  // namespace stlf
