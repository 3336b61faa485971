#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "stlf/ewt.hpp"
#include "stlf/series.hpp"

namespace stlf {

/// Rolling, leak-free EWT feature extraction.
///
/// At origin t the window x(t - window) .. x(t - 1) is decomposed on its own
/// and only the last `order` samples of every sub-series (plus, optionally,
/// the last `order` raw values) become the input row for target x(t).
struct WalkForwardConfig {
    std::size_t window = 336;  // one week of half-hourly samples
    std::size_t order = 48;
    std::size_t num_components = 2;
    bool include_raw = true;
    bool drop_highest_band = false;
    /// nullopt: half the feasible maximum, chosen per window.
    std::optional<double> gamma;
    /// When set, these boundaries are reused for every window instead of
    /// being re-detected.
    std::optional<ewt::Boundaries> frozen_boundaries;

    void validate() const;
    std::size_t kept_components() const noexcept;
    std::size_t feature_dim() const noexcept;
    FeatureLayout layout() const;
};

/// Feature row for origin t; reads only values[t - window, t).
Eigen::VectorXd walk_forward_row(std::span<const double> values, std::size_t t,
                                 const WalkForwardConfig& cfg);

/// One row per origin t in [window, series.size()), ordered by t.
FeatureMatrix walk_forward_features(const TimeSeries& series, const WalkForwardConfig& cfg);

/// Single-origin variant; t may equal series.size() to build the row for the
/// first unobserved step.
Eigen::VectorXd walk_forward_features_at(const TimeSeries& series, std::size_t t,
                                         const WalkForwardConfig& cfg);

}  // namespace stlf
