#include "stlf/walkforward.hpp"

#include <string>

#include "stlf/errors.hpp"

namespace stlf {

void WalkForwardConfig::validate() const
{
    if (order == 0) throw ConfigError("order must be positive");
    if (num_components == 0) throw ConfigError("num_components must be positive");
    if (window < order) {
        throw ConfigError("window (" + std::to_string(window) + ") must be at least order (" +
                          std::to_string(order) + ")");
    }
    if (window < 2 * num_components) {
        throw ConfigError("window (" + std::to_string(window) + ") must be at least 2 x num_components");
    }
    if (drop_highest_band && num_components < 2) {
        throw ConfigError("drop_highest_band needs at least 2 components");
    }
    if (kept_components() == 0 && !include_raw) throw ConfigError("configuration yields no features");
    if (frozen_boundaries) {
        frozen_boundaries->validate();
        if (frozen_boundaries->band_count() != num_components) {
            throw ConfigError("frozen boundaries describe " +
                              std::to_string(frozen_boundaries->band_count()) + " bands, expected " +
                              std::to_string(num_components));
        }
    }
}

std::size_t WalkForwardConfig::kept_components() const noexcept
{
    return drop_highest_band ? num_components - 1 : num_components;
}

std::size_t WalkForwardConfig::feature_dim() const noexcept
{
    return order * (kept_components() + (include_raw ? 1 : 0));
}

FeatureLayout WalkForwardConfig::layout() const
{
    FeatureLayout out;
    if (include_raw) out.push_back({"raw", order});
    for (std::size_t c = 0; c < kept_components(); ++c) out.push_back({"ewt_" + std::to_string(c), order});
    return out;
}

Eigen::VectorXd walk_forward_row(std::span<const double> values, std::size_t t, const WalkForwardConfig& cfg)
{
    if (t < cfg.window || t > values.size()) {
        throw IndexError("origin " + std::to_string(t) + " outside [" + std::to_string(cfg.window) + ", " +
                         std::to_string(values.size()) + "]");
    }
    const auto window = values.subspan(t - cfg.window, cfg.window);
    const ewt::Boundaries boundaries =
        cfg.frozen_boundaries ? *cfg.frozen_boundaries : ewt::detect_boundaries(window, cfg.num_components);
    const ewt::FilterBank bank(boundaries, cfg.gamma, 2);
    const ewt::Components comps = ewt::decompose(window, bank);

    Eigen::VectorXd row(static_cast<Eigen::Index>(cfg.feature_dim()));
    Eigen::Index col = 0;
    const std::size_t tail = cfg.window - cfg.order;
    if (cfg.include_raw) {
        for (std::size_t j = 0; j < cfg.order; ++j) row(col++) = window[tail + j];
    }
    for (std::size_t c = 0; c < cfg.kept_components(); ++c) {
        const auto& sub = comps.sub_series[c];
        for (std::size_t j = 0; j < cfg.order; ++j) row(col++) = sub[tail + j];
    }
    return row;
}

FeatureMatrix walk_forward_features(const TimeSeries& series, const WalkForwardConfig& cfg)
{
    cfg.validate();
    if (series.size() <= cfg.window) {
        throw SizingError("series of length " + std::to_string(series.size()) +
                          " is too short for a walk-forward window of " + std::to_string(cfg.window));
    }
    const std::size_t n = series.size() - cfg.window;
    FeatureMatrix fm;
    fm.order = cfg.order;
    fm.layout = cfg.layout();
    fm.inputs.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cfg.feature_dim()));
    fm.targets.resize(static_cast<Eigen::Index>(n));
    fm.target_index.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t t = cfg.window + i;
        fm.inputs.row(static_cast<Eigen::Index>(i)) = walk_forward_row(series.values(), t, cfg).transpose();
        fm.targets(static_cast<Eigen::Index>(i)) = series[t];
        fm.target_index[i] = t;
    }
    return fm;
}

Eigen::VectorXd walk_forward_features_at(const TimeSeries& series, std::size_t t, const WalkForwardConfig& cfg)
{
    cfg.validate();
    return walk_forward_row(series.values(), t, cfg);
}

}  // namespace stlf
