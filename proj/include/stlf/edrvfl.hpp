#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stlf/series.hpp"

namespace stlf {

enum class Activation { Sigmoid, Tanh, Relu };
enum class EnsembleRule { Mean, Median };

std::string_view to_string(Activation a) noexcept;
std::string_view to_string(EnsembleRule r) noexcept;
Activation parse_activation(std::string_view name);
EnsembleRule parse_ensemble_rule(std::string_view name);

struct EdRvflConfig {
    std::size_t layers = 5;
    std::size_t nodes = 100;
    std::vector<double> lambdas = std::vector<double>(5, 0.0625);
    Activation activation = Activation::Sigmoid;
    double weight_scale = 1.0;
    bool use_bias = true;
    EnsembleRule ensemble_rule = EnsembleRule::Mean;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Per-layer predictions and their elementwise combination.
struct ForecastSet {
    std::vector<Eigen::VectorXd> per_layer;
    Eigen::VectorXd combined;
};

/// Elementwise mean or median across layer outputs.
Eigen::VectorXd combine(const std::vector<Eigen::VectorXd>& per_layer, EnsembleRule rule);

/// Ensemble deep random vector functional link network.
///
/// Layer 1 sees the inputs X, deeper layers see [H^{l-1}, X]; every layer
/// owns a ridge head over D_l = [H^l, X] (plus an intercept column when the
/// bias is enabled). Enhancement weights are drawn once from the seed, one
/// layer at a time in row-major order, and never change afterwards.
class EdRvflModel {
public:
    /// Draws weights: U[-scale, scale] for input rows, U[0, 1] for the bias
    /// row (last row of each matrix) when use_bias is set.
    static EdRvflModel init(const EdRvflConfig& cfg, std::size_t feature_dim);

    /// Rebuilds a model from stored parts; heads may be empty (unfitted).
    static EdRvflModel from_parts(const EdRvflConfig& cfg, std::size_t feature_dim,
                                  std::vector<Eigen::MatrixXd> weights, std::vector<Eigen::VectorXd> heads);

    const EdRvflConfig& config() const noexcept { return config_; }
    std::size_t feature_dim() const noexcept { return feature_dim_; }
    const std::vector<Eigen::MatrixXd>& weights() const noexcept { return weights_; }
    const std::vector<Eigen::VectorXd>& heads() const noexcept { return heads_; }
    bool fitted() const noexcept { return heads_.size() == config_.layers; }

    /// Enhancement features of one layer; `previous` is ignored for layer 0.
    Eigen::MatrixXd layer_features(std::size_t layer, const Eigen::MatrixXd& inputs,
                                   const Eigen::MatrixXd& previous) const;
    std::vector<Eigen::MatrixXd> forward_features(const Eigen::MatrixXd& inputs) const;

    /// [H, X] with a trailing column of ones when the bias is enabled.
    Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& hidden, const Eigen::MatrixXd& inputs) const;
    std::size_t head_size() const noexcept;

    /// Fits every layer head with its own lambda.
    EdRvflModel fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets) const;
    ForecastSet predict(const Eigen::MatrixXd& inputs) const;

    /// Used by layer-wise tuning: replaces lambda and head of one layer.
    /// Heads must be assigned in layer order.
    void set_layer_head(std::size_t layer, double lambda, Eigen::VectorXd head);

private:
    EdRvflModel(EdRvflConfig cfg, std::size_t feature_dim);
    void check_inputs(const Eigen::MatrixXd& inputs) const;

    EdRvflConfig config_;
    std::size_t feature_dim_ = 0;
    std::vector<Eigen::MatrixXd> weights_;
    std::vector<Eigen::VectorXd> heads_;
};

EdRvflModel fit(const EdRvflModel& model, const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets);

/// y_hat(t) = x(t - 1) for t in [horizon_start, series.size()).
std::vector<double> persistence_forecast(const TimeSeries& series, std::size_t horizon_start);

struct ShallowRvflOptions {
    Activation activation = Activation::Sigmoid;
    double weight_scale = 1.0;
    bool use_bias = true;
};

/// Single-layer RVFL baseline; identical to a one-layer EdRvflModel.
Eigen::VectorXd shallow_rvfl_fit_predict(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& train_targets,
                                         const Eigen::MatrixXd& test_inputs, std::size_t nodes, double lambda,
                                         std::uint64_t seed, const ShallowRvflOptions& options = {});

}  // namespace stlf
