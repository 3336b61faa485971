#include "stlf/edrvfl.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stlf/errors.hpp"
#include "stlf/ridge.hpp"

namespace stlf {

namespace {

// 53 random bits -> [0, 1); std::mt19937_64 output is fixed by the standard,
// unlike the standard distributions, so weights are portable.
double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void apply_activation(Eigen::MatrixXd& m, Activation a)
{
    switch (a) {
    case Activation::Sigmoid:
        m = (1.0 + (-m.array()).exp()).inverse().matrix();
        break;
    case Activation::Tanh:
        m = m.array().tanh().matrix();
        break;
    case Activation::Relu:
        m = m.cwiseMax(0.0);
        break;
    }
}

}  // namespace

std::string_view to_string(Activation a) noexcept
{
    switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    }
    return "sigmoid";
}

std::string_view to_string(EnsembleRule r) noexcept
{
    return r == EnsembleRule::Mean ? "mean" : "median";
}

Activation parse_activation(std::string_view name)
{
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    throw ConfigError("unknown activation '" + std::string(name) + "' (expected sigmoid, tanh or relu)");
}

EnsembleRule parse_ensemble_rule(std::string_view name)
{
    if (name == "mean") return EnsembleRule::Mean;
    if (name == "median") return EnsembleRule::Median;
    throw ConfigError("unknown ensemble rule '" + std::string(name) + "' (expected mean or median)");
}

void EdRvflConfig::validate() const
{
    if (layers == 0) throw ConfigError("edRVFL needs at least one layer");
    if (nodes == 0) throw ConfigError("edRVFL needs at least one enhancement node per layer");
    if (lambdas.size() != layers) {
        throw ConfigError("expected " + std::to_string(layers) + " regularization values, got " +
                          std::to_string(lambdas.size()));
    }
    for (double l : lambdas) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("regularization values must be finite and >= 0");
    }
    if (!(weight_scale > 0.0) || !std::isfinite(weight_scale)) throw ConfigError("weight_scale must be positive");
}

Eigen::VectorXd combine(const std::vector<Eigen::VectorXd>& per_layer, EnsembleRule rule)
{
    if (per_layer.empty()) throw SizingError("nothing to combine");
    const Eigen::Index n = per_layer.front().size();
    for (const auto& p : per_layer) {
        if (p.size() != n) throw ShapeError("layer predictions have different lengths");
    }
    Eigen::VectorXd out(n);
    if (rule == EnsembleRule::Mean) {
        out.setZero();
        for (const auto& p : per_layer) out += p;
        out /= static_cast<double>(per_layer.size());
        return out;
    }
    std::vector<double> column(per_layer.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < per_layer.size(); ++l) column[l] = per_layer[l](i);
        out(i) = median(column);
    }
    return out;
}

EdRvflModel::EdRvflModel(EdRvflConfig cfg, std::size_t feature_dim)
    : config_(std::move(cfg)), feature_dim_(feature_dim)
{
    config_.validate();
    if (feature_dim_ == 0) throw ConfigError("feature dimension must be positive");
}

EdRvflModel EdRvflModel::init(const EdRvflConfig& cfg, std::size_t feature_dim)
{
    EdRvflModel model(cfg, feature_dim);
    std::mt19937_64 rng(cfg.seed);
    const auto n = static_cast<Eigen::Index>(cfg.nodes);
    const auto d = static_cast<Eigen::Index>(feature_dim);
    const Eigen::Index bias = cfg.use_bias ? 1 : 0;
    for (std::size_t l = 0; l < cfg.layers; ++l) {
        const Eigen::Index inputs = (l == 0 ? d : n + d);
        Eigen::MatrixXd w(inputs + bias, n);
        for (Eigen::Index r = 0; r < inputs; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) w(r, c) = cfg.weight_scale * (2.0 * unit_uniform(rng) - 1.0);
        }
        for (Eigen::Index r = inputs; r < inputs + bias; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) w(r, c) = unit_uniform(rng);
        }
        model.weights_.push_back(std::move(w));
    }
    return model;
}

EdRvflModel EdRvflModel::from_parts(const EdRvflConfig& cfg, std::size_t feature_dim,
                                    std::vector<Eigen::MatrixXd> weights, std::vector<Eigen::VectorXd> heads)
{
    EdRvflModel model(cfg, feature_dim);
    if (weights.size() != cfg.layers) throw ShapeError("weight matrix count does not match layer count");
    const auto n = static_cast<Eigen::Index>(cfg.nodes);
    const auto d = static_cast<Eigen::Index>(feature_dim);
    const Eigen::Index bias = cfg.use_bias ? 1 : 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const Eigen::Index rows = (l == 0 ? d : n + d) + bias;
        if (weights[l].rows() != rows || weights[l].cols() != n) {
            throw ShapeError("weight matrix " + std::to_string(l) + " has shape " +
                             std::to_string(weights[l].rows()) + "x" + std::to_string(weights[l].cols()) +
                             ", expected " + std::to_string(rows) + "x" + std::to_string(n));
        }
    }
    model.weights_ = std::move(weights);
    if (!heads.empty() && heads.size() != cfg.layers) throw ShapeError("head count does not match layer count");
    for (const auto& h : heads) {
        if (h.size() != static_cast<Eigen::Index>(model.head_size())) throw ShapeError("output head has wrong length");
    }
    model.heads_ = std::move(heads);
    return model;
}

void EdRvflModel::check_inputs(const Eigen::MatrixXd& inputs) const
{
    if (inputs.cols() != static_cast<Eigen::Index>(feature_dim_)) {
        throw ShapeError("input has " + std::to_string(inputs.cols()) + " columns, model expects " +
                         std::to_string(feature_dim_));
    }
}

std::size_t EdRvflModel::head_size() const noexcept
{
    return config_.nodes + feature_dim_ + (config_.use_bias ? 1 : 0);
}

Eigen::MatrixXd EdRvflModel::layer_features(std::size_t layer, const Eigen::MatrixXd& inputs,
                                            const Eigen::MatrixXd& previous) const
{
    check_inputs(inputs);
    if (layer >= config_.layers) throw IndexError("layer " + std::to_string(layer) + " out of range");
    const Eigen::Index n = inputs.rows();
    const Eigen::Index d = inputs.cols();
    const auto nodes = static_cast<Eigen::Index>(config_.nodes);
    const Eigen::Index lead = layer == 0 ? 0 : nodes;
    if (layer > 0 && (previous.rows() != n || previous.cols() != nodes)) {
        throw ShapeError("previous layer features have the wrong shape");
    }
    Eigen::MatrixXd augmented(n, lead + d + (config_.use_bias ? 1 : 0));
    if (layer > 0) augmented.leftCols(nodes) = previous;
    augmented.middleCols(lead, d) = inputs;
    if (config_.use_bias) augmented.col(lead + d).setOnes();
    Eigen::MatrixXd h = augmented * weights_[layer];
    apply_activation(h, config_.activation);
    return h;
}

std::vector<Eigen::MatrixXd> EdRvflModel::forward_features(const Eigen::MatrixXd& inputs) const
{
    std::vector<Eigen::MatrixXd> out;
    out.reserve(config_.layers);
    const Eigen::MatrixXd none;
    for (std::size_t l = 0; l < config_.layers; ++l) {
        out.push_back(layer_features(l, inputs, l == 0 ? none : out.back()));
    }
    return out;
}

Eigen::MatrixXd EdRvflModel::design_matrix(const Eigen::MatrixXd& hidden, const Eigen::MatrixXd& inputs) const
{
    const Eigen::Index n = inputs.rows();
    Eigen::MatrixXd design(n, static_cast<Eigen::Index>(head_size()));
    design.leftCols(hidden.cols()) = hidden;
    design.middleCols(hidden.cols(), inputs.cols()) = inputs;
    if (config_.use_bias) design.rightCols(1).setOnes();
    return design;
}

EdRvflModel EdRvflModel::fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets) const
{
    check_inputs(inputs);
    if (inputs.rows() < 2) throw SizingError("fitting needs at least 2 samples");
    if (targets.size() != inputs.rows()) throw ShapeError("target count does not match input rows");
    EdRvflModel out = *this;
    out.heads_.clear();
    const auto hidden = forward_features(inputs);
    for (std::size_t l = 0; l < config_.layers; ++l) {
        out.heads_.push_back(ridge_solve(design_matrix(hidden[l], inputs), targets, config_.lambdas[l]));
    }
    return out;
}

ForecastSet EdRvflModel::predict(const Eigen::MatrixXd& inputs) const
{
    if (!fitted()) throw StateError("edRVFL model has not been fitted");
    check_inputs(inputs);
    const auto hidden = forward_features(inputs);
    ForecastSet out;
    for (std::size_t l = 0; l < config_.layers; ++l) {
        out.per_layer.push_back(design_matrix(hidden[l], inputs) * heads_[l]);
    }
    out.combined = combine(out.per_layer, config_.ensemble_rule);
    return out;
}

void EdRvflModel::set_layer_head(std::size_t layer, double lambda, Eigen::VectorXd head)
{
    if (layer >= config_.layers || layer > heads_.size()) {
        throw IndexError("heads must be assigned in layer order (layer " + std::to_string(layer) + ")");
    }
    if (head.size() != static_cast<Eigen::Index>(head_size())) throw ShapeError("output head has wrong length");
    config_.lambdas[layer] = lambda;
    if (layer == heads_.size()) {
        heads_.push_back(std::move(head));
    } else {
        heads_[layer] = std::move(head);
        heads_.resize(layer + 1);
    }
}

EdRvflModel fit(const EdRvflModel& model, const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets)
{
    return model.fit(inputs, targets);
}

std::vector<double> persistence_forecast(const TimeSeries& series, std::size_t horizon_start)
{
    if (horizon_start < 1) throw IndexError("persistence needs horizon_start >= 1");
    if (horizon_start > series.size()) throw IndexError("horizon_start beyond the end of the series");
    std::vector<double> out;
    out.reserve(series.size() - horizon_start);
    for (std::size_t t = horizon_start; t < series.size(); ++t) out.push_back(series[t - 1]);
    return out;
}

Eigen::VectorXd shallow_rvfl_fit_predict(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& train_targets,
                                         const Eigen::MatrixXd& test_inputs, std::size_t nodes, double lambda,
                                         std::uint64_t seed, const ShallowRvflOptions& options)
{
    EdRvflConfig cfg;
    cfg.layers = 1;
    cfg.nodes = nodes;
    cfg.lambdas = {lambda};
    cfg.activation = options.activation;
    cfg.weight_scale = options.weight_scale;
    cfg.use_bias = options.use_bias;
    cfg.seed = seed;
    const auto model = EdRvflModel::init(cfg, static_cast<std::size_t>(train_inputs.cols()));
    return model.fit(train_inputs, train_targets).predict(test_inputs).combined;
}

}  // namespace stlf
