#include "stlf/tuning.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "stlf/errors.hpp"
#include "stlf/metrics.hpp"
#include "stlf/ridge.hpp"

namespace stlf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rmse_of(const Eigen::VectorXd& pred, const Eigen::VectorXd& actual)
{
    return rmse({pred.data(), static_cast<std::size_t>(pred.size())},
                {actual.data(), static_cast<std::size_t>(actual.size())});
}

bool better(const CandidateScore& a, const CandidateScore& b)
{
    if (a.rmse != b.rmse) return a.rmse < b.rmse;
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.nodes < b.nodes;
}

// Hidden features of one layer for a training and a validation design,
// carried forward across stages.
struct LayerState {
    EdRvflModel model;
    Eigen::MatrixXd hidden_train;
    Eigen::MatrixXd hidden_valid;
};

// Validation RMSE of the layer head for one seed; +inf if the system is singular.
double score_head(const LayerState& s, const FeatureMatrix& train, const FeatureMatrix& valid, double lambda)
{
    try {
        const Eigen::VectorXd head =
            ridge_solve(s.model.design_matrix(s.hidden_train, train.inputs), train.targets, lambda);
        const Eigen::VectorXd pred = s.model.design_matrix(s.hidden_valid, valid.inputs) * head;
        return rmse_of(pred, valid.targets);
    } catch (const NumericalError&) {
        return kInf;
    }
}

LayerState advance(LayerState s, std::size_t layer, const FeatureMatrix& train, const FeatureMatrix& valid)
{
    s.hidden_train = s.model.layer_features(layer, train.inputs, s.hidden_train);
    s.hidden_valid = s.model.layer_features(layer, valid.inputs, s.hidden_valid);
    return s;
}

double mean_over_seeds(const std::vector<LayerState>& states, const FeatureMatrix& train, const FeatureMatrix& valid,
                       double lambda)
{
    double acc = 0.0;
    for (const auto& s : states) {
        const double r = score_head(s, train, valid, lambda);
        if (!std::isfinite(r)) return kInf;
        acc += r;
    }
    return acc / static_cast<double>(states.size());
}

}  // namespace

void SearchSpace::validate() const
{
    if (node_grid.empty()) throw ConfigError("node grid is empty");
    if (lambda_grid.empty()) throw ConfigError("lambda grid is empty");
    if (activations.empty()) throw ConfigError("activation list is empty");
    if (seeds.empty()) throw ConfigError("seed list is empty");
    for (auto n : node_grid) {
        if (n == 0) throw ConfigError("node grid entries must be positive");
    }
    for (double l : lambda_grid) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("lambda grid entries must be finite and >= 0");
    }
}

TuningResult layerwise_tune(const FeatureMatrix& train, const FeatureMatrix& valid, const SearchSpace& space,
                            const TuningBase& base)
{
    space.validate();
    if (base.layers == 0) throw ConfigError("layer count must be positive");
    if (train.layout != valid.layout || train.cols() != valid.cols()) {
        throw ShapeError("train and validation features have different layouts");
    }
    if (train.rows() < 2 || valid.rows() < 1) throw SizingError("tuning needs train and validation rows");

    const auto started = std::chrono::steady_clock::now();
    const std::size_t d = train.cols();
    auto make_config = [&](std::size_t nodes, Activation act, std::uint64_t seed) {
        EdRvflConfig cfg;
        cfg.layers = base.layers;
        cfg.nodes = nodes;
        cfg.lambdas.assign(base.layers, 0.0);
        cfg.activation = act;
        cfg.weight_scale = base.weight_scale;
        cfg.use_bias = base.use_bias;
        cfg.ensemble_rule = base.ensemble_rule;
        cfg.seed = seed;
        return cfg;
    };

    TuningResult result;
    auto& trace = result.trace;

    // Stage 1: nodes, activation and the first lambda.
    std::size_t best_index = 0;
    std::vector<LayerState> best_states;
    for (std::size_t nodes : space.node_grid) {
        for (Activation act : space.activations) {
            std::vector<LayerState> states;
            for (auto seed : space.seeds) {
                LayerState s{EdRvflModel::init(make_config(nodes, act, seed), d), {}, {}};
                states.push_back(advance(std::move(s), 0, train, valid));
            }
            bool improved = false;
            for (double lambda : space.lambda_grid) {
                CandidateScore c{0, nodes, act, lambda, mean_over_seeds(states, train, valid, lambda), false};
                trace.candidates.push_back(c);
                const std::size_t idx = trace.candidates.size() - 1;
                if (idx == 0 || better(c, trace.candidates[best_index])) {
                    best_index = idx;
                    improved = true;
                }
            }
            if (improved) best_states = std::move(states);
        }
    }
    auto finish_stage = [&](std::size_t index) {
        if (!std::isfinite(trace.candidates[index].rmse)) {
            throw NumericalError("every candidate at layer " + std::to_string(trace.candidates[index].layer + 1) +
                                 " produced a singular ridge system; add a positive lambda to the grid");
        }
        trace.candidates[index].chosen = true;
        trace.chosen_lambdas.push_back(trace.candidates[index].lambda);
    };
    finish_stage(best_index);
    trace.chosen_nodes = trace.candidates[best_index].nodes;
    trace.chosen_activation = trace.candidates[best_index].activation;

    // Later stages: only that layer's lambda varies.
    for (std::size_t layer = 1; layer < base.layers; ++layer) {
        for (auto& s : best_states) s = advance(std::move(s), layer, train, valid);
        std::size_t stage_best = trace.candidates.size();
        for (double lambda : space.lambda_grid) {
            CandidateScore c{layer, trace.chosen_nodes, trace.chosen_activation, lambda,
                             mean_over_seeds(best_states, train, valid, lambda), false};
            trace.candidates.push_back(c);
            const std::size_t idx = trace.candidates.size() - 1;
            if (stage_best == idx || better(c, trace.candidates[stage_best])) stage_best = idx;
        }
        finish_stage(stage_best);
    }

    result.config = make_config(trace.chosen_nodes, trace.chosen_activation, space.seeds.front());
    result.config.lambdas = trace.chosen_lambdas;
    trace.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

double grid_eval(const EdRvflConfig& candidate, const FeatureMatrix& train, const FeatureMatrix& valid)
{
    const auto model = EdRvflModel::init(candidate, train.cols()).fit(train.inputs, train.targets);
    return rmse_of(model.predict(valid.inputs).combined, valid.targets);
}

}  // namespace stlf
