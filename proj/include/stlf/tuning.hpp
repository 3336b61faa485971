#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stlf/edrvfl.hpp"
#include "stlf/series.hpp"

namespace stlf {

/// Candidate grids. Defaults: nodes 50..200 step 50, lambda {0, 2^-8, 2^-4}.
struct SearchSpace {
    std::vector<std::size_t> node_grid{50, 100, 150, 200};
    std::vector<double> lambda_grid{0.0, 0.00390625, 0.0625};
    std::vector<Activation> activations{Activation::Sigmoid};
    /// Validation RMSE of a candidate is averaged over these seeds.
    std::vector<std::uint64_t> seeds{0};

    void validate() const;
};

struct CandidateScore {
    std::size_t layer = 0;  // 0-based stage index
    std::size_t nodes = 0;
    Activation activation = Activation::Sigmoid;
    double lambda = 0.0;
    double rmse = 0.0;  // +inf when every seed hit a singular system
    bool chosen = false;
};

struct TuningTrace {
    std::vector<double> chosen_lambdas;
    std::size_t chosen_nodes = 0;
    Activation chosen_activation = Activation::Sigmoid;
    std::vector<CandidateScore> candidates;
    double elapsed_seconds = 0.0;

    std::size_t evaluations() const noexcept { return candidates.size(); }
};

/// Template for everything that is not searched (rule, bias, weight scale).
struct TuningBase {
    std::size_t layers = 5;
    double weight_scale = 1.0;
    bool use_bias = true;
    EnsembleRule ensemble_rule = EnsembleRule::Mean;
};

struct TuningResult {
    EdRvflConfig config;  // seed = first seed of the search space
    TuningTrace trace;
};

/// Layer-wise search. Stage 1 scores every (nodes, activation, lambda_1)
/// with the layer-1 head; stage l > 1 keeps all earlier choices (and their
/// random weights) fixed and scores lambda_l with the layer-l head alone.
/// Ties go to the larger lambda, then the smaller node count.
TuningResult layerwise_tune(const FeatureMatrix& train, const FeatureMatrix& valid, const SearchSpace& space,
                            const TuningBase& base);

/// Fits a candidate on train and scores its combined forecast on valid.
double grid_eval(const EdRvflConfig& candidate, const FeatureMatrix& train, const FeatureMatrix& valid);

}  // namespace stlf
