#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace stlf::stats {

/// Models x datasets error matrix with per-dataset ranks (1 = lowest error,
/// ties share the average rank) and per-model average ranks.
struct ComparisonTable {
    std::vector<std::string> models;
    std::vector<std::string> datasets;
    Eigen::MatrixXd errors;
    Eigen::MatrixXd ranks;
    Eigen::VectorXd avg_ranks;

    std::size_t k_models() const noexcept { return static_cast<std::size_t>(errors.rows()); }
    std::size_t n_datasets() const noexcept { return static_cast<std::size_t>(errors.cols()); }
};

/// Names default to "model_<i>" / "dataset_<j>" when omitted.
ComparisonTable rank_models(const Eigen::MatrixXd& errors, std::vector<std::string> models = {},
                            std::vector<std::string> datasets = {});

struct FriedmanResult {
    double chi2 = 0.0;
    double p_value = 1.0;
    std::size_t dof = 0;
};

/// chi2_F = 12 N / (k (k + 1)) * (sum_j R_j^2 - k (k + 1)^2 / 4) on the
/// average ranks, with p from the chi-square(k - 1) survival function.
FriedmanResult friedman_test(const ComparisonTable& table);

/// Upper tail of the chi-square distribution.
double chi2_survival(double x, double dof);

/// CDF of the studentized range of k standard normals (infinite degrees of
/// freedom), by adaptive Gauss-Kronrod quadrature.
double studentized_range_cdf(double q, std::size_t k);
double studentized_range_sf(double q, std::size_t k);

/// Studentized-range critical value divided by sqrt(2), tabulated for
/// k = 2..20 and alpha in {0.05, 0.10}.
double nemenyi_q(std::size_t k, double alpha);

/// CD = q_alpha * sqrt(k (k + 1) / (6 N)).
double nemenyi_cd(std::size_t k, std::size_t n_datasets, double alpha);

struct PairwiseResult {
    Eigen::MatrixXd raw;     // unclamped p-values, diagonal -1
    Eigen::MatrixXd report;  // off-diagonal clamped to [0.001, 0.900], diagonal -1
};

PairwiseResult nemenyi_pairwise(const ComparisonTable& table);

/// Plain-text rank diagram: models sorted by average rank, a position marker
/// on a 1..k axis, the critical distance and the groups of models whose
/// ranks lie within one CD of each other.
std::string rank_diagram(const ComparisonTable& table, double alpha = 0.05);

}  // namespace stlf::stats
