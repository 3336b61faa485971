#pragma once

#include <cstddef>
#include <span>

namespace stlf {

double rmse(std::span<const double> predicted, std::span<const double> actual);

/// Mean absolute scaled error; the scale is the in-sample one-step naive MAE
/// of `train`.
double mase(std::span<const double> predicted, std::span<const double> actual, std::span<const double> train);

/// Fraction, not percent: 0.10 means 10 %.
double mape(std::span<const double> predicted, std::span<const double> actual);

/// (1 / (n - 1)) * sum_{t >= 1} |x_t - x_{t-1}|
double naive_mae(std::span<const double> train);

struct MetricReport {
    double rmse = 0.0;
    double mase = 0.0;
    double mape = 0.0;
    std::size_t n_test = 0;
    double mase_denominator = 0.0;
};

MetricReport evaluate(std::span<const double> predicted, std::span<const double> actual,
                      std::span<const double> train);

}  // namespace stlf
