#include "stlf/metrics.hpp"

#include <cmath>
#include <string>

#include "stlf/errors.hpp"

namespace stlf {

namespace {

void check_pair(std::span<const double> predicted, std::span<const double> actual)
{
    if (predicted.size() != actual.size()) {
        throw ShapeError("prediction length " + std::to_string(predicted.size()) +
                         " does not match actual length " + std::to_string(actual.size()));
    }
    if (actual.empty()) throw SizingError("metrics need at least one forecast");
}

}  // namespace

double rmse(std::span<const double> predicted, std::span<const double> actual)
{
    check_pair(predicted, actual);
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = predicted[i] - actual[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(actual.size()));
}

double naive_mae(std::span<const double> train)
{
    if (train.size() < 2) throw SizingError("MASE scale needs a training series of length >= 2");
    double acc = 0.0;
    for (std::size_t t = 1; t < train.size(); ++t) acc += std::abs(train[t] - train[t - 1]);
    return acc / static_cast<double>(train.size() - 1);
}

double mase(std::span<const double> predicted, std::span<const double> actual, std::span<const double> train)
{
    check_pair(predicted, actual);
    const double scale = naive_mae(train);
    if (!(scale > 0.0)) throw DomainError("MASE is undefined for a constant training series");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) acc += std::abs(predicted[i] - actual[i]);
    return acc / static_cast<double>(actual.size()) / scale;
}

double mape(std::span<const double> predicted, std::span<const double> actual)
{
    check_pair(predicted, actual);
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) throw DomainError("MAPE is undefined: actual value at index " + std::to_string(i) + " is zero");
        acc += std::abs((predicted[i] - actual[i]) / actual[i]);
    }
    return acc / static_cast<double>(actual.size());
}

MetricReport evaluate(std::span<const double> predicted, std::span<const double> actual,
                      std::span<const double> train)
{
    MetricReport r;
    r.rmse = rmse(predicted, actual);
    r.mase = mase(predicted, actual, train);
    r.mape = mape(predicted, actual);
    r.n_test = actual.size();
    r.mase_denominator = naive_mae(train);
    return r;
}

}  // namespace stlf
