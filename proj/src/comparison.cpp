#include "stlf/comparison.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "stlf/errors.hpp"

namespace stlf::stats {

namespace {

constexpr double kClampLow = 0.001;
constexpr double kClampHigh = 0.900;

// q_alpha / sqrt(2) for k = 2..20 at infinite degrees of freedom.
constexpr std::array<double, 19> kQ05 = {
    1.9599639845, 2.3437005864, 2.5690317725, 2.7277743709, 2.8497054196, 2.9483200175, 3.0308784496,
    3.1017303413, 3.1636835771, 3.2186536073, 3.2680039245, 3.3127385934, 3.3536177519, 3.3912302838,
    3.4260413794, 3.4584247073, 3.4886847994, 3.5170730087, 3.5437991315};
constexpr std::array<double, 19> kQ10 = {
    1.6448536270, 2.0522927305, 2.2913414969, 2.4595157643, 2.5885206019, 2.6927321010, 2.7798836082,
    2.8546064312, 2.9198888401, 2.9777682513, 3.0296941832, 3.0767334683, 3.1196933331, 3.1591988189,
    3.1957434330, 3.2297234009, 3.2614614896, 3.2912239866, 3.3192330595};

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

void require_comparable(const ComparisonTable& t)
{
    if (t.k_models() < 3) throw DomainError("the Friedman test needs at least 3 models");
    if (t.n_datasets() < 2) throw DomainError("the Friedman test needs at least 2 datasets");
}

double rank_scale(const ComparisonTable& t)
{
    const double k = static_cast<double>(t.k_models());
    return std::sqrt(k * (k + 1.0) / (6.0 * static_cast<double>(t.n_datasets())));
}

}  // namespace

ComparisonTable rank_models(const Eigen::MatrixXd& errors, std::vector<std::string> models,
                            std::vector<std::string> datasets)
{
    if (errors.rows() == 0 || errors.cols() == 0) throw SizingError("empty error matrix");
    for (Eigen::Index i = 0; i < errors.rows(); ++i) {
        for (Eigen::Index j = 0; j < errors.cols(); ++j) {
            if (std::isnan(errors(i, j))) {
                throw DataError("NaN error for model " + std::to_string(i) + ", dataset " + std::to_string(j));
            }
        }
    }
    if (models.empty()) {
        for (Eigen::Index i = 0; i < errors.rows(); ++i) models.push_back("model_" + std::to_string(i));
    }
    if (datasets.empty()) {
        for (Eigen::Index j = 0; j < errors.cols(); ++j) datasets.push_back("dataset_" + std::to_string(j));
    }
    if (models.size() != static_cast<std::size_t>(errors.rows()) ||
        datasets.size() != static_cast<std::size_t>(errors.cols())) {
        throw ShapeError("model / dataset names do not match the error matrix shape");
    }

    ComparisonTable t;
    t.models = std::move(models);
    t.datasets = std::move(datasets);
    t.errors = errors;
    t.ranks.resize(errors.rows(), errors.cols());
    const auto k = static_cast<std::size_t>(errors.rows());
    std::vector<std::size_t> order(k);
    for (Eigen::Index j = 0; j < errors.cols(); ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return errors(static_cast<Eigen::Index>(a), j) < errors(static_cast<Eigen::Index>(b), j);
        });
        for (std::size_t start = 0; start < k;) {
            std::size_t end = start + 1;
            const double v = errors(static_cast<Eigen::Index>(order[start]), j);
            while (end < k && errors(static_cast<Eigen::Index>(order[end]), j) == v) ++end;
            const double shared = 0.5 * static_cast<double>(start + 1 + end);
            for (std::size_t p = start; p < end; ++p) t.ranks(static_cast<Eigen::Index>(order[p]), j) = shared;
            start = end;
        }
    }
    t.avg_ranks = t.ranks.rowwise().mean();
    return t;
}

double chi2_survival(double x, double dof)
{
    if (!(dof > 0.0)) throw DomainError("chi-square degrees of freedom must be positive");
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

FriedmanResult friedman_test(const ComparisonTable& table)
{
    require_comparable(table);
    const double k = static_cast<double>(table.k_models());
    const double n = static_cast<double>(table.n_datasets());
    const double sum_sq = table.avg_ranks.squaredNorm();
    FriedmanResult r;
    r.dof = table.k_models() - 1;
    r.chi2 = 12.0 * n / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);
    // Tie-averaged identical ranks can leave -0 or a few ulps of noise.
    if (std::abs(r.chi2) < 1e-9) r.chi2 = 0.0;
    r.p_value = chi2_survival(r.chi2, static_cast<double>(r.dof));
    return r;
}

double studentized_range_cdf(double q, std::size_t k)
{
    if (k < 2) throw DomainError("studentized range needs k >= 2");
    if (q <= 0.0) return 0.0;
    const double km1 = static_cast<double>(k - 1);
    auto integrand = [q, km1](double z) {
        const double inner = normal_cdf(z + q) - normal_cdf(z);
        return normal_pdf(z) * std::pow(std::max(inner, 0.0), km1);
    };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -12.0, 12.0, 20, 1e-14);
    return std::clamp(static_cast<double>(k) * integral, 0.0, 1.0);
}

double studentized_range_sf(double q, std::size_t k)
{
    return 1.0 - studentized_range_cdf(q, k);
}

double nemenyi_q(std::size_t k, double alpha)
{
    if (k < 2 || k > 20) throw DomainError("Nemenyi critical values are tabulated for 2 <= k <= 20");
    if (std::abs(alpha - 0.05) < 1e-12) return kQ05[k - 2];
    if (std::abs(alpha - 0.10) < 1e-12) return kQ10[k - 2];
    throw DomainError("unsupported significance level; expected 0.05 or 0.10");
}

double nemenyi_cd(std::size_t k, std::size_t n_datasets, double alpha)
{
    if (n_datasets == 0) throw DomainError("critical distance needs at least one dataset");
    const double kd = static_cast<double>(k);
    return nemenyi_q(k, alpha) * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(n_datasets)));
}

PairwiseResult nemenyi_pairwise(const ComparisonTable& table)
{
    require_comparable(table);
    const auto k = static_cast<Eigen::Index>(table.k_models());
    const double scale = rank_scale(table);
    PairwiseResult r;
    r.raw = Eigen::MatrixXd::Constant(k, k, -1.0);
    r.report = r.raw;
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i + 1; j < k; ++j) {
            const double q = std::abs(table.avg_ranks(i) - table.avg_ranks(j)) / scale * std::sqrt(2.0);
            const double p = studentized_range_sf(q, table.k_models());
            r.raw(i, j) = r.raw(j, i) = p;
            r.report(i, j) = r.report(j, i) = std::clamp(p, kClampLow, kClampHigh);
        }
    }
    return r;
}

std::string rank_diagram(const ComparisonTable& table, double alpha)
{
    const std::size_t k = table.k_models();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.avg_ranks(static_cast<Eigen::Index>(a)) < table.avg_ranks(static_cast<Eigen::Index>(b));
    });
    std::size_t name_width = 5;
    for (const auto& m : table.models) name_width = std::max(name_width, m.size());

    const double cd = nemenyi_cd(k, table.n_datasets(), alpha);
    constexpr int kAxis = 50;
    auto column = [&](double rank) {
        if (k == 1) return 0;
        return static_cast<int>(std::lround((rank - 1.0) / static_cast<double>(k - 1) * kAxis));
    };

    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "Critical distance (alpha = " << std::setprecision(2) << alpha << ", k = " << k
       << ", N = " << table.n_datasets() << "): " << std::setprecision(3) << cd << "\n\n";
    os << std::string(name_width, ' ') << "  rank    1" << std::string(kAxis - 1 - std::to_string(k).size(), ' ')
       << k << '\n';
    for (std::size_t idx : order) {
        const double r = table.avg_ranks(static_cast<Eigen::Index>(idx));
        std::string axis(kAxis + 1, '.');
        axis[static_cast<std::size_t>(column(r))] = '*';
        os << std::left << std::setw(static_cast<int>(name_width)) << table.models[idx] << std::right << "  "
           << std::setw(6) << std::setprecision(2) << r << "  " << axis << '\n';
    }
    {
        const int width = std::max(1, column(1.0 + cd) - column(1.0));
        os << std::string(name_width + 10, ' ') << '|' << std::string(static_cast<std::size_t>(width - 1), '-')
           << "| CD\n";
    }

    os << "\nGroups not significantly different:\n";
    std::size_t last_end = 0;
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t e = s;
        const double base = table.avg_ranks(static_cast<Eigen::Index>(order[s]));
        while (e + 1 < k && table.avg_ranks(static_cast<Eigen::Index>(order[e + 1])) - base <= cd) ++e;
        if (e > s && e + 1 > last_end) {
            os << "  [";
            for (std::size_t p = s; p <= e; ++p) os << (p > s ? ", " : "") << table.models[order[p]];
            os << "]\n";
            last_end = e + 1;
        }
    }
    return os.str();
}

}  // namespace stlf::stats
