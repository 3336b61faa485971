#include <catch_amalgamated.hpp>

#include <random>

#include "stlf/errors.hpp"
#include "stlf/ridge.hpp"

using namespace stlf;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = g(rng);
    }
    return m;
}

// Ridge as least squares on the stacked system [D; sqrt(lambda) I] b = [y; 0].
Eigen::VectorXd qr_oracle(const Eigen::MatrixXd& d, const Eigen::VectorXd& y, double lambda)
{
    const Eigen::Index n = d.rows(), m = d.cols();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + m, m);
    a.topRows(n) = d;
    a.bottomRows(m).diagonal().setConstant(std::sqrt(lambda));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m);
    rhs.head(n) = y;
    return a.colPivHouseholderQr().solve(rhs);
}

}  // namespace

TEST_CASE("identity design")
{
    const Eigen::MatrixXd d = Eigen::MatrixXd::Identity(2, 2);
    const Eigen::Vector2d y(1.0, 2.0);
    const auto b = ridge_solve(d, y, 1.0);
    CHECK_THAT(b(0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(b(1), WithinAbs(1.0, 1e-15));
}

TEST_CASE("agrees with the QR oracle in all shapes")
{
    std::mt19937_64 rng(1);
    for (auto [n, m] : {std::pair{20, 5}, std::pair{12, 12}, std::pair{6, 30}, std::pair{50, 49}}) {
        const auto d = random_matrix(n, m, rng);
        const auto y = random_matrix(n, 1, rng).col(0).eval();
        for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
            const auto b = ridge_solve(d, y, lambda);
            const auto want = qr_oracle(d, y, lambda);
            CHECK((b - want).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, want.cwiseAbs().maxCoeff()));
            CHECK(normal_equation_residual(d, y, lambda, b) <= 1e-8);
        }
    }
}

TEST_CASE("primal and dual forms agree")
{
    std::mt19937_64 rng(2);
    const auto d = random_matrix(20, 5, rng);
    const Eigen::VectorXd y = random_matrix(20, 1, rng).col(0);
    const auto p = ridge_solve(d, y, 0.1, RidgeForm::Primal);
    const auto q = ridge_solve(d, y, 0.1, RidgeForm::Dual);
    CHECK((p - q).cwiseAbs().maxCoeff() <= 1e-9);

    const auto wide = random_matrix(5, 20, rng);
    const Eigen::VectorXd y5 = random_matrix(5, 1, rng).col(0);
    const auto wp = ridge_solve(wide, y5, 0.1, RidgeForm::Primal);
    const auto wd = ridge_solve(wide, y5, 0.1, RidgeForm::Dual);
    CHECK((wp - wd).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("shrinkage is monotone in lambda")
{
    std::mt19937_64 rng(3);
    const auto d = random_matrix(30, 8, rng);
    const Eigen::VectorXd y = random_matrix(30, 1, rng).col(0);
    double prev = ridge_solve(d, y, 1e-4).norm();
    for (double lambda : {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0}) {
        const double norm = ridge_solve(d, y, lambda).norm();
        CHECK(norm <= prev);
        prev = norm;
    }
}

TEST_CASE("singular unregularized systems report the pivot")
{
    Eigen::MatrixXd d(4, 2);
    d << 1, 2, 2, 4, 3, 6, 4, 8;
    const Eigen::Vector4d y(1, 2, 3, 4);
    try {
        ridge_solve(d, y, 0.0);
        FAIL("expected a numerical error");
    } catch (const NumericalError& e) {
        CHECK_THAT(e.what(), ContainsSubstring("smallest pivot"));
    }
    CHECK_NOTHROW(ridge_solve(d, y, 1e-3));
}

TEST_CASE("argument checks")
{
    const Eigen::MatrixXd d = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(ridge_solve(d, Eigen::VectorXd::Ones(2), 1.0), ShapeError);
    CHECK_THROWS_AS(ridge_solve(d, Eigen::VectorXd::Ones(3), -1.0), ConfigError);
    CHECK_THROWS_AS(ridge_solve(Eigen::MatrixXd(0, 0), Eigen::VectorXd(0), 1.0), ShapeError);
}
