#include "stlf/ridge.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stlf/errors.hpp"

namespace stlf {

namespace {

// Solves the symmetric positive (semi)definite system gram * x = rhs with one
// step of iterative refinement.
Eigen::VectorXd solve_spd(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs, double lambda)
{
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    const Eigen::VectorXd pivots = ldlt.vectorD();
    const double largest = pivots.cwiseAbs().maxCoeff();
    const double smallest = pivots.minCoeff();
    const double tol = static_cast<double>(gram.rows()) * std::numeric_limits<double>::epsilon() *
                       std::max(largest, std::numeric_limits<double>::min());
    if (ldlt.info() != Eigen::Success || !(smallest > tol)) {
        std::ostringstream os;
        os << "ridge system with lambda = " << lambda << " is numerically singular (smallest pivot "
           << smallest << ", largest " << largest << ")";
        throw NumericalError(os.str());
    }
    Eigen::VectorXd x = ldlt.solve(rhs);
    const Eigen::VectorXd r = rhs - gram * x;
    x += ldlt.solve(r);
    if (!x.allFinite()) throw NumericalError("ridge solution is not finite");
    return x;
}

}  // namespace

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets, double lambda,
                            RidgeForm form)
{
    if (design.rows() != targets.size()) {
        throw ShapeError("design has " + std::to_string(design.rows()) + " rows but targets has " +
                         std::to_string(targets.size()) + " entries");
    }
    if (design.rows() == 0 || design.cols() == 0) throw ShapeError("empty design matrix");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be finite and >= 0");

    if (form == RidgeForm::Auto) form = design.cols() <= design.rows() ? RidgeForm::Primal : RidgeForm::Dual;

    if (form == RidgeForm::Primal) {
        Eigen::MatrixXd gram = design.transpose() * design;
        gram.diagonal().array() += lambda;
        return solve_spd(gram, design.transpose() * targets, lambda);
    }
    Eigen::MatrixXd gram = design * design.transpose();
    gram.diagonal().array() += lambda;
    return design.transpose() * solve_spd(gram, targets, lambda);
}

double normal_equation_residual(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets, double lambda,
                                const Eigen::VectorXd& beta)
{
    const Eigen::VectorXd rhs = design.transpose() * targets;
    const Eigen::VectorXd lhs = design.transpose() * (design * beta) + lambda * beta;
    return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
}

}  // namespace stlf
