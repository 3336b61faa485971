#pragma once

#include <Eigen/Dense>

namespace stlf {

enum class RidgeForm {
    Auto,    // primal when columns <= rows, dual otherwise
    Primal,  // (D'D + lambda I)^-1 D'y
    Dual,    // D' (DD' + lambda I)^-1 y
};

/// Closed-form ridge regression. lambda = 0 is allowed when the Gram matrix
/// is numerically nonsingular; otherwise a NumericalError reports the
/// smallest pivot.
Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets, double lambda,
                            RidgeForm form = RidgeForm::Auto);

/// ||(D'D + lambda I) beta - D'y||_inf / max(1, ||D'y||_inf).
double normal_equation_residual(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets, double lambda,
                                const Eigen::VectorXd& beta);

}  // namespace stlf
