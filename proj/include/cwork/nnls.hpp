#pragma once

#include <Eigen/Dense>

namespace cwork {

// Nonnegative least squares: argmin_{x >= 0} ||A x - b||_2 by the
// Lawson-Hanson active-set method. Deterministic; suited to the small
// systems that arise here (<= 65 unknowns).
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     int max_iter = 0 /* 0 -> 3 * cols */, double tol = 1e-12);

} // namespace cwork
