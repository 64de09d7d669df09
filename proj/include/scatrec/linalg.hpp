#pragma once

#include <Eigen/Dense>

namespace scatrec {

// Minimum-norm least squares with singular values below rel_cutoff * s_max
// dropped.
Eigen::VectorXd tsvd_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rel_cutoff = 1e-10);

// Singular values in decreasing order, padded with zeros up to cols() when
// the matrix has fewer rows than columns.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

}  // namespace scatrec
