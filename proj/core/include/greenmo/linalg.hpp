#pragma once

#include <Eigen/Dense>

namespace greenmo {

/// Numerical rank: singular values at or above tol * sigma_max.
int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol);
bool has_full_column_rank(const Eigen::MatrixXcd& a, double rel_tol);

/// Moore-Penrose pseudo-inverse via SVD, dropping singular values below rel_tol * sigma_max.
Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, double rel_tol);

/// Orthonormal basis (columns) of the left null space of a: vectors n with n^H a = 0.
Eigen::MatrixXcd left_null_space(const Eigen::MatrixXcd& a, double rel_tol);

}  // namespace greenmo
