#include "greenmo/linalg.hpp"

namespace greenmo {

int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) >= rel_tol * sv(0)) ++rank;
    return rank;
}

bool has_full_column_rank(const Eigen::MatrixXcd& a, double rel_tol) {
    return a.rows() >= a.cols() && numerical_rank(a, rel_tol) == a.cols();
}

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& a, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Eigen::MatrixXcd left_null_space(const Eigen::MatrixXcd& a, double rel_tol) {
    // n^H a = 0  <=>  a^H n = 0: null space of a^H, from the full SVD of a.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(0) > 0.0 && sv(i) >= rel_tol * sv(0)) ++rank;
    return svd.matrixU().rightCols(a.rows() - rank);
}

}  // namespace greenmo
