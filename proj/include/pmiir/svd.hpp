#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace pmiir {

// Thin SVD x = u * diag(singular_values) * v^T with r = min(rows, cols):
// u is rows x r, v is cols x r, singular values descending. Each u column
// with a non-zero singular value has its largest-magnitude entry positive;
// columns belonging to zero singular values are left zero.
struct SvdResult {
  Eigen::MatrixXd u;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd v;
};

// One-sided (Hestenes) Jacobi. Tall inputs are first reduced to their
// triangular QR factor so rotations run on a square matrix.
SvdResult jacobi_svd(const Eigen::MatrixXd& x);

// Number of singular values above rel_tol * largest (input sorted descending).
std::size_t numerical_rank(const Eigen::VectorXd& singular_values, double rel_tol = 1e-10);

}  // namespace pmiir
