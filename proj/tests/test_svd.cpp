#include <doctest.h>

#include <random>

#include "pmiir/svd.hpp"
#include "support/oracles.hpp"

using namespace pmiir;

TEST_CASE("identity") {
  const auto r = jacobi_svd(Eigen::MatrixXd::Identity(3, 3));
  CHECK((r.singular_values - Eigen::VectorXd::Ones(3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((r.u * r.singular_values.asDiagonal() * r.v.transpose() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("rank one") {
  Eigen::VectorXd u(4);
  u << 1, -2, 3, 0.5;
  Eigen::VectorXd v(3);
  v << 2, 0, -1;
  const Eigen::MatrixXd x = u * v.transpose();
  const auto r = jacobi_svd(x);
  CHECK(numerical_rank(r.singular_values) == 1);
  CHECK(std::abs(r.singular_values(0) - u.norm() * v.norm()) < 1e-12);
  const Eigen::MatrixXd approx = r.u.leftCols(1) * r.singular_values(0) * r.v.leftCols(1).transpose();
  CHECK((approx - x).norm() < 1e-12);
}

TEST_CASE("zero matrix has rank zero") {
  const auto r = jacobi_svd(Eigen::MatrixXd::Zero(3, 2));
  CHECK(numerical_rank(r.singular_values) == 0);
}

TEST_CASE("matches the divide-and-conquer oracle on random shapes") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dim(1, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = dim(rng);
    const int n = dim(rng);
    const int rank = std::uniform_int_distribution<int>(1, std::min(m, n))(rng);
    const Eigen::MatrixXd x = pmiir::testing::random_matrix_of_rank(rng, m, n, rank);
    const auto r = jacobi_svd(x);
    const auto oracle = pmiir::testing::oracle_singular_values(x);
    CHECK((r.singular_values - oracle).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, oracle(0)));
    CHECK(numerical_rank(r.singular_values) == static_cast<std::size_t>(rank));
    for (Eigen::Index j = 1; j < r.singular_values.size(); ++j) {
      CHECK(r.singular_values(j) <= r.singular_values(j - 1));
    }
    const auto k = static_cast<Eigen::Index>(rank);
    CHECK(pmiir::testing::max_abs_offdiag_identity_error(r.u.leftCols(k)) <= 1e-8);
    CHECK(pmiir::testing::max_abs_offdiag_identity_error(r.v.leftCols(k)) <= 1e-8);
    CHECK((r.u * r.singular_values.asDiagonal() * r.v.transpose() - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
    // Sign convention: largest-magnitude entry of each kept u column is positive.
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::Index arg = 0;
      r.u.col(j).cwiseAbs().maxCoeff(&arg);
      CHECK(r.u(arg, j) > 0.0);
    }
  }
}

TEST_CASE("Eckart-Young residual on a 5x4 matrix") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(5, 4);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  const auto r = jacobi_svd(x);
  const Eigen::MatrixXd approx = r.u.leftCols(2) * r.singular_values.head(2).asDiagonal() * r.v.leftCols(2).transpose();
  const auto s = pmiir::testing::oracle_singular_values(x);
  CHECK(std::abs((x - approx).norm() - std::sqrt(s(2) * s(2) + s(3) * s(3))) <= 1e-6);
}
