#include "pmiir/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace pmiir {

namespace {

constexpr int kMaxSweeps = 80;

// Orthogonalises the columns of g in place, accumulating rotations into v.
// Requires g.rows() >= g.cols().
void hestenes(Eigen::MatrixXd& g, Eigen::MatrixXd& v) {
  const Eigen::Index n = g.cols();
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();
  v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = g.col(p).squaredNorm();
        const double beta = g.col(q).squaredNorm();
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = g.col(p).dot(g.col(q));
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
          const double gp = g(i, p);
          const double gq = g(i, q);
          g(i, p) = c * gp - s * gq;
          g(i, q) = s * gp + c * gq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

// SVD of a matrix with rows >= cols.
SvdResult tall_svd(const Eigen::MatrixXd& x) {
  const Eigen::Index m = x.rows();
  const Eigen::Index n = x.cols();
  Eigen::MatrixXd g;
  Eigen::MatrixXd q;
  const bool reduce = m > n;
  if (reduce) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    g = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    q = qr.householderQ() * Eigen::MatrixXd::Identity(m, n);
  } else {
    g = x;
  }
  Eigen::MatrixXd v;
  hestenes(g, v);

  Eigen::VectorXd sigma(n);
  for (Eigen::Index j = 0; j < n; ++j) sigma(j) = g.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return sigma(a) > sigma(b); });

  SvdResult out;
  out.singular_values.resize(n);
  out.u = Eigen::MatrixXd::Zero(m, n);
  out.v.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    const double s = sigma(src);
    out.singular_values(j) = s;
    out.v.col(j) = v.col(src);
    if (s > 0.0) {
      Eigen::VectorXd col = g.col(src) / s;
      out.u.col(j) = reduce ? Eigen::VectorXd(q * col) : col;
    }
  }
  return out;
}

void canonicalize_signs(SvdResult& r) {
  for (Eigen::Index j = 0; j < r.u.cols(); ++j) {
    Eigen::Index arg = 0;
    r.u.col(j).cwiseAbs().maxCoeff(&arg);
    if (r.u(arg, j) < 0.0) {
      r.u.col(j) *= -1.0;
      r.v.col(j) *= -1.0;
    }
  }
}

}  // namespace

SvdResult jacobi_svd(const Eigen::MatrixXd& x) {
  SvdResult r;
  if (x.rows() >= x.cols()) {
    r = tall_svd(x);
  } else {
    SvdResult t = tall_svd(x.transpose());
    r.u = std::move(t.v);
    r.v = std::move(t.u);
    r.singular_values = std::move(t.singular_values);
    // Columns for zero singular values were left zero in t.u; keep the same
    // convention for the u side here.
    for (Eigen::Index j = 0; j < r.singular_values.size(); ++j) {
      if (r.singular_values(j) == 0.0) r.u.col(j).setZero();
    }
  }
  canonicalize_signs(r);
  return r;
}

std::size_t numerical_rank(const Eigen::VectorXd& singular_values, double rel_tol) {
  if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0;
  const double cutoff = rel_tol * singular_values(0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size() && singular_values(i) > cutoff; ++i) ++rank;
  return rank;
}

}  // namespace pmiir
