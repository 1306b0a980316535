#include "entropic/linalg.hpp"

#include <cmath>
#include <utility>

namespace entropic {

ReducedSystem row_reduce(const Matrix& A, const Vector& b, double rel_tol) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  Matrix M(m, n + 1);
  M.leftCols(n) = A;
  M.col(n) = b;

  const double scale = A.cwiseAbs().maxCoeff();
  const double thr = rel_tol * (scale > 0.0 ? scale : 1.0);

  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < n && r < m; ++col) {
    Eigen::Index p = r;
    for (Eigen::Index i = r + 1; i < m; ++i) {
      if (std::abs(M(i, col)) > std::abs(M(p, col))) p = i;
    }
    if (std::abs(M(p, col)) <= thr) continue;
    if (p != r) M.row(p).swap(M.row(r));
    M.row(r) /= M(r, col);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != r && M(i, col) != 0.0) M.row(i) -= M(i, col) * M.row(r);
    }
    ++r;
  }

  ReducedSystem out;
  const double bscale = b.size() > 0 ? std::max(1.0, b.cwiseAbs().maxCoeff()) : 1.0;
  for (Eigen::Index i = r; i < m; ++i) {
    if (std::abs(M(i, n)) > 1e-9 * bscale) out.consistent = false;
  }
  out.A = M.topLeftCorner(r, n);
  out.b = M.col(n).head(r);
  return out;
}

Eigen::Index numerical_rank(const Matrix& A, double rel_tol) {
  return row_reduce(A, Vector::Zero(A.rows()), rel_tol).rank();
}

std::optional<Vector> solve_square(Matrix B, Vector rhs, double rel_tol) {
  const Eigen::Index k = B.rows();
  const double scale = B.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return std::nullopt;
  const double thr = rel_tol * scale;

  for (Eigen::Index col = 0; col < k; ++col) {
    Eigen::Index p = col;
    for (Eigen::Index i = col + 1; i < k; ++i) {
      if (std::abs(B(i, col)) > std::abs(B(p, col))) p = i;
    }
    if (std::abs(B(p, col)) <= thr) return std::nullopt;
    if (p != col) {
      B.row(p).swap(B.row(col));
      std::swap(rhs(p), rhs(col));
    }
    for (Eigen::Index i = col + 1; i < k; ++i) {
      const double f = B(i, col) / B(col, col);
      if (f == 0.0) continue;
      B.row(i).tail(k - col) -= f * B.row(col).tail(k - col);
      rhs(i) -= f * rhs(col);
    }
  }
  Vector x(k);
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    double s = rhs(i);
    for (Eigen::Index j = i + 1; j < k; ++j) s -= B(i, j) * x(j);
    x(i) = s / B(i, i);
  }
  return x;
}

Vector least_squares(const Matrix& M, const Vector& t) {
  return M.completeOrthogonalDecomposition().solve(t);
}

}  // namespace entropic
