#pragma once

#include <optional>

#include <Eigen/Dense>

namespace entropic {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Pivots smaller than this fraction of the largest matrix entry count as zero.
inline constexpr double kRankThreshold = 1e-10;

// Equality system with dependent rows removed. `consistent` is false when a
// dropped row reads 0 = nonzero, i.e. {x : Ax = b} is empty.
struct ReducedSystem {
  Matrix A;
  Vector b;
  bool consistent = true;
  Eigen::Index rank() const { return A.rows(); }
};

// Reduced row echelon form of [A | b] by partially pivoted elimination,
// keeping only the nonzero rows.
ReducedSystem row_reduce(const Matrix& A, const Vector& b,
                         double rel_tol = kRankThreshold);

Eigen::Index numerical_rank(const Matrix& A, double rel_tol = kRankThreshold);

// Solves B x = rhs for square B; nullopt when B is numerically singular.
std::optional<Vector> solve_square(Matrix B, Vector rhs,
                                   double rel_tol = kRankThreshold);

// argmin_y ||M y - t||_2 (complete orthogonal decomposition, rank-safe).
Vector least_squares(const Matrix& M, const Vector& t);

}  // namespace entropic
