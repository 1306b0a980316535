#pragma once

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: `serial` is the reference implementation kept for testing,
// `omp` is the OpenMP version used by default. Both evaluate each output
// element with the same arithmetic, so their results are bitwise equal.

#include <cstdint>
#include <vector>

#include "entropic/linalg.hpp"

namespace entropic {

enum class Execution { serial, parallel };

namespace kernels {

// log(sum_k exp(v_k)), shifted by the max; -inf for an all -inf input.
double log_sum_exp(const double* v, Eigen::Index n, Eigen::Index stride = 1);

// Number of k-subsets of an n-set, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

namespace serial {

// log_u_i = -log sum_j exp(kernel_log_ij + log_v_j)  (rows sum to one)
void scale_rows(const Matrix& kernel_log, const Vector& log_v, Vector& log_u);
// log_v_j = -log sum_i exp(kernel_log_ij + log_u_i)  (columns sum to one)
void scale_cols(const Matrix& kernel_log, const Vector& log_u, Vector& log_v);
// max_i |sum_j X_ij - 1| and max_j |sum_i X_ij - 1| for
// log X_ij = log_u_i + kernel_log_ij + log_v_j.
double row_marginal_error(const Matrix& kernel_log, const Vector& log_u, const Vector& log_v);
double col_marginal_error(const Matrix& kernel_log, const Vector& log_u, const Vector& log_v);

// Basic feasible solutions of {Ax = b, x >= 0} for full-row-rank A, one per
// nonsingular feasible basis, in lexicographic basis order. Coordinates
// within `tol` of zero are snapped to zero; duplicates are kept.
std::vector<Vector> basic_feasible_solutions(const Matrix& A, const Vector& b, double tol);

}  // namespace serial

namespace omp {

void scale_rows(const Matrix& kernel_log, const Vector& log_v, Vector& log_u);
void scale_cols(const Matrix& kernel_log, const Vector& log_u, Vector& log_v);
double row_marginal_error(const Matrix& kernel_log, const Vector& log_u, const Vector& log_v);
double col_marginal_error(const Matrix& kernel_log, const Vector& log_u, const Vector& log_v);
std::vector<Vector> basic_feasible_solutions(const Matrix& A, const Vector& b, double tol);

}  // namespace omp

inline void scale_rows(Execution e, const Matrix& k, const Vector& lv, Vector& lu) {
  e == Execution::serial ? serial::scale_rows(k, lv, lu) : omp::scale_rows(k, lv, lu);
}
inline void scale_cols(Execution e, const Matrix& k, const Vector& lu, Vector& lv) {
  e == Execution::serial ? serial::scale_cols(k, lu, lv) : omp::scale_cols(k, lu, lv);
}
inline double row_marginal_error(Execution e, const Matrix& k, const Vector& lu, const Vector& lv) {
  return e == Execution::serial ? serial::row_marginal_error(k, lu, lv)
                                : omp::row_marginal_error(k, lu, lv);
}
inline double col_marginal_error(Execution e, const Matrix& k, const Vector& lu, const Vector& lv) {
  return e == Execution::serial ? serial::col_marginal_error(k, lu, lv)
                                : omp::col_marginal_error(k, lu, lv);
}
inline std::vector<Vector> basic_feasible_solutions(Execution e, const Matrix& A,
                                                    const Vector& b, double tol) {
  return e == Execution::serial ? serial::basic_feasible_solutions(A, b, tol)
                                : omp::basic_feasible_solutions(A, b, tol);
}

}  // namespace kernels
}  // namespace entropic
