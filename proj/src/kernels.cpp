#include "entropic/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entropic::kernels {

double log_sum_exp(const double* v, Eigen::Index n, Eigen::Index stride) {
  double mx = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) mx = std::max(mx, v[k * stride]);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) s += std::exp(v[k * stride] - mx);
  return mx + std::log(s);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // r * num / i is exact at every step; guard the multiplication.
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = r * num / i;
  }
  return r;
}

namespace {

// Shared per-element bodies so serial and omp stay bitwise identical.

double row_lse(const Matrix& K, const Vector& add, Eigen::Index i) {
  const Eigen::Index n = K.cols();
  double mx = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) mx = std::max(mx, K(i, j) + add(j));
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) s += std::exp(K(i, j) + add(j) - mx);
  return mx + std::log(s);
}

double col_lse(const Matrix& K, const Vector& add, Eigen::Index j) {
  const Eigen::Index m = K.rows();
  double mx = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m; ++i) mx = std::max(mx, K(i, j) + add(i));
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) s += std::exp(K(i, j) + add(i) - mx);
  return mx + std::log(s);
}

double row_error(const Matrix& K, const Vector& lu, const Vector& lv, Eigen::Index i) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < K.cols(); ++j) s += std::exp(lu(i) + K(i, j) + lv(j));
  return std::abs(s - 1.0);
}

double col_error(const Matrix& K, const Vector& lu, const Vector& lv, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < K.rows(); ++i) s += std::exp(lu(i) + K(i, j) + lv(j));
  return std::abs(s - 1.0);
}

// Lexicographic unranking of k-subsets of {0..n-1}.
void unrank_combination(std::uint64_t rank, int n, int k, std::vector<int>& out) {
  out.resize(k);
  int x = 0;
  for (int i = 0; i < k; ++i) {
    for (;;) {
      const std::uint64_t c = binomial(n - 1 - x, k - 1 - i);
      if (c <= rank) {
        rank -= c;
        ++x;
      } else {
        break;
      }
    }
    out[i] = x++;
  }
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::optional<Vector> basis_point(const Matrix& A, const Vector& b,
                                  const std::vector<int>& cols, double tol) {
  const Eigen::Index r = A.rows();
  Matrix B(r, r);
  for (Eigen::Index k = 0; k < r; ++k) B.col(k) = A.col(cols[k]);
  auto xb = solve_square(std::move(B), b);
  if (!xb) return std::nullopt;
  Vector x = Vector::Zero(A.cols());
  for (Eigen::Index k = 0; k < r; ++k) {
    double v = (*xb)(k);
    if (!std::isfinite(v) || v < -tol) return std::nullopt;
    if (std::abs(v) <= tol) v = 0.0;
    x(cols[k]) = v;
  }
  return x;
}

constexpr std::uint64_t kBlock = 2048;

void enumerate_block(const Matrix& A, const Vector& b, double tol, std::uint64_t first,
                     std::uint64_t last, std::vector<Vector>& out) {
  const int n = static_cast<int>(A.cols());
  const int r = static_cast<int>(A.rows());
  std::vector<int> cols;
  unrank_combination(first, n, r, cols);
  for (std::uint64_t idx = first; idx < last; ++idx) {
    if (auto x = basis_point(A, b, cols, tol)) out.push_back(std::move(*x));
    if (!next_combination(cols, n)) break;
  }
}

}  // namespace

namespace serial {

void scale_rows(const Matrix& K, const Vector& log_v, Vector& log_u) {
  log_u.resize(K.rows());
  for (Eigen::Index i = 0; i < K.rows(); ++i) log_u(i) = -row_lse(K, log_v, i);
}

void scale_cols(const Matrix& K, const Vector& log_u, Vector& log_v) {
  log_v.resize(K.cols());
  for (Eigen::Index j = 0; j < K.cols(); ++j) log_v(j) = -col_lse(K, log_u, j);
}

double row_marginal_error(const Matrix& K, const Vector& lu, const Vector& lv) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < K.rows(); ++i) e = std::max(e, row_error(K, lu, lv, i));
  return e;
}

double col_marginal_error(const Matrix& K, const Vector& lu, const Vector& lv) {
  double e = 0.0;
  for (Eigen::Index j = 0; j < K.cols(); ++j) e = std::max(e, col_error(K, lu, lv, j));
  return e;
}

std::vector<Vector> basic_feasible_solutions(const Matrix& A, const Vector& b, double tol) {
  std::vector<Vector> out;
  const std::uint64_t total = binomial(A.cols(), A.rows());
  enumerate_block(A, b, tol, 0, total, out);
  return out;
}

}  // namespace serial

namespace omp {

void scale_rows(const Matrix& K, const Vector& log_v, Vector& log_u) {
  log_u.resize(K.rows());
  const Eigen::Index m = K.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < m; ++i) log_u(i) = -row_lse(K, log_v, i);
}

void scale_cols(const Matrix& K, const Vector& log_u, Vector& log_v) {
  log_v.resize(K.cols());
  const Eigen::Index n = K.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) log_v(j) = -col_lse(K, log_u, j);
}

double row_marginal_error(const Matrix& K, const Vector& lu, const Vector& lv) {
  double e = 0.0;
  const Eigen::Index m = K.rows();
#pragma omp parallel for reduction(max : e) schedule(static)
  for (Eigen::Index i = 0; i < m; ++i) e = std::max(e, row_error(K, lu, lv, i));
  return e;
}

double col_marginal_error(const Matrix& K, const Vector& lu, const Vector& lv) {
  double e = 0.0;
  const Eigen::Index n = K.cols();
#pragma omp parallel for reduction(max : e) schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) e = std::max(e, col_error(K, lu, lv, j));
  return e;
}

std::vector<Vector> basic_feasible_solutions(const Matrix& A, const Vector& b, double tol) {
  const std::uint64_t total = binomial(A.cols(), A.rows());
  const std::int64_t blocks = static_cast<std::int64_t>((total + kBlock - 1) / kBlock);
  std::vector<std::vector<Vector>> per_block(blocks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    const std::uint64_t first = static_cast<std::uint64_t>(blk) * kBlock;
    const std::uint64_t last = std::min(total, first + kBlock);
    enumerate_block(A, b, tol, first, last, per_block[blk]);
  }
  std::vector<Vector> out;
  for (auto& v : per_block) {
    for (auto& x : v) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace omp

}  // namespace entropic::kernels
