#include "entropic/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "entropic/error.hpp"

namespace entropic {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<Vector> sort_dedup(std::vector<Vector> pts, double tol) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Vector> kept;
  for (auto& p : pts) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Vector& q) {
      return (p - q).cwiseAbs().maxCoeff() <= tol;
    });
    if (!dup) kept.push_back(std::move(p));
  }
  return kept;
}

// Some w = A'y > 0 exists, which forces 1'd = 0 for every recession
// direction d >= 0 with Ad = 0. Tested with w = 1.
bool has_positive_row_combination(const Matrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    if (A.col(j).cwiseAbs().maxCoeff() == 0.0) return false;
  }
  const Vector ones = Vector::Ones(A.cols());
  const Vector y = least_squares(A.transpose(), ones);
  return (A.transpose() * y - ones).cwiseAbs().maxCoeff() <= 1e-8;
}

bool in_row_space(const Matrix& A, const Vector& c) {
  const Vector y = least_squares(A.transpose(), c);
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  return (A.transpose() * y - c).cwiseAbs().maxCoeff() <= 1e-10 * scale;
}

}  // namespace

LpInstance SimplexFamily::to_lp() const {
  if (d < 2) throw Error(ErrorCode::invalid_input, "simplex dimension must be >= 2");
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::invalid_input, "simplex alpha and beta must be positive and finite");
  }
  LpInstance lp;
  lp.A = Matrix::Ones(1, d);
  lp.b = Vector::Constant(1, beta);
  lp.c = Vector::Constant(d, alpha);
  lp.c(0) = 0.0;
  lp.integral_cost = alpha == std::floor(alpha);
  return lp;
}

LpInstance AssignmentInstance::to_lp() const {
  const int n = size();
  if (n < 1 || C.cols() != n) throw Error(ErrorCode::invalid_input, "cost matrix must be square and nonempty");
  if (!C.allFinite()) throw Error(ErrorCode::invalid_input, "cost matrix has non-finite entries");
  LpInstance lp;
  lp.A = Matrix::Zero(2 * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.A(i, i * n + j) = 1.0;
      lp.A(n + j, i * n + j) = 1.0;
    }
  }
  lp.b = Vector::Ones(2 * n);
  lp.c.resize(n * n);
  bool integral = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.c(i * n + j) = C(i, j);
      integral = integral && C(i, j) == std::floor(C(i, j));
    }
  }
  lp.integral_cost = integral;
  return lp;
}

std::optional<double> detect_simplex(const LpInstance& inst) {
  if (inst.A.rows() != 1 || inst.A.cols() < 1) return std::nullopt;
  const double a = inst.A(0, 0);
  if (a == 0.0 || (inst.A.array() != a).any()) return std::nullopt;
  const double beta = inst.b(0) / a;
  if (!(beta > 0.0)) return std::nullopt;
  return beta;
}

std::optional<int> detect_birkhoff(const LpInstance& inst) {
  const auto nn = inst.A.cols();
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nn))));
  if (n < 1 || static_cast<Eigen::Index>(n) * n != nn || inst.A.rows() != 2 * n) return std::nullopt;
  if ((inst.b.array() != 1.0).any()) return std::nullopt;
  AssignmentInstance probe{Matrix::Zero(n, n)};
  if (probe.to_lp().A != inst.A) return std::nullopt;
  return n;
}

AssignmentInstance as_assignment(const LpInstance& inst) {
  const auto n = detect_birkhoff(inst);
  if (!n) throw Error(ErrorCode::invalid_input, "instance is not an assignment problem");
  AssignmentInstance out{Matrix(*n, *n)};
  for (int i = 0; i < *n; ++i) {
    for (int j = 0; j < *n; ++j) out.C(i, j) = inst.c(i * *n + j);
  }
  return out;
}

double entropy(const Vector& x) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x(i);
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_input, "entropy of a non-finite value");
    if (v < 0.0) throw Error(ErrorCode::invalid_input, "entropy of a negative value");
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double binary_entropy(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::invalid_input, "binary entropy argument outside [0, 1]");
  }
  double h = 0.0;
  if (lambda > 0.0) h -= lambda * std::log(lambda);
  if (lambda < 1.0) h -= (1.0 - lambda) * std::log1p(-lambda);
  return h;
}

std::vector<Vector> enumerate_vertices(const LpInstance& inst, const EnumerationOptions& opts) {
  if (inst.num_vars() > opts.max_variables) {
    throw Error(ErrorCode::budget_exceeded,
                "basis enumeration limited to " + std::to_string(opts.max_variables) +
                    " variables, instance has " + std::to_string(inst.num_vars()));
  }
  const ReducedSystem red = row_reduce(inst.A, inst.b);
  if (!red.consistent) throw Error(ErrorCode::infeasible, "Ax = b is inconsistent");
  auto cands = kernels::basic_feasible_solutions(opts.exec, red.A, red.b, opts.tol);
  if (cands.empty()) throw Error(ErrorCode::infeasible, "no feasible basis: P is empty");
  return sort_dedup(std::move(cands), opts.tol);
}

std::vector<Vector> structured_vertices(const LpInstance& inst, const EnumerationOptions& opts) {
  if (const auto beta = detect_simplex(inst)) {
    const Eigen::Index d = inst.num_vars();
    std::vector<Vector> out;
    for (Eigen::Index i = 0; i < d; ++i) {
      Vector v = Vector::Zero(d);
      v(i) = *beta;
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }
  if (const auto n = detect_birkhoff(inst)) {
    if (*n > opts.max_assignment_size) {
      throw Error(ErrorCode::budget_exceeded,
                  "permutation enumeration limited to n <= " + std::to_string(opts.max_assignment_size));
    }
    std::vector<int> perm(*n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Vector> out;
    do {
      Vector v = Vector::Zero(static_cast<Eigen::Index>(*n) * *n);
      for (int i = 0; i < *n; ++i) v(i * *n + perm[i]) = 1.0;
      out.push_back(std::move(v));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }
  return enumerate_vertices(inst, opts);
}

void validate(const LpInstance& inst, const EnumerationOptions& opts) {
  const auto m = inst.A.rows();
  const auto n = inst.A.cols();
  if (m < 1 || n < 1) throw Error(ErrorCode::invalid_input, "A must have at least one row and column");
  if (inst.b.size() != m) throw Error(ErrorCode::invalid_input, "b length does not match rows of A");
  if (inst.c.size() != n) throw Error(ErrorCode::invalid_input, "c length does not match columns of A");
  if (!inst.A.allFinite() || !inst.b.allFinite() || !inst.c.allFinite()) {
    throw Error(ErrorCode::invalid_input, "non-finite entries in A, b or c");
  }

  const ReducedSystem red = row_reduce(inst.A, inst.b);
  if (!red.consistent) throw Error(ErrorCode::infeasible, "Ax = b is inconsistent");

  if (!has_positive_row_combination(inst.A)) {
    if (n > opts.max_variables) {
      throw Error(ErrorCode::budget_exceeded, "cannot certify boundedness: no positive row combination "
                                              "and too many variables for ray enumeration");
    }
    // Extreme rays are the BFS of {Ad = 0, 1'd = 1, d >= 0}.
    Matrix Ar(m + 1, n);
    Ar.topRows(m) = inst.A;
    Ar.row(m).setOnes();
    Vector br = Vector::Zero(m + 1);
    br(m) = 1.0;
    const ReducedSystem rays = row_reduce(Ar, br);
    if (rays.consistent && !kernels::basic_feasible_solutions(opts.exec, rays.A, rays.b, opts.tol).empty()) {
      throw Error(ErrorCode::unbounded, "feasible set has a recession direction");
    }
  }

  if (in_row_space(inst.A, inst.c)) {
    throw Error(ErrorCode::constant_objective, "c'x is constant on {Ax = b}");
  }

  const bool structured = detect_simplex(inst).has_value() ||
                          (detect_birkhoff(inst).has_value() && *detect_birkhoff(inst) <= opts.max_assignment_size);
  if (structured || n <= opts.max_variables) {
    const auto verts = structured_vertices(inst, opts);
    const double v0 = inst.objective(verts.front());
    const double scale = std::max(1.0, std::abs(v0));
    const bool constant = std::all_of(verts.begin(), verts.end(), [&](const Vector& v) {
      return std::abs(inst.objective(v) - v0) <= 1e-9 * scale;
    });
    if (constant) throw Error(ErrorCode::constant_objective, "c'x takes one value on every vertex");
  }
}

PolytopeProfile profile(const LpInstance& inst, std::vector<Vector> vertices,
                        const MaxEntropySolver& max_entropy) {
  if (vertices.empty()) throw Error(ErrorCode::infeasible, "empty vertex set");
  PolytopeProfile p;
  p.vertices = std::move(vertices);
  p.vertex_values.reserve(p.vertices.size());
  for (const auto& v : p.vertices) p.vertex_values.push_back(inst.objective(v));

  p.optimal_value = *std::min_element(p.vertex_values.begin(), p.vertex_values.end());
  const double vmax = *std::max_element(p.vertex_values.begin(), p.vertex_values.end());
  const double obj_tol = 1e-9 * std::max({1.0, std::abs(p.optimal_value), std::abs(vmax)});
  p.gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    const double excess = p.vertex_values[k] - p.optimal_value;
    if (excess <= obj_tol) {
      p.optimal_vertices.push_back(k);
    } else {
      p.suboptimal_vertices.push_back(k);
      p.gap = std::min(p.gap, excess);
    }
  }
  if (p.suboptimal_vertices.empty()) {
    throw Error(ErrorCode::constant_objective, "every vertex is optimal");
  }

  double min_h = std::numeric_limits<double>::infinity();
  double max_vertex_h = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) {
    p.l1_radius = std::max(p.l1_radius, v.cwiseAbs().sum());
    const double h = entropy(v);
    min_h = std::min(min_h, h);
    max_vertex_h = std::max(max_vertex_h, h);
  }

  LpInstance flat = inst;
  flat.c.setZero();
  p.max_entropy_point = max_entropy(flat);
  // H over P peaks at the max-entropy point, never below a vertex; the max
  // only absorbs solver rounding.
  p.entropic_radius = std::max(entropy(p.max_entropy_point), max_vertex_h) - min_h;
  return p;
}

PolytopeProfile profile(const LpInstance& inst, const MaxEntropySolver& max_entropy,
                        const EnumerationOptions& opts) {
  return profile(inst, structured_vertices(inst, opts), max_entropy);
}

TauGap tau_gap(const PolytopeProfile& prof, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::invalid_input, "tau must be positive");
  TauGap out;
  double worst_in = -std::numeric_limits<double>::infinity();
  double best_out = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < prof.vertices.size(); ++k) {
    const double v = prof.vertex_values[k];
    if (v - prof.optimal_value <= tau) {
      out.optimal_set.push_back(k);
      worst_in = std::max(worst_in, v);
    } else {
      best_out = std::min(best_out, v);
    }
  }
  out.delta_tau = std::isfinite(best_out) ? best_out - worst_in : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace entropic
