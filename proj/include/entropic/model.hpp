#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "entropic/kernels.hpp"
#include "entropic/linalg.hpp"

namespace entropic {

/// Standard-form linear program  min c'x  s.t.  Ax = b, x >= 0.
struct LpInstance {
  Matrix A;
  Vector b;
  Vector c;
  bool integral_cost = false;  // entries of c are declared integers

  Eigen::Index num_vars() const { return A.cols(); }
  Eigen::Index num_constraints() const { return A.rows(); }
  double objective(const Vector& x) const { return c.dot(x); }
};

/// Probability simplex scaled to mass `beta`, with cost 0 on coordinate 0
/// and `alpha` elsewhere. Gap alpha*beta, l1 radius beta, entropic radius
/// beta*log(d).
struct SimplexFamily {
  int d = 2;
  double alpha = 1.0;
  double beta = 1.0;

  LpInstance to_lp() const;
};

/// Linear assignment problem over the Birkhoff polytope. Variables are the
/// entries of X in row-major order; constraints are the n row sums followed
/// by the n column sums.
struct AssignmentInstance {
  Matrix C;

  int size() const { return static_cast<int>(C.rows()); }
  LpInstance to_lp() const;
};

struct EnumerationOptions {
  double tol = 1e-9;           // snap/feasibility and l-inf dedup tolerance
  int max_variables = 14;      // basis enumeration budget
  int max_assignment_size = 8; // n! permutation budget for Birkhoff instances
  Execution exec = Execution::parallel;
};

/// Dimensions, finiteness, consistency of Ax = b, boundedness of P and, when
/// the vertex budget allows, nonemptiness of P and non-constancy of c over P.
/// Throws Error on the first violation.
void validate(const LpInstance& inst, const EnumerationOptions& opts = {});

/// Scale `beta` when the feasible set is {sum_i x_i = beta, x >= 0}.
std::optional<double> detect_simplex(const LpInstance& inst);
/// Side length n when `inst` has exactly the constraint layout of
/// AssignmentInstance::to_lp.
std::optional<int> detect_birkhoff(const LpInstance& inst);
/// Inverse of AssignmentInstance::to_lp; throws when not Birkhoff.
AssignmentInstance as_assignment(const LpInstance& inst);

/// Shannon entropy sum_i x_i log(1/x_i) with 0 log(1/0) = 0.
double entropy(const Vector& x);
/// h(l) = l log(1/l) + (1-l) log(1/(1-l)) on [0, 1].
double binary_entropy(double lambda);

/// Every vertex of P by enumerating all bases of the row-reduced system.
/// Output is deduplicated (l-inf within opts.tol) and sorted lexicographically.
std::vector<Vector> enumerate_vertices(const LpInstance& inst, const EnumerationOptions& opts = {});

/// Vertices using known structure when present (scaled unit vectors for a
/// simplex, permutation matrices for Birkhoff), basis enumeration otherwise.
std::vector<Vector> structured_vertices(const LpInstance& inst, const EnumerationOptions& opts = {});

struct PolytopeProfile {
  std::vector<Vector> vertices;
  std::vector<double> vertex_values;  // c'v per vertex
  double optimal_value = 0.0;
  std::vector<std::size_t> optimal_vertices;
  std::vector<std::size_t> suboptimal_vertices;
  double gap = 0.0;              // min over suboptimal v of c'v - optimal_value
  double l1_radius = 0.0;        // max over vertices of ||v||_1
  double entropic_radius = 0.0;  // H(max entropy point) - min over vertices of H(v)
  Vector max_entropy_point;
};

/// Returns argmax_{x in P} H(x), i.e. the penalized optimum with c = 0.
using MaxEntropySolver = std::function<Vector(const LpInstance&)>;

PolytopeProfile profile(const LpInstance& inst, std::vector<Vector> vertices,
                        const MaxEntropySolver& max_entropy);
PolytopeProfile profile(const LpInstance& inst, const MaxEntropySolver& max_entropy,
                        const EnumerationOptions& opts = {});

/// Relaxed gap: vertices within `tau` of the optimum count as optimal.
/// delta_tau is +inf when every vertex is tau-optimal.
struct TauGap {
  double delta_tau = 0.0;
  std::vector<std::size_t> optimal_set;
};
TauGap tau_gap(const PolytopeProfile& prof, double tau);

}  // namespace entropic
