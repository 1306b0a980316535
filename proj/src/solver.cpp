#include "entropic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace entropic {

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw Error(ErrorCode::invalid_input, "eta must be positive and finite");
}

PenalizedSolution finalize(const LpInstance& inst, Vector x, double eta, Route route, int iters) {
  PenalizedSolution s;
  s.eta = eta;
  s.primal_objective = inst.objective(x);
  s.penalized_objective = s.primal_objective - entropy(x) / eta;
  s.feasibility_residual = (inst.A * x - inst.b).cwiseAbs().maxCoeff();
  s.iterations = iters;
  s.route = route;
  s.x_eta = std::move(x);
  return s;
}

}  // namespace

const char* to_string(Route r) {
  switch (r) {
    case Route::gibbs: return "gibbs";
    case Route::sinkhorn: return "sinkhorn";
    case Route::dual_ascent: return "dual";
  }
  return "unknown";
}

std::optional<Route> parse_route(std::string_view s) {
  if (s == "gibbs") return Route::gibbs;
  if (s == "sinkhorn") return Route::sinkhorn;
  if (s == "dual" || s == "dual_ascent") return Route::dual_ascent;
  return std::nullopt;
}

void attach_gap(PenalizedSolution& sol, double optimal_value) {
  sol.gap = sol.primal_objective - optimal_value;
}

Matrix ScalingState::reconstruct() const {
  Matrix X(kernel_log.rows(), kernel_log.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = std::exp(log_u(i) + kernel_log(i, j) + log_v(j));
  }
  return X;
}

double marginal_error(const ScalingState& st, Execution exec) {
  return std::max(kernels::row_marginal_error(exec, st.kernel_log, st.log_u, st.log_v),
                  kernels::col_marginal_error(exec, st.kernel_log, st.log_u, st.log_v));
}

PenalizedSolution solve_gibbs(const LpInstance& inst, double eta) {
  check_eta(eta);
  const auto beta = detect_simplex(inst);
  if (!beta) throw Error(ErrorCode::invalid_input, "gibbs route needs a scaled simplex {sum x = beta}");
  const Vector logits = -eta * inst.c;
  const double lse = kernels::log_sum_exp(logits.data(), logits.size());
  Vector x = (*beta) * (logits.array() - lse).exp().matrix();
  auto s = finalize(inst, std::move(x), eta, Route::gibbs, 0);
  attach_gap(s, *beta * inst.c.minCoeff());
  return s;
}

SinkhornResult solve_sinkhorn(const AssignmentInstance& inst, double eta, const SinkhornOptions& opts) {
  check_eta(eta);
  const int n = inst.size();
  if (n < 1 || inst.C.cols() != n) throw Error(ErrorCode::invalid_input, "cost matrix must be square and nonempty");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_input, "sinkhorn tol must be positive");

  SinkhornResult res;
  ScalingState& st = res.state;
  st.kernel_log = -eta * inst.C;
  st.log_u = Vector::Zero(n);
  st.log_v = Vector::Zero(n);

  int it = 0;
  double err = std::numeric_limits<double>::infinity();
  while (it < opts.max_iter) {
    ++it;
    kernels::scale_rows(opts.exec, st.kernel_log, st.log_v, st.log_u);
    kernels::scale_cols(opts.exec, st.kernel_log, st.log_u, st.log_v);
    err = marginal_error(st, opts.exec);
    if (err <= opts.tol) break;
  }
  res.converged = err <= opts.tol;
  res.marginal_error = err;

  const Matrix X = st.reconstruct();
  Vector x(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) x(i * n + j) = X(i, j);
  }
  res.solution = finalize(inst.to_lp(), std::move(x), eta, Route::sinkhorn, it);
  return res;
}

namespace {

struct NewtonStage {
  Vector z;
  Vector x;
  int iterations = 0;
};

// Damped Newton on phi(z) = b'z - sum_i exp((A'z)_i - eta c_i - 1), which is
// eta times the dual objective at y = z / eta.
NewtonStage newton_stage(const Matrix& A, const Vector& b, const Vector& c, double eta, Vector z,
                         double stop, int max_iter) {
  const Matrix At = A.transpose();
  const Vector base = -eta * c - Vector::Ones(c.size());
  NewtonStage st;
  Vector l = base + At * z;
  Vector x = l.array().exp().matrix();
  Vector g = b - A * x;
  double phi = b.dot(z) - x.sum();
  int it = 0;
  for (; it < max_iter; ++it) {
    const double gnorm = g.cwiseAbs().maxCoeff();
    if (gnorm <= stop) break;

    const Matrix H = A * x.asDiagonal() * At;
    Eigen::LDLT<Matrix> ldlt(H);
    Vector d = ldlt.solve(g);
    // Singular or indefinite in floating point: plain gradient step.
    if (ldlt.info() != Eigen::Success || !d.allFinite() || !(g.dot(d) > 0.0)) d = g;
    const double slope = g.dot(d);

    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      const Vector z_new = z + t * d;
      const Vector l_new = base + At * z_new;
      if (l_new.maxCoeff() > 700.0) continue;
      const Vector x_new = l_new.array().exp().matrix();
      const double phi_new = b.dot(z_new) - x_new.sum();
      const Vector g_new = b - A * x_new;
      const bool armijo = phi_new >= phi + 1e-4 * t * slope;
      // Near the optimum phi is flat to rounding; accept any step that
      // reduces the gradient without losing dual value beyond rounding.
      const bool flat = g_new.cwiseAbs().maxCoeff() < gnorm && phi_new >= phi - 1e-12 * (1.0 + std::abs(phi));
      if (armijo || flat) {
        z = z_new;
        x = x_new;
        g = g_new;
        phi = phi_new;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  st.z = std::move(z);
  st.x = std::move(x);
  st.iterations = it;
  return st;
}

// Starting point with every log x_i <= 0: least-squares fit of eta c by the
// rows, then a shift along a row combination w = A'y > 0 when one exists.
Vector initial_dual(const Matrix& A, const Vector& c, double eta) {
  const Matrix At = A.transpose();
  Vector z = eta * least_squares(At, c);
  const Vector y1 = least_squares(At, Vector::Ones(A.cols()));
  const Vector w = At * y1;
  if (w.minCoeff() > 1e-8) {
    const Vector l = At * z - eta * c - Vector::Ones(c.size());
    const double s = (l.array() / w.array()).maxCoeff();
    z -= s * y1;
  }
  return z;
}

}  // namespace

PenalizedSolution solve_dual_ascent(const LpInstance& inst, double eta, const DualAscentOptions& opts) {
  check_eta(eta);
  if (inst.b.size() != inst.A.rows() || inst.c.size() != inst.A.cols()) {
    throw Error(ErrorCode::invalid_input, "inconsistent instance dimensions");
  }
  const ReducedSystem red = row_reduce(inst.A, inst.b);
  if (!red.consistent) throw Error(ErrorCode::infeasible, "Ax = b is inconsistent");

  // Continuation in eta: solve a small-eta problem first and rescale z (so
  // y = z / eta is kept) when moving to the next eta, at most 4x larger.
  const double cscale = std::max(1.0, inst.c.cwiseAbs().maxCoeff());
  double stage_eta = std::min(eta, 1.0 / cscale);
  Vector z = initial_dual(red.A, inst.c, stage_eta);
  const double stop = std::min(opts.grad_tol, opts.tol);
  int total = 0;
  NewtonStage st;
  for (;;) {
    const bool last = stage_eta >= eta;
    st = newton_stage(red.A, red.b, inst.c, stage_eta, std::move(z), last ? stop : std::max(stop, 1e-8),
                      opts.max_iter);
    total += st.iterations;
    if (last) break;
    const double next = std::min(eta, 4.0 * stage_eta);
    z = st.z * (next / stage_eta);
    stage_eta = next;
  }

  auto sol = finalize(inst, std::move(st.x), eta, Route::dual_ascent, total);
  if (!(sol.feasibility_residual <= opts.tol)) {
    std::ostringstream msg;
    msg << "dual ascent stopped after " << total << " iterations with residual " << sol.feasibility_residual;
    throw DualAscentFailure(msg.str(), std::move(sol));
  }
  return sol;
}

Route select_route(const LpInstance& inst) {
  if (detect_simplex(inst)) return Route::gibbs;
  if (detect_birkhoff(inst)) return Route::sinkhorn;
  return Route::dual_ascent;
}

PenalizedSolution solve(const LpInstance& inst, double eta, std::optional<Route> route, const SolveOptions& opts) {
  const Route r = route.value_or(select_route(inst));
  if (!route && r == Route::sinkhorn) {
    // Sinkhorn slows down sharply at large eta; when it runs out of
    // iterations the automatic route hands over to dual ascent.
    const auto res = solve_sinkhorn(as_assignment(inst), eta, {opts.tol, opts.sinkhorn_max_iter, opts.exec});
    if (res.converged) return res.solution;
    return solve_dual_ascent(inst, eta, {opts.tol, opts.grad_tol, opts.newton_max_iter});
  }
  switch (r) {
    case Route::gibbs:
      return solve_gibbs(inst, eta);
    case Route::sinkhorn: {
      const auto res = solve_sinkhorn(as_assignment(inst), eta, {opts.tol, opts.sinkhorn_max_iter, opts.exec});
      if (!res.converged) {
        std::ostringstream msg;
        msg << "sinkhorn did not reach tol " << opts.tol << " in " << opts.sinkhorn_max_iter
            << " iterations (marginal error " << res.marginal_error << ")";
        throw Error(ErrorCode::not_converged, msg.str());
      }
      return res.solution;
    }
    case Route::dual_ascent:
      return solve_dual_ascent(inst, eta, {opts.tol, opts.grad_tol, opts.newton_max_iter});
  }
  throw Error(ErrorCode::invalid_input, "unknown route");
}

MaxEntropySolver max_entropy_solver(const SolveOptions& opts) {
  return [opts](const LpInstance& flat) -> Vector {
    // c = 0, so any eta gives the same point.
    SolveOptions tight = opts;
    tight.tol = std::min(opts.tol, 1e-12);
    if (const auto beta = detect_simplex(flat)) {
      return Vector::Constant(flat.num_vars(), *beta / static_cast<double>(flat.num_vars()));
    }
    return solve(flat, 1.0, std::nullopt, tight).x_eta;
  };
}

}  // namespace entropic
