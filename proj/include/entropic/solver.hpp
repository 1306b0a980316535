#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "entropic/error.hpp"
#include "entropic/kernels.hpp"
#include "entropic/model.hpp"

namespace entropic {

enum class Route { gibbs, sinkhorn, dual_ascent };

const char* to_string(Route r);
/// Accepts "gibbs", "sinkhorn", "dual" / "dual_ascent".
std::optional<Route> parse_route(std::string_view s);

/// Optimum of  min c'x - H(x)/eta  s.t.  Ax = b.
struct PenalizedSolution {
  Vector x_eta;
  double eta = 0.0;
  double primal_objective = 0.0;     // c'x_eta
  std::optional<double> gap;         // c'x_eta - LP optimum, when the optimum is known
  double penalized_objective = 0.0;  // c'x_eta - H(x_eta)/eta
  double feasibility_residual = 0.0; // ||A x_eta - b||_inf
  int iterations = 0;
  Route route = Route::dual_ascent;
};

void attach_gap(PenalizedSolution& sol, double optimal_value);

/// Diagonal scalings of the Gibbs kernel, X = diag(u) exp(-eta C) diag(v),
/// all stored as logarithms.
struct ScalingState {
  Vector log_u;
  Vector log_v;
  Matrix kernel_log;  // -eta * C

  Matrix reconstruct() const;
};

/// max(||X1 - 1||_inf, ||X'1 - 1||_inf) for the reconstructed X.
double marginal_error(const ScalingState& state, Execution exec = Execution::parallel);

/// Closed-form Gibbs vector on a scaled simplex {sum x = beta, x >= 0}:
/// x_i = beta * softmax(-eta c)_i. Throws for other feasible sets.
PenalizedSolution solve_gibbs(const LpInstance& inst, double eta);

struct SinkhornOptions {
  double tol = 1e-8;
  int max_iter = 100000;
  Execution exec = Execution::parallel;
};

struct SinkhornResult {
  PenalizedSolution solution;
  ScalingState state;
  bool converged = false;
  double marginal_error = 0.0;
};

/// Log-domain Sinkhorn: a row normalization then a column normalization per
/// iteration until both marginals are within tol. Non-convergence is
/// reported through `converged`, not thrown.
SinkhornResult solve_sinkhorn(const AssignmentInstance& inst, double eta,
                              const SinkhornOptions& opts = {});

struct DualAscentOptions {
  double tol = 1e-8;        // required ||Ax - b||_inf of the returned point
  double grad_tol = 1e-10;  // stopping rule on the dual gradient
  int max_iter = 200;
};

/// Thrown by solve_dual_ascent when it stops short of `tol`; carries the
/// last primal iterate.
class DualAscentFailure : public Error {
 public:
  DualAscentFailure(const std::string& what, PenalizedSolution last)
      : Error(ErrorCode::not_converged, what), last_(std::move(last)) {}
  const PenalizedSolution& last_iterate() const { return last_; }

 private:
  PenalizedSolution last_;
};

/// Damped Newton ascent on the smooth concave dual
///   max_y  b'y - (1/eta) sum_i exp(-eta (c_i - (A'y)_i) - 1),
/// primal recovered as x_i = exp(-eta (c_i - (A'y)_i) - 1).
PenalizedSolution solve_dual_ascent(const LpInstance& inst, double eta,
                                    const DualAscentOptions& opts = {});

struct SolveOptions {
  double tol = 1e-8;
  int sinkhorn_max_iter = 100000;
  int newton_max_iter = 200;
  double grad_tol = 1e-10;
  Execution exec = Execution::parallel;
};

/// gibbs for a scaled simplex, sinkhorn for Birkhoff, dual ascent otherwise.
Route select_route(const LpInstance& inst);

/// Solves with `route`, or the automatically selected one when empty.
PenalizedSolution solve(const LpInstance& inst, double eta, std::optional<Route> route = std::nullopt,
                        const SolveOptions& opts = {});

/// Max-entropy point of P using the fastest applicable route.
MaxEntropySolver max_entropy_solver(const SolveOptions& opts = {});

}  // namespace entropic
