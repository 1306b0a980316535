#pragma once

#include <optional>

#include "entropic/model.hpp"
#include "entropic/solver.hpp"

namespace entropic {

/// The three quantities every convergence bound is written in.
struct PolytopeConstants {
  double gap = 0.0;              // suboptimality gap between optimal and next-best vertex
  double l1_radius = 0.0;        // max ||x||_1 over P
  double entropic_radius = 0.0;  // max H(x) - H(y) over P
};

PolytopeConstants constants_of(const PolytopeProfile& prof);
PolytopeConstants constants_of(const SimplexFamily& fam);

// Upper bounds on c'x_eta - min_P c'x.

/// entropic_radius / eta, valid for every eta > 0.
double slow_bound(const PolytopeConstants& k, double eta);

/// (R1 + RH) / gap: the smallest eta at which the exponential bound applies.
double fast_threshold(const PolytopeConstants& k);

/// -eta * gap / R1 + (R1 + RH) / R1; nonpositive exactly above the threshold.
double fast_exponent(const PolytopeConstants& k, double eta);

/// gap * exp(fast_exponent), or nullopt below fast_threshold.
std::optional<double> fast_bound(const PolytopeConstants& k, double eta);

/// l1 distance of x_eta to the optimal face: 2 R1 exp(fast_exponent), or
/// nullopt below fast_threshold.
std::optional<double> face_distance_bound(const PolytopeConstants& k, double eta);

/// gap / R1, the supremum of exponential rates M with d_1(x_eta, F) = o(exp(-M eta)).
double rate_constant_sup(const PolytopeConstants& k);

/// Smallest eta the fast bound certifies for accuracy eps:
/// (R1/gap * log(gap/eps))_+ + (R1 + RH)/gap.
double eta_for_epsilon(const PolytopeConstants& k, double eps);

/// Integral polytope with integer costs (gap >= 1):
/// exp(-eta/R1 + (R1+RH)/R1) for eta >= R1 + RH, else nullopt.
std::optional<double> integral_bound(const PolytopeConstants& k, double eta);

/// Relaxed-gap variant: vertices within tau of the optimum are merged into
/// the optimal set and the bound gains an additive tau.
struct TauBound {
  double tau = 0.0;
  double delta_tau = 0.0;  // +inf when every vertex is tau-optimal
  double threshold = 0.0;  // (R1 + RH) / delta_tau
  std::optional<double> bound;
};
TauBound tau_bound(const PolytopeProfile& prof, double tau, double eta);

// Lower-bound constructions.

/// log(eps d)/alpha: at or below it the Gibbs objective stays >= (1-eps) alpha beta.
/// Requires eps in (0,1) and eps d > 1.
double simplex_no_progress_threshold(const SimplexFamily& fam, double eps);

/// (1/9) alpha beta exp(-eta alpha + 1 + log d) for eta >= (1 + log d)/alpha,
/// else nullopt. The Gibbs objective never falls below it.
std::optional<double> simplex_rate_lower_bound(const SimplexFamily& fam, double eta);

/// C_ij = 0 if j == i or j == i + 1, else 1. Unique optimum X = I with value 0.
AssignmentInstance worst_case_assignment_cost(int n);

/// n log((1-eps)/eps) for eps in (0, 1/2): at or below it the penalized
/// optimum of the worst-case cost keeps gap >= eps.
double assignment_eta_lower_threshold(int n, double eps);

/// The same statement solved for eps: gap >= 1 / (1 + exp(eta / n)).
double assignment_gap_lower_bound(int n, double eta);

/// n log(1/eps) + n (1 + log n): eta sufficient for an additive eps with
/// nonnegative integer costs.
double assignment_eta_for_epsilon(int n, double eps);

struct BoundReport {
  double eta = 0.0;
  double slow_bound = 0.0;
  double fast_threshold = 0.0;
  std::optional<double> fast_bound;
  std::optional<double> face_distance_bound;
  double rate_constant_sup = 0.0;
  std::optional<double> epsilon;
  std::optional<double> eta_for_epsilon;
  std::optional<TauBound> tau_variant;

  // Measurements and verdicts (filled by check_report).
  std::optional<double> measured_gap;
  std::optional<double> measured_face_distance;
  double slack = 0.0;
  bool slow_ok = true;
  std::optional<bool> fast_ok;
  std::optional<bool> face_ok;
  std::optional<bool> tau_ok;

  bool all_ok() const {
    return slow_ok && fast_ok.value_or(true) && face_ok.value_or(true) && tau_ok.value_or(true);
  }
};

struct CheckOptions {
  double slack = 1e-6;
  std::optional<double> epsilon;
  std::optional<double> tau;
};

BoundReport evaluate_bounds(const PolytopeProfile& prof, double eta, const CheckOptions& opts = {});

/// Evaluates every bound at sol.eta and compares the measured gap and face
/// distance of sol.x_eta against them. Violations are flagged, not thrown.
BoundReport check_report(const PolytopeProfile& prof, const PenalizedSolution& sol,
                         const CheckOptions& opts = {});

}  // namespace entropic
