#include "entropic/bounds.hpp"

#include <cmath>
#include <limits>

#include "entropic/error.hpp"
#include "entropic/face_distance.hpp"

namespace entropic {

namespace {

// prefactor * exp(exponent) evaluated as exp(log prefactor + exponent) so
// large |exponent| underflows cleanly instead of producing inf * 0.
double scaled_exp(double prefactor, double exponent) {
  if (prefactor <= 0.0) return 0.0;
  return std::exp(std::log(prefactor) + exponent);
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::invalid_input, std::string(what) + " must be positive");
}

}  // namespace

PolytopeConstants constants_of(const PolytopeProfile& prof) {
  return {prof.gap, prof.l1_radius, prof.entropic_radius};
}

PolytopeConstants constants_of(const SimplexFamily& fam) {
  return {fam.alpha * fam.beta, fam.beta, fam.beta * std::log(static_cast<double>(fam.d))};
}

double slow_bound(const PolytopeConstants& k, double eta) {
  check_positive(eta, "eta");
  return k.entropic_radius / eta;
}

double fast_threshold(const PolytopeConstants& k) {
  return (k.l1_radius + k.entropic_radius) / k.gap;
}

double fast_exponent(const PolytopeConstants& k, double eta) {
  return -eta * k.gap / k.l1_radius + (k.l1_radius + k.entropic_radius) / k.l1_radius;
}

std::optional<double> fast_bound(const PolytopeConstants& k, double eta) {
  check_positive(eta, "eta");
  if (eta < fast_threshold(k)) return std::nullopt;
  return scaled_exp(k.gap, fast_exponent(k, eta));
}

std::optional<double> face_distance_bound(const PolytopeConstants& k, double eta) {
  check_positive(eta, "eta");
  if (eta < fast_threshold(k)) return std::nullopt;
  return scaled_exp(2.0 * k.l1_radius, fast_exponent(k, eta));
}

double rate_constant_sup(const PolytopeConstants& k) { return k.gap / k.l1_radius; }

double eta_for_epsilon(const PolytopeConstants& k, double eps) {
  check_positive(eps, "epsilon");
  const double head = k.l1_radius / k.gap * std::log(k.gap / eps);
  return std::max(head, 0.0) + fast_threshold(k);
}

std::optional<double> integral_bound(const PolytopeConstants& k, double eta) {
  check_positive(eta, "eta");
  if (eta < k.l1_radius + k.entropic_radius) return std::nullopt;
  return std::exp(-eta / k.l1_radius + (k.l1_radius + k.entropic_radius) / k.l1_radius);
}

TauBound tau_bound(const PolytopeProfile& prof, double tau, double eta) {
  check_positive(eta, "eta");
  const TauGap tg = tau_gap(prof, tau);
  TauBound out;
  out.tau = tau;
  out.delta_tau = tg.delta_tau;
  if (std::isinf(tg.delta_tau)) {
    // Every vertex, hence every point of P, is within tau of the optimum.
    out.threshold = 0.0;
    out.bound = tau;
    return out;
  }
  const PolytopeConstants relaxed{tg.delta_tau, prof.l1_radius, prof.entropic_radius};
  out.threshold = fast_threshold(relaxed);
  if (auto b = fast_bound(relaxed, eta)) out.bound = *b + tau;
  return out;
}

double simplex_no_progress_threshold(const SimplexFamily& fam, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::invalid_input, "epsilon must lie in (0, 1)");
  if (!(eps * fam.d > 1.0)) throw Error(ErrorCode::invalid_input, "epsilon * d must exceed 1");
  return std::log(eps * fam.d) / fam.alpha;
}

std::optional<double> simplex_rate_lower_bound(const SimplexFamily& fam, double eta) {
  check_positive(eta, "eta");
  const double logd = std::log(static_cast<double>(fam.d));
  if (eta < (1.0 + logd) / fam.alpha) return std::nullopt;
  return scaled_exp(fam.alpha * fam.beta / 9.0, -eta * fam.alpha + 1.0 + logd);
}

AssignmentInstance worst_case_assignment_cost(int n) {
  if (n < 2) throw Error(ErrorCode::invalid_input, "worst-case assignment needs n >= 2");
  AssignmentInstance inst{Matrix::Ones(n, n)};
  for (int i = 0; i < n; ++i) {
    inst.C(i, i) = 0.0;
    if (i + 1 < n) inst.C(i, i + 1) = 0.0;
  }
  return inst;
}

double assignment_eta_lower_threshold(int n, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorCode::invalid_input, "epsilon must lie in (0, 1/2)");
  return n * std::log((1.0 - eps) / eps);
}

double assignment_gap_lower_bound(int n, double eta) {
  check_positive(eta, "eta");
  return 1.0 / (1.0 + std::exp(eta / n));
}

double assignment_eta_for_epsilon(int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::invalid_input, "epsilon must lie in (0, 1)");
  return n * std::log(1.0 / eps) + n * (1.0 + std::log(static_cast<double>(n)));
}

BoundReport evaluate_bounds(const PolytopeProfile& prof, double eta, const CheckOptions& opts) {
  const PolytopeConstants k = constants_of(prof);
  BoundReport r;
  r.eta = eta;
  r.slow_bound = slow_bound(k, eta);
  r.fast_threshold = fast_threshold(k);
  r.fast_bound = fast_bound(k, eta);
  r.face_distance_bound = face_distance_bound(k, eta);
  r.rate_constant_sup = rate_constant_sup(k);
  r.slack = opts.slack;
  if (opts.epsilon) {
    r.epsilon = opts.epsilon;
    r.eta_for_epsilon = eta_for_epsilon(k, *opts.epsilon);
  }
  if (opts.tau) r.tau_variant = tau_bound(prof, *opts.tau, eta);
  return r;
}

BoundReport check_report(const PolytopeProfile& prof, const PenalizedSolution& sol, const CheckOptions& opts) {
  BoundReport r = evaluate_bounds(prof, sol.eta, opts);
  const double g = sol.primal_objective - prof.optimal_value;
  r.measured_gap = g;
  r.slow_ok = g <= r.slow_bound + opts.slack;
  if (r.fast_bound) r.fast_ok = g <= *r.fast_bound + opts.slack;
  r.measured_face_distance = face_distance(sol.x_eta, prof);
  if (r.face_distance_bound) {
    r.face_ok = *r.measured_face_distance <= *r.face_distance_bound + opts.slack;
  }
  if (r.tau_variant && r.tau_variant->bound) r.tau_ok = g <= *r.tau_variant->bound + opts.slack;
  return r;
}

}  // namespace entropic
