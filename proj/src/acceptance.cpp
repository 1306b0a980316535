#include "entropic/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "entropic/bounds.hpp"
#include "entropic/error.hpp"
#include "entropic/face_distance.hpp"
#include "entropic/scan.hpp"
#include "entropic/solver.hpp"

namespace entropic::acceptance {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct ProfiledLp {
  LpInstance lp;
  PolytopeProfile prof;
};

// Instances whose fast threshold stays desk-scale, so the exponential
// regime is reachable without underflowing every coordinate.
std::vector<ProfiledLp> random_profiled_lps(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<ProfiledLp> out;
  const auto maxent = max_entropy_solver();
  while (static_cast<int>(out.size()) < count) {
    LpInstance lp = random_bounded_lp(rng);
    try {
      validate(lp);
      PolytopeProfile prof = profile(lp, maxent);
      if (fast_threshold(constants_of(prof)) > 200.0) continue;
      out.push_back({std::move(lp), std::move(prof)});
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

std::vector<double> eta_grid_around(double threshold) {
  std::vector<double> g;
  for (double f : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0}) g.push_back(f * threshold);
  return g;
}

void a1_slow_rate(std::uint64_t seed, CriterionResult& r) {
  double worst = -std::numeric_limits<double>::infinity();
  int checks = 0;
  for (const auto& inst : random_profiled_lps(seed, 20)) {
    const PolytopeConstants k = constants_of(inst.prof);
    for (double eta : eta_grid_around(fast_threshold(k))) {
      const auto sol = solve_dual_ascent(inst.lp, eta);
      const double g = sol.primal_objective - inst.prof.optimal_value;
      worst = std::max(worst, g - slow_bound(k, eta));
      ++checks;
    }
  }
  r.passed = worst <= 1e-6;
  r.detail = std::to_string(checks) + " points, max(g - bound) = " + fmt(worst);
}

void a2_fast_rate(std::uint64_t seed, CriterionResult& r) {
  double worst = -std::numeric_limits<double>::infinity();
  int checks = 0;
  for (const auto& inst : random_profiled_lps(seed, 20)) {
    const PolytopeConstants k = constants_of(inst.prof);
    for (double eta : eta_grid_around(fast_threshold(k))) {
      const auto bound = fast_bound(k, eta);
      if (!bound) continue;
      const auto sol = solve_dual_ascent(inst.lp, eta);
      const double g = sol.primal_objective - inst.prof.optimal_value;
      worst = std::max(worst, g - *bound);
      ++checks;
    }
  }
  r.passed = checks > 0 && worst <= 1e-6;
  r.detail = std::to_string(checks) + " points, max(g - bound) = " + fmt(worst);
}

void a3_gibbs_closed_form(std::uint64_t seed, CriterionResult& r) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 50);
  std::uniform_real_distribution<double> alpha(0.1, 3.0), beta(0.5, 3.0), eta(0.1, 30.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const SimplexFamily fam{dim(rng), alpha(rng), beta(rng)};
    const double e = eta(rng);
    const LpInstance lp = fam.to_lp();
    const auto g = solve_gibbs(lp, e);
    const auto d = solve_dual_ascent(lp, e);
    worst = std::max(worst, (g.x_eta - d.x_eta).cwiseAbs().maxCoeff());
  }
  r.passed = worst <= 1e-8;
  r.detail = "10 instances, max l_inf difference = " + fmt(worst);
}

void a4_no_progress(CriterionResult& r) {
  double worst = std::numeric_limits<double>::infinity();
  for (int d : {10, 100, 1000}) {
    for (double eps : {0.1, 0.5}) {
      const SimplexFamily fam{d, 1.0, 1.0};
      // eps d = 1 puts the threshold at 0; evaluate the eta -> 0+ limit.
      const double eta = eps * d > 1.0 ? simplex_no_progress_threshold(fam, eps) : std::numeric_limits<double>::min();
      const auto sol = solve_gibbs(fam.to_lp(), eta);
      worst = std::min(worst, sol.primal_objective - (1.0 - eps) * fam.alpha * fam.beta);
    }
  }
  r.passed = worst >= -1e-10;
  r.detail = "6 cases, min(objective - (1-eps) alpha beta) = " + fmt(worst);
}

void a5_lower_rate(CriterionResult& r) {
  const SimplexFamily fam{10, 1.0, 1.0};
  const PolytopeConstants k = constants_of(fam);
  double worst_lower = std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  for (double eta : {1.0 + std::log(10.0), 5.0, 8.0}) {
    const auto sol = solve_gibbs(fam.to_lp(), eta);
    const double lower = (1.0 / 9.0) * std::exp(-eta + 1.0 + std::log(10.0));
    worst_lower = std::min(worst_lower, sol.primal_objective - lower);
    const auto fb = fast_bound(k, eta);
    if (!fb) {
      worst_ratio = std::numeric_limits<double>::infinity();
      continue;
    }
    worst_ratio = std::max(worst_ratio, *fb / sol.primal_objective);
  }
  r.passed = worst_lower >= -1e-10 && worst_ratio <= 9.0 * (1.0 + 1e-9);
  r.detail = "min(objective - lower) = " + fmt(worst_lower) + ", max fast/measured = " + fmt(worst_ratio);
}

void a6_birkhoff_constants(CriterionResult& r) {
  double worst_rh = 0.0;
  bool r1_exact = true;
  for (int n = 2; n <= 5; ++n) {
    const LpInstance lp = worst_case_assignment_cost(n).to_lp();
    const PolytopeProfile prof = profile(lp, max_entropy_solver());
    r1_exact = r1_exact && prof.l1_radius == static_cast<double>(n);
    worst_rh = std::max(worst_rh, std::abs(prof.entropic_radius - n * std::log(static_cast<double>(n))));
  }
  r.passed = r1_exact && worst_rh <= 1e-8;
  r.detail = std::string("R1 exact: ") + (r1_exact ? "yes" : "no") + ", max |R_H - n log n| = " + fmt(worst_rh);
}

void a7_assignment_upper(std::uint64_t seed, CriterionResult& r) {
  const int n = 5;
  const double eps = 0.1;
  const Problem prob = make_random_assignment_problem(n, 9, seed);
  const double opt = brute_force_assignment_optimum(prob.assignment->C);
  const double eta = assignment_eta_for_epsilon(n, eps);
  const auto sol = solve(prob.lp, eta);
  const double gap = sol.primal_objective - opt;
  r.passed = gap <= eps;
  r.detail = "eta = " + fmt(eta) + ", route " + to_string(sol.route) + ", gap = " + fmt(gap);
}

void a8_assignment_lower(CriterionResult& r) {
  const SinkhornOptions opts;
  double worst = std::numeric_limits<double>::infinity();
  bool converged = true;
  for (int n : {4, 6, 8}) {
    const AssignmentInstance inst = worst_case_assignment_cost(n);
    for (double eps : {0.1, 0.25}) {
      const double eta = assignment_eta_lower_threshold(n, eps) - 0.01;
      const auto res = solve_sinkhorn(inst, eta, opts);
      converged = converged && res.converged;
      worst = std::min(worst, res.solution.primal_objective - (eps - opts.tol));
    }
  }
  r.passed = converged && worst >= 0.0;
  r.detail = "6 cases, min(gap - (eps - tol)) = " + fmt(worst);
}

void a9_face_distance(CriterionResult& r) {
  std::vector<LpInstance> cases;
  {
    LpInstance lp = SimplexFamily{4, 1.0, 1.0}.to_lp();
    lp.c << 0, 0, 1, 1;
    cases.push_back(lp);
  }
  {
    LpInstance lp = SimplexFamily{5, 1.0, 2.0}.to_lp();
    lp.c << 0, 0, 0, 1, 2;
    cases.push_back(lp);
  }
  {
    Matrix C(3, 3);
    C << 0, 0, 1, 0, 0, 1, 1, 1, 0;
    cases.push_back(AssignmentInstance{C}.to_lp());
  }
  {
    LpInstance lp;
    lp.A.resize(2, 4);
    lp.A << 1, 1, 1, 0, 0, 0, 1, 1;
    lp.b = Vector::Ones(2);
    lp.c.resize(4);
    lp.c << 1, 1, 3, 0;
    cases.push_back(lp);
  }
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t min_face = std::numeric_limits<std::size_t>::max();
  int checks = 0;
  for (const auto& lp : cases) {
    const PolytopeProfile prof = profile(lp, max_entropy_solver());
    min_face = std::min(min_face, prof.optimal_vertices.size());
    const PolytopeConstants k = constants_of(prof);
    for (double f : {1.0, 1.5, 2.0, 3.0}) {
      const double eta = f * fast_threshold(k);
      SolveOptions so;
      so.tol = 1e-10;
      const auto sol = solve(lp, eta, std::nullopt, so);
      const double dist = face_distance(sol.x_eta, prof);
      worst = std::max(worst, dist - *face_distance_bound(k, eta));
      ++checks;
    }
  }
  r.passed = min_face >= 2 && worst <= 1e-6;
  r.detail = std::to_string(checks) + " points, smallest face " + std::to_string(min_face) +
             " vertices, max(d1 - bound) = " + fmt(worst);
}

void a10_inequalities(std::uint64_t seed, CriterionResult& r) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int trials = 10000;
  constexpr double slack = 1e-12;

  int weak = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + static_cast<int>(unit(rng) * 10);
    Vector x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x(i) = unit(rng) < 0.2 ? 0.0 : 3.0 * unit(rng);
      y(i) = unit(rng) < 0.2 ? 0.0 : 3.0 * unit(rng);
    }
    const double lam = unit(rng);
    const double lhs = entropy(lam * x + (1.0 - lam) * y);
    const double rhs = lam * entropy(x) + (1.0 - lam) * entropy(y) + std::max(x.sum(), y.sum()) * binary_entropy(lam);
    if (lhs > rhs + slack) ++weak;
  }

  int mono = 0;
  for (int t = 0; t < trials; ++t) {
    const double a = std::exp(std::log(0.01) + unit(rng) * std::log(1000.0));
    const double b = std::exp(std::log(0.01) + unit(rng) * std::log(1000.0));
    const double hi = b / (a + b);
    double prev = 0.0;  // f(0)
    for (int k = 1; k <= 64; ++k) {
      const double lam = hi * k / 64.0;
      const double f = a * binary_entropy(lam) + b * lam;
      if (f < prev - slack) {
        ++mono;
        break;
      }
      prev = f;
    }
  }

  int bent = 0;
  for (int t = 0; t < trials; ++t) {
    // Half uniform on (0, 1], half log-uniform down to 1e-12.
    const double rho = (t % 2 == 0) ? 1.0 - unit(rng) : std::exp(unit(rng) * std::log(1e-12));
    if (binary_entropy(rho) / rho > std::log(1.0 / rho) + 1.0 + slack) ++bent;
  }

  r.passed = weak == 0 && mono == 0 && bent == 0;
  r.detail = "violations: weak convexity " + std::to_string(weak) + ", monotonicity " + std::to_string(mono) +
             ", binary entropy " + std::to_string(bent);
}

void a11_cross_solver(std::uint64_t seed, CriterionResult& r) {
  // Worst-case costs and random 0/1 costs. Wider integer ranges push the
  // scaling contraction ratio so close to 1 that plain Sinkhorn stalls.
  double worst = 0.0;
  int cases = 0;
  int unconverged = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const Problem& prob : {make_worst_case_assignment_problem(n), make_random_assignment_problem(n, 1, seed + n)}) {
      for (double eta : {1.0, 5.0, 20.0}) {
        const auto sk = solve_sinkhorn(*prob.assignment, eta, {1e-10, 100000, Execution::parallel});
        const auto da = solve_dual_ascent(prob.lp, eta, {1e-10, 1e-10, 200});
        unconverged += sk.converged ? 0 : 1;
        worst = std::max(worst, (sk.solution.x_eta - da.x_eta).cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  r.passed = unconverged == 0 && worst <= 1e-6;
  r.detail = std::to_string(cases) + " cases, " + std::to_string(unconverged) +
             " unconverged, max l_inf difference = " + fmt(worst);
}

CriterionResult timed(std::string id, std::string title, double time_limit,
                      const std::function<void(CriterionResult&)>& fn) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.time_limit = time_limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.time_limit > 0.0 && r.seconds >= r.time_limit) {
    r.passed = false;
    r.detail += " (time limit exceeded)";
  }
  return r;
}

}  // namespace

LpInstance random_bounded_lp(std::mt19937_64& rng, int max_vars, int max_rows) {
  std::uniform_int_distribution<int> nd(3, max_vars);
  const int n = nd(rng);
  std::uniform_int_distribution<int> md(1, std::min(max_rows, n - 1));
  const int m = md(rng);
  std::uniform_int_distribution<int> pos(1, 3), mixed(-2, 2), x0d(1, 2), cd(0, 5);

  LpInstance lp;
  lp.A.resize(m, n);
  for (int j = 0; j < n; ++j) lp.A(0, j) = pos(rng);
  for (int i = 1; i < m; ++i) {
    for (int j = 0; j < n; ++j) lp.A(i, j) = mixed(rng);
  }
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0(j) = x0d(rng);
  lp.b = lp.A * x0;
  lp.c.resize(n);
  for (int j = 0; j < n; ++j) lp.c(j) = cd(rng);
  lp.integral_cost = true;
  return lp;
}

double brute_force_assignment_optimum(const Matrix& C) {
  const int n = static_cast<int>(C.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += C(i, perm[i]);
    best = std::min(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(timed("A1", "slow rate g <= R_H/eta on random LPs", 10.0, [&](CriterionResult& r) { a1_slow_rate(seed, r); }));
  out.push_back(timed("A2", "fast rate above (R1+R_H)/Delta on random LPs", 10.0, [&](CriterionResult& r) { a2_fast_rate(seed, r); }));
  out.push_back(timed("A3", "dual ascent matches the Gibbs formula on simplices", 0, [&](CriterionResult& r) { a3_gibbs_closed_form(seed, r); }));
  out.push_back(timed("A4", "simplex no-progress below log(eps d)/alpha", 0, [&](CriterionResult& r) { a4_no_progress(r); }));
  out.push_back(timed("A5", "simplex lower rate and factor-9 tightness", 0, [&](CriterionResult& r) { a5_lower_rate(r); }));
  out.push_back(timed("A6", "Birkhoff R1 = n, R_H = n log n", 0, [&](CriterionResult& r) { a6_birkhoff_constants(r); }));
  out.push_back(timed("A7", "assignment gap <= eps at eta = n log(1/eps) + n(1 + log n)", 0, [&](CriterionResult& r) { a7_assignment_upper(seed, r); }));
  out.push_back(timed("A8", "worst-case assignment gap >= eps below n log((1-eps)/eps)", 30.0, [&](CriterionResult& r) { a8_assignment_lower(r); }));
  out.push_back(timed("A9", "distance to the optimal face under 2 R1 exp(...)", 0, [&](CriterionResult& r) { a9_face_distance(r); }));
  out.push_back(timed("A10", "entropy inequality property suite (3 x 10^4 trials)", 0, [&](CriterionResult& r) { a10_inequalities(seed, r); }));
  out.push_back(timed("A11", "Sinkhorn and dual ascent agree on Birkhoff n <= 4", 0, [&](CriterionResult& r) { a11_cross_solver(seed, r); }));
  return out;
}

void print_summary(std::ostream& out, const std::vector<CriterionResult>& results) {
  int passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.id << (r.id.size() < 3 ? "  " : " ") << r.title << " | " << r.detail
        << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace entropic::acceptance
