#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "entropic/bounds.hpp"
#include "entropic/error.hpp"
#include "entropic/solver.hpp"

using namespace entropic;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

PolytopeConstants birkhoff_constants(int n) { return {1.0, double(n), n * std::log(double(n))}; }

}  // namespace

TEST_CASE("slow_bound") {
  CHECK(slow_bound(birkhoff_constants(4), 8.0) == doctest::Approx(4.0 * std::log(4.0) / 8.0));
  CHECK(slow_bound(birkhoff_constants(4), 8.0) == doctest::Approx(0.6931).epsilon(1e-4));
  CHECK(slow_bound(birkhoff_constants(4), 1e300) < 1e-299);
  CHECK(slow_bound(constants_of(SimplexFamily{2, 1, 1}), 1.0) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(slow_bound(birkhoff_constants(4), 0.0), Error);
}

TEST_CASE("fast_bound") {
  const PolytopeConstants k = constants_of(SimplexFamily{4, 1, 1});
  const double thr = fast_threshold(k);
  CHECK(thr == doctest::Approx(1.0 + std::log(4.0)));
  REQUIRE(fast_bound(k, thr));
  CHECK(*fast_bound(k, thr) == doctest::Approx(k.gap));

  const auto b = fast_bound(k, 2.0 * (1.0 + std::log(4.0)));
  REQUIRE(b);
  CHECK(*b == doctest::Approx(std::exp(-(1.0 + std::log(4.0)))));
  CHECK(*b == doctest::Approx(0.0920).epsilon(1e-3));

  CHECK_FALSE(fast_bound(k, 0.99 * thr));
  CHECK(fast_exponent(k, thr) == doctest::Approx(0.0));

  // Far beyond the threshold the log-space evaluation underflows to 0, not NaN.
  CHECK(*fast_bound(k, 1e6) == 0.0);
}

TEST_CASE("fast_bound never exceeds the gap") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const PolytopeConstants k{u(rng), u(rng), u(rng)};
    const double eta = fast_threshold(k) * (1.0 + u(rng));
    const auto b = fast_bound(k, eta);
    REQUIRE(b);
    CHECK(*b <= k.gap * (1 + 1e-15));
  }
}

TEST_CASE("face_distance_bound") {
  const PolytopeConstants k = constants_of(SimplexFamily{2, 1, 1});
  CHECK(*face_distance_bound(k, fast_threshold(k)) == doctest::Approx(2.0 * k.l1_radius));
  const auto b = face_distance_bound(k, 2.0 * (1.0 + std::log(2.0)));
  REQUIRE(b);
  CHECK(*b == doctest::Approx(2.0 * std::exp(-(1.0 + std::log(2.0)))));
  CHECK(*b == doctest::Approx(0.3679).epsilon(1e-4));
  CHECK_FALSE(face_distance_bound(k, 1.0));
}

TEST_CASE("eta_for_epsilon") {
  const PolytopeConstants k = constants_of(SimplexFamily{2, 1, 1});
  CHECK(eta_for_epsilon(k, 5.0) == doctest::Approx(fast_threshold(k)));
  CHECK(eta_for_epsilon(k, k.gap / std::exp(1.0)) == doctest::Approx(1.0 + (1.0 + std::log(2.0))));

  for (int n : {3, 10}) {
    for (double eps : {0.5, 0.01}) {
      const double expect = n * std::log(1.0 / eps) + n * (1.0 + std::log(double(n)));
      CHECK(eta_for_epsilon(birkhoff_constants(n), eps) == doctest::Approx(expect));
      CHECK(assignment_eta_for_epsilon(n, eps) == doctest::Approx(expect));
    }
  }
  CHECK(rate_constant_sup(birkhoff_constants(5)) == doctest::Approx(0.2));
}

TEST_CASE("integral_bound") {
  const PolytopeConstants k = birkhoff_constants(3);
  const double start = k.l1_radius + k.entropic_radius;
  CHECK_FALSE(integral_bound(k, start * 0.9));
  CHECK(*integral_bound(k, start) == doctest::Approx(1.0));
  // With gap 1 it coincides with the fast bound.
  CHECK(*integral_bound(k, 2 * start) == doctest::Approx(*fast_bound(k, 2 * start)));
}

TEST_CASE("simplex lower-bound constructions") {
  const SimplexFamily fam{100, 1.0, 1.0};
  CHECK(simplex_no_progress_threshold(fam, 0.5) == doctest::Approx(std::log(50.0)));
  CHECK(simplex_no_progress_threshold(fam, 0.5) == doctest::Approx(3.912).epsilon(1e-4));
  CHECK(solve_gibbs(fam.to_lp(), std::log(50.0)).primal_objective >= 0.5 - 1e-10);
  CHECK(simplex_no_progress_threshold(SimplexFamily{100, 2.0, 1.0}, 0.5) ==
        doctest::Approx(0.5 * simplex_no_progress_threshold(fam, 0.5)));
  CHECK_THROWS_AS(simplex_no_progress_threshold(fam, 1.5), Error);
  CHECK_THROWS_AS(simplex_no_progress_threshold(fam, 0.005), Error);

  const SimplexFamily ten{10, 1.0, 1.0};
  CHECK(*simplex_rate_lower_bound(ten, 1.0 + std::log(10.0)) == doctest::Approx(1.0 / 9.0));
  const double v = *simplex_rate_lower_bound(ten, 5.0);
  CHECK(v == doctest::Approx(std::exp(-5.0 + 1.0 + std::log(10.0)) / 9.0));
  CHECK(v == doctest::Approx(0.02035).epsilon(1e-3));
  CHECK_FALSE(simplex_rate_lower_bound(ten, 1.0));

  const PolytopeConstants k = constants_of(ten);
  for (double eta : {3.5, 5.0, 10.0, 40.0}) CHECK(*fast_bound(k, eta) / *simplex_rate_lower_bound(ten, eta) == doctest::Approx(9.0));
}

TEST_CASE("simplex lower bounds hold for the Gibbs solution") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::uniform_int_distribution<int> dim(2, 200);
  for (int t = 0; t < 300; ++t) {
    const SimplexFamily fam{dim(rng), u(rng), u(rng)};
    const double lo = (1.0 + std::log(double(fam.d))) / fam.alpha;
    const double eta = lo * u(rng) * 2.0;
    const auto s = solve_gibbs(fam.to_lp(), eta);
    if (const auto lb = simplex_rate_lower_bound(fam, eta)) CHECK(s.primal_objective >= *lb - 1e-10);
    const double eps = std::clamp(u(rng) / 3.0, 1.5 / fam.d, 0.99);
    if (eps * fam.d > 1.0) {
      const double thr = simplex_no_progress_threshold(fam, eps);
      const auto at = solve_gibbs(fam.to_lp(), thr);
      CHECK(at.primal_objective >= (1.0 - eps) * fam.alpha * fam.beta - 1e-10);
    }
  }
}

TEST_CASE("exponential rate statement on the simplex family") {
  const SimplexFamily fam{6, 1.5, 2.0};
  const PolytopeConstants k = constants_of(fam);
  const double M = 0.9 * rate_constant_sup(k);
  const double K = k.gap * std::exp((k.l1_radius + k.entropic_radius) / k.l1_radius);
  for (double eta = fast_threshold(k); eta < 60.0; eta += 0.5) {
    CHECK(*solve_gibbs(fam.to_lp(), eta).gap <= K * std::exp(-M * eta) + 1e-15);
  }
}

TEST_CASE("worst-case assignment cost") {
  Matrix two(2, 2);
  two << 0, 0,
         1, 0;
  CHECK(worst_case_assignment_cost(2).C == two);
  CHECK_THROWS_AS(worst_case_assignment_cost(1), Error);

  for (int n : {3, 4, 5}) {
    const Matrix C = worst_case_assignment_cost(n).C;
    CHECK(C.trace() == 0.0);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += C(i, p[i]);
      CHECK(v >= 1.0);
    }
  }
}

TEST_CASE("assignment thresholds") {
  CHECK(assignment_eta_lower_threshold(10, 0.1) == doctest::Approx(10.0 * std::log(9.0)));
  CHECK(assignment_eta_lower_threshold(10, 0.1) == doctest::Approx(21.97).epsilon(1e-4));
  CHECK(assignment_eta_lower_threshold(10, 0.4999999) == doctest::Approx(0.0).epsilon(1e-5));
  CHECK_THROWS_AS(assignment_eta_lower_threshold(10, 0.5), Error);
  CHECK_THROWS_AS(assignment_eta_lower_threshold(10, 0.0), Error);
  // The inverse form returns eps exactly at the threshold.
  CHECK(assignment_gap_lower_bound(10, assignment_eta_lower_threshold(10, 0.1)) == doctest::Approx(0.1));
}

TEST_CASE("worst-case assignment keeps its gap below the threshold") {
  const int n = 6;
  const double eps = 0.2;
  const double thr = assignment_eta_lower_threshold(n, eps);
  CHECK(thr == doctest::Approx(6.0 * std::log(4.0)));
  for (double eta : {thr, 0.5 * thr, 0.1 * thr}) {
    const auto r = solve_sinkhorn(worst_case_assignment_cost(n), eta, {1e-10, 100000, Execution::parallel});
    REQUIRE(r.converged);
    CHECK(r.solution.primal_objective >= eps - 1e-8);
    CHECK(r.solution.primal_objective >= assignment_gap_lower_bound(n, eta) - 1e-8);
  }
}

TEST_CASE("tau_bound") {
  LpInstance lp;
  lp.A = Matrix::Ones(1, 3);
  lp.b = vec({1});
  lp.c = vec({0.0, 0.01, 1.0});
  const PolytopeProfile prof = profile(lp, max_entropy_solver());
  const TauBound t = tau_bound(prof, 0.05, 100.0);
  CHECK(t.delta_tau == doctest::Approx(0.99));
  CHECK(t.threshold == doctest::Approx((1.0 + std::log(3.0)) / 0.99));
  REQUIRE(t.bound);
  CHECK(*t.bound == doctest::Approx(0.99 * std::exp(-100.0 * 0.99 + 1.0 + std::log(3.0)) + 0.05));

  // The plain bound needs eta >= 209.9 here; the relaxed one applies much earlier.
  const PolytopeConstants k = constants_of(prof);
  CHECK_FALSE(fast_bound(k, 10.0));
  for (double eta = t.threshold; eta < 200.0; eta *= 1.3) {
    const auto tb = tau_bound(prof, 0.05, eta);
    const auto s = solve(lp, eta);
    REQUIRE(tb.bound);
    CHECK(s.primal_objective - prof.optimal_value <= *tb.bound + 1e-6);
  }

  const TauBound all = tau_bound(prof, 2.0, 1.0);
  CHECK(std::isinf(all.delta_tau));
  CHECK(all.threshold == 0.0);
  CHECK(*all.bound == 2.0);
}

TEST_CASE("check_report") {
  const SimplexFamily fam{4, 1.0, 1.0};
  const PolytopeProfile prof = profile(fam.to_lp(), max_entropy_solver());
  const double thr = fast_threshold(constants_of(prof));

  const auto above = check_report(prof, solve_gibbs(fam.to_lp(), 2.0 * thr), {1e-6, 0.1, 0.5});
  CHECK(above.all_ok());
  CHECK(above.fast_ok == true);
  CHECK(above.face_ok == true);
  CHECK(above.tau_ok == true);
  REQUIRE(above.eta_for_epsilon);
  CHECK(*above.eta_for_epsilon == doctest::Approx(eta_for_epsilon(constants_of(fam), 0.1)));
  CHECK(*above.measured_gap == doctest::Approx(*solve_gibbs(fam.to_lp(), 2.0 * thr).gap));

  for (double eta : {0.01, 0.5, 2.0, 50.0}) {
    const auto r = check_report(prof, solve_gibbs(fam.to_lp(), eta));
    CHECK(r.slow_ok);
  }

  const auto below = check_report(prof, solve_gibbs(fam.to_lp(), 0.5 * thr));
  CHECK_FALSE(below.fast_bound);
  CHECK_FALSE(below.fast_ok);
  CHECK(below.all_ok());

  // A deliberately bad point is flagged.
  PenalizedSolution bad = solve_gibbs(fam.to_lp(), 2.0 * thr);
  bad.x_eta = vec({0, 1, 0, 0});
  bad.primal_objective = 1.0;
  const auto flagged = check_report(prof, bad);
  CHECK(flagged.fast_ok == false);
  CHECK(flagged.face_ok == false);
  CHECK_FALSE(flagged.all_ok());
}

TEST_CASE("check_report on the worst-case assignment below threshold") {
  const int n = 4;
  const LpInstance lp = worst_case_assignment_cost(n).to_lp();
  const PolytopeProfile prof = profile(lp, max_entropy_solver());
  const double eta = assignment_eta_lower_threshold(n, 0.2);
  const auto r = check_report(prof, solve(lp, eta));
  CHECK_FALSE(r.fast_bound);
  CHECK(r.slow_ok);
  CHECK(*r.measured_gap >= 0.2 - 1e-8);
}
