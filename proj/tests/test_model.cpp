#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "entropic/error.hpp"
#include "entropic/model.hpp"
#include "entropic/solver.hpp"

using namespace entropic;

namespace {

// Oracle: defining sum written out directly.
double entropy_oracle(std::initializer_list<double> xs) {
  double h = 0.0;
  for (double x : xs)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

LpInstance segment_lp() {
  LpInstance lp;
  lp.A = Matrix::Ones(1, 2);
  lp.b = Vector::Ones(1);
  lp.c = vec({0.0, 1.0});
  return lp;
}

std::vector<Vector> permutation_matrices(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Vector> out;
  do {
    Vector x = Vector::Zero(n * n);
    for (int i = 0; i < n; ++i) x(i * n + p[i]) = 1.0;
    out.push_back(x);
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::invalid_input;
}

}  // namespace

TEST_CASE("entropy") {
  CHECK(entropy(vec({1, 0, 0})) == 0.0);
  CHECK(entropy(Vector::Constant(4, 0.25)) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  const double h = entropy(vec({2.0 / 3.0, 1.0 / 3.0}));
  CHECK(h == doctest::Approx(entropy_oracle({2.0 / 3.0, 1.0 / 3.0})).epsilon(1e-14));
  CHECK(h == doctest::Approx(0.6365).epsilon(1e-4));

  CHECK(code_of([] { entropy(vec({0.5, -0.1})); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { entropy(vec({NAN})); }) == ErrorCode::invalid_input);
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(binary_entropy(0.1) == doctest::Approx(entropy_oracle({0.1, 0.9})).epsilon(1e-14));
  CHECK(binary_entropy(0.1) == doctest::Approx(0.3251).epsilon(1e-4));
  CHECK(code_of([] { binary_entropy(1.5); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { binary_entropy(-0.1); }) == ErrorCode::invalid_input);
}

TEST_CASE("weak convexity of entropy") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 3.0), lam(0.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int t = 0; t < 2000; ++t) {
    const int n = dim(rng);
    Vector x = Vector::NullaryExpr(n, [&] { return u(rng) < 0.5 ? 0.0 : u(rng); });
    Vector y = Vector::NullaryExpr(n, [&] { return u(rng); });
    const double l = lam(rng);
    const double lhs = entropy(l * x + (1 - l) * y);
    const double rhs = l * entropy(x) + (1 - l) * entropy(y) + std::max(x.sum(), y.sum()) * binary_entropy(l);
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("a h(l) + b l is nondecreasing on [0, b/(a+b)]") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 200; ++t) {
    const double a = u(rng), b = u(rng);
    const double end = b / (a + b);
    double prev = 0.0;
    for (int k = 1; k <= 400; ++k) {
      const double l = end * k / 400.0;
      const double f = a * binary_entropy(l) + b * l;
      CHECK(f >= prev - 1e-12);
      prev = f;
    }
  }
}

TEST_CASE("h(r)/r <= log(1/r) + 1 on (0, 1]") {
  for (int k = 1; k <= 10000; ++k) {
    const double r = k / 10000.0;
    CHECK(binary_entropy(r) / r <= std::log(1.0 / r) + 1.0 + 1e-12);
  }
}

TEST_CASE("simplex and assignment expansion") {
  const LpInstance lp = SimplexFamily{3, 2.0, 5.0}.to_lp();
  CHECK(lp.num_vars() == 3);
  CHECK(lp.num_constraints() == 1);
  CHECK(lp.c == vec({0, 2, 2}));
  CHECK(detect_simplex(lp) == 5.0);
  CHECK_FALSE(detect_birkhoff(lp));

  Matrix C(2, 2);
  C << 1, 2,
       3, 4;
  const LpInstance alp = AssignmentInstance{C}.to_lp();
  CHECK(alp.num_constraints() == 4);
  CHECK(alp.c == vec({1, 2, 3, 4}));
  CHECK(detect_birkhoff(alp) == 2);
  CHECK(as_assignment(alp).C == C);
  CHECK_FALSE(detect_simplex(alp));
  CHECK(code_of([&] { as_assignment(lp); }) == ErrorCode::invalid_input);
}

TEST_CASE("enumerate_vertices: scaled simplex") {
  const auto vs = enumerate_vertices(SimplexFamily{3, 1.0, 2.0}.to_lp());
  REQUIRE(vs.size() == 3);
  // Lexicographic order puts 2e_3 first.
  CHECK(vs[0] == vec({0, 0, 2}));
  CHECK(vs[1] == vec({0, 2, 0}));
  CHECK(vs[2] == vec({2, 0, 0}));
}

TEST_CASE("enumerate_vertices: segment") {
  const auto vs = enumerate_vertices(segment_lp());
  REQUIRE(vs.size() == 2);
  CHECK(vs[0] == vec({0, 1}));
  CHECK(vs[1] == vec({1, 0}));
}

TEST_CASE("enumerate_vertices: Birkhoff polytope matches permutations") {
  for (int n : {3, 4}) {
    Matrix C = Matrix::Random(n, n);
    EnumerationOptions opts;
    opts.max_variables = 16;
    const auto vs = enumerate_vertices(AssignmentInstance{C}.to_lp(), opts);
    const auto perms = permutation_matrices(n);
    REQUIRE(vs.size() == perms.size());
    for (std::size_t k = 0; k < vs.size(); ++k) CHECK((vs[k] - perms[k]).cwiseAbs().maxCoeff() < 1e-12);
    const auto sv = structured_vertices(AssignmentInstance{C}.to_lp());
    REQUIRE(sv.size() == perms.size());
    for (std::size_t k = 0; k < sv.size(); ++k) CHECK(sv[k] == perms[k]);
  }
  CHECK(enumerate_vertices(AssignmentInstance{Matrix::Zero(3, 3)}.to_lp()).size() == 6);
}

TEST_CASE("enumerated vertices are feasible extreme points") {
  LpInstance lp;
  lp.A.resize(2, 5);
  lp.A << 1, 1, 1, 1, 1,
          1, -1, 2, 0, 1;
  lp.b = vec({3, 2});
  lp.c = vec({1, 2, 3, 4, 5});
  const auto vs = enumerate_vertices(lp);
  REQUIRE(vs.size() >= 2);
  for (const auto& v : vs) {
    CHECK((lp.A * v - lp.b).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(v.minCoeff() >= 0.0);
  }
  // No vertex is the midpoint of two others.
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t k = j + 1; k < vs.size(); ++k)
        if (i != j && i != k) CHECK((vs[i] - 0.5 * (vs[j] + vs[k])).cwiseAbs().maxCoeff() > 1e-9);
}

TEST_CASE("enumeration errors") {
  LpInstance big;
  big.A = Matrix::Ones(1, 20);
  big.b = Vector::Ones(1);
  big.c = Vector::LinSpaced(20, 0, 19);
  CHECK(code_of([&] { enumerate_vertices(big); }) == ErrorCode::budget_exceeded);

  LpInstance empty;
  empty.A = Matrix::Ones(1, 2);
  empty.b = vec({-1});
  empty.c = vec({0, 1});
  CHECK(code_of([&] { enumerate_vertices(empty); }) == ErrorCode::infeasible);
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(segment_lp()));
  CHECK_NOTHROW(validate(SimplexFamily{5, 1.0, 1.0}.to_lp()));

  LpInstance lp = segment_lp();
  lp.c = vec({1, 1});
  CHECK(code_of([&] { validate(lp); }) == ErrorCode::constant_objective);

  lp = segment_lp();
  lp.b = vec({-1});
  CHECK(code_of([&] { validate(lp); }) == ErrorCode::infeasible);

  // x1 - x2 = 0 admits the ray (1, 1).
  lp = segment_lp();
  lp.A(0, 1) = -1;
  lp.b = vec({0});
  CHECK(code_of([&] { validate(lp); }) == ErrorCode::unbounded);

  lp = segment_lp();
  lp.c = vec({0, 1, 2});
  CHECK(code_of([&] { validate(lp); }) == ErrorCode::invalid_input);

  lp = segment_lp();
  lp.A(0, 0) = INFINITY;
  CHECK(code_of([&] { validate(lp); }) == ErrorCode::invalid_input);

  // Two copies of the same row with different right-hand sides.
  lp.A.resize(2, 2);
  lp.A << 1, 1,
          1, 1;
  lp.b = vec({1, 2});
  lp.c = vec({0, 1});
  CHECK(code_of([&] { validate(lp); }) == ErrorCode::infeasible);
}

TEST_CASE("profile of the simplex family") {
  for (int d : {2, 3, 7}) {
    for (double beta : {0.5, 1.0, 3.0}) {
      const double alpha = 1.7;
      const SimplexFamily fam{d, alpha, beta};
      const PolytopeProfile p = profile(fam.to_lp(), max_entropy_solver());
      CHECK(p.vertices.size() == static_cast<std::size_t>(d));
      CHECK(p.optimal_value == doctest::Approx(0.0));
      CHECK(p.optimal_vertices.size() == 1);
      CHECK(p.suboptimal_vertices.size() == static_cast<std::size_t>(d - 1));
      CHECK(p.gap == doctest::Approx(alpha * beta).epsilon(1e-12));
      CHECK(p.l1_radius == doctest::Approx(beta).epsilon(1e-12));
      CHECK(p.entropic_radius == doctest::Approx(beta * std::log(d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("profile of Birkhoff instances") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cost(0, 4);
  for (int n : {3, 4}) {
    Matrix C(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) C(i, j) = cost(rng);
    const LpInstance lp = AssignmentInstance{C}.to_lp();
    const PolytopeProfile p = profile(lp, max_entropy_solver());
    CHECK(p.l1_radius == doctest::Approx(n).epsilon(1e-12));
    CHECK(p.entropic_radius == doctest::Approx(n * std::log(n)).epsilon(1e-9));
    CHECK(p.gap >= 1.0 - 1e-9);
    CHECK(p.max_entropy_point.isApproxToConstant(1.0 / n, 1e-9));
  }
}

TEST_CASE("profile invariants and R_H consistency") {
  LpInstance lp;
  lp.A.resize(2, 4);
  lp.A << 1, 1, 1, 0,
          0, 0, 1, 1;
  lp.b = vec({1, 1});
  lp.c = vec({1, 1, 3, 0});
  const PolytopeProfile p = profile(lp, max_entropy_solver());
  const std::size_t nv = p.vertices.size();
  CHECK(p.optimal_vertices.size() + p.suboptimal_vertices.size() == nv);
  CHECK(!p.optimal_vertices.empty());
  CHECK(p.gap > 0.0);
  double hmin = INFINITY, hmax = -INFINITY, gap = INFINITY, r1 = 0.0;
  for (std::size_t k = 0; k < nv; ++k) {
    const double h = entropy(p.vertices[k]);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
    r1 = std::max(r1, p.vertices[k].lpNorm<1>());
    const double val = lp.objective(p.vertices[k]);
    if (val > p.optimal_value + 1e-9) gap = std::min(gap, val - p.optimal_value);
  }
  CHECK(p.gap == doctest::Approx(gap));
  CHECK(p.l1_radius == doctest::Approx(r1));
  // The max-entropy point dominates every vertex.
  CHECK(entropy(p.max_entropy_point) >= hmax - 1e-12);
  CHECK(p.entropic_radius == doctest::Approx(entropy(p.max_entropy_point) - hmin).epsilon(1e-12));
  CHECK(p.entropic_radius >= 0.0);
}

TEST_CASE("profile rejects an objective constant on every vertex") {
  LpInstance lp = segment_lp();
  std::vector<Vector> vs{vec({1, 0}), vec({0, 1})};
  lp.c = vec({2, 2});
  CHECK(code_of([&] { profile(lp, vs, max_entropy_solver()); }) == ErrorCode::constant_objective);
}

TEST_CASE("tau_gap") {
  LpInstance lp;
  lp.A = Matrix::Ones(1, 3);
  lp.b = Vector::Ones(1);
  lp.c = vec({0.0, 0.01, 1.0});
  const PolytopeProfile p = profile(lp, max_entropy_solver());
  CHECK(p.gap == doctest::Approx(0.01));

  const TauGap t = tau_gap(p, 0.05);
  CHECK(t.delta_tau == doctest::Approx(0.99));
  CHECK(t.optimal_set.size() == 2);

  // Below the gap nothing changes.
  const TauGap small = tau_gap(p, 0.005);
  CHECK(small.optimal_set.size() == 1);
  CHECK(small.delta_tau >= p.gap - 1e-15);

  CHECK(std::isinf(tau_gap(p, 1.0).delta_tau));
  CHECK(code_of([&] { tau_gap(p, 0.0); }) == ErrorCode::invalid_input);
}

TEST_CASE("tau_gap on the simplex family") {
  const SimplexFamily fam{4, 2.0, 1.5};
  const PolytopeProfile p = profile(fam.to_lp(), max_entropy_solver());
  const TauGap t = tau_gap(p, fam.alpha * fam.beta);
  CHECK(std::isinf(t.delta_tau));
  CHECK(t.optimal_set.size() == 4);
}
