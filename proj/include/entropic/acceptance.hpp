#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "entropic/model.hpp"

namespace entropic::acceptance {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;   // deterministic: no timings
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 = no limit
};

/// Bounded LP with a strictly positive feasible point and small integer
/// data: n in [3, max_vars], m in [1, min(max_rows, n-1)], first row of A
/// strictly positive, b = A x0 for an integer x0 >= 1, c integer in [0, 5].
/// Not validated; callers resample on failure.
LpInstance random_bounded_lp(std::mt19937_64& rng, int max_vars = 10, int max_rows = 5);

/// Exact assignment optimum by enumerating all n! permutations.
double brute_force_assignment_optimum(const Matrix& C);

/// Runs every criterion in order A1..A11.
std::vector<CriterionResult> run_all(std::uint64_t seed = 42);

/// One line per criterion plus a total; byte-identical across runs.
void print_summary(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace entropic::acceptance
