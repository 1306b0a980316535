// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <iostream>

#include "entropic/acceptance.hpp"

int main() {
  const auto results = entropic::acceptance::run_all();
  entropic::acceptance::print_summary(std::cout, results);
  for (const auto& r : results) std::fprintf(stderr, "%s %.3f s\n", r.id.c_str(), r.seconds);
  return entropic::acceptance::all_passed(results) ? 0 : 1;
}
