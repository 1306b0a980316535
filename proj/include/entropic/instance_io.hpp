#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "entropic/bounds.hpp"
#include "entropic/model.hpp"
#include "entropic/solver.hpp"

namespace entropic {

enum class Family { general, simplex, assignment, assignment_worst_case };

/// An instance together with the construction it came from, so that the
/// family-specific lower bounds can be evaluated.
struct Problem {
  LpInstance lp;
  Family family = Family::general;
  std::optional<SimplexFamily> simplex;
  std::optional<AssignmentInstance> assignment;
  std::string description;
};

Problem make_simplex_problem(const SimplexFamily& fam);
Problem make_assignment_problem(AssignmentInstance inst);
Problem make_worst_case_assignment_problem(int n);
/// Integer costs drawn uniformly from {0, ..., max_cost}.
Problem make_random_assignment_problem(int n, int max_cost, std::uint64_t seed);

/// Instance documents:
///   {"A": [[...], ...], "b": [...], "c": [...], "integral_cost": bool}
///   {"simplex": {"d": int, "alpha": num, "beta": num}}
///   {"assignment": {"C": [[...], ...]}}
/// A general document whose constraints match a simplex or Birkhoff layout
/// is still tagged general. Throws Error(invalid_input) on schema errors.
Problem parse_problem(const nlohmann::json& doc);
Problem load_problem(const std::string& path);

nlohmann::json to_json(const LpInstance& lp);
nlohmann::json to_json(const PenalizedSolution& sol);
nlohmann::json to_json(const PolytopeProfile& prof, bool include_vertices = false);
nlohmann::json to_json(const BoundReport& rep);

}  // namespace entropic
