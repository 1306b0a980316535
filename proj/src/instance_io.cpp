#include "entropic/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "entropic/error.hpp"

namespace entropic {

using nlohmann::json;

namespace {

Vector vector_from(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::invalid_input, std::string(what) + " must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::invalid_input, std::string(what) + " must contain only numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::invalid_input, std::string(what) + " must be a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from(j[i], what);
    if (static_cast<std::size_t>(row.size()) != cols) throw Error(ErrorCode::invalid_input, std::string(what) + " rows differ in length");
    M.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return M;
}

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Problem make_simplex_problem(const SimplexFamily& fam) {
  Problem p;
  p.lp = fam.to_lp();
  p.family = Family::simplex;
  p.simplex = fam;
  std::ostringstream os;
  os << "simplex d=" << fam.d << " alpha=" << fam.alpha << " beta=" << fam.beta;
  p.description = os.str();
  return p;
}

Problem make_assignment_problem(AssignmentInstance inst) {
  Problem p;
  p.lp = inst.to_lp();
  p.family = Family::assignment;
  p.description = "assignment n=" + std::to_string(inst.size());
  p.assignment = std::move(inst);
  return p;
}

Problem make_worst_case_assignment_problem(int n) {
  Problem p = make_assignment_problem(worst_case_assignment_cost(n));
  p.family = Family::assignment_worst_case;
  p.description = "assignment-worst-case n=" + std::to_string(n);
  return p;
}

Problem make_random_assignment_problem(int n, int max_cost, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::invalid_input, "assignment size must be >= 1");
  if (max_cost < 0) throw Error(ErrorCode::invalid_input, "max cost must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cost(0, max_cost);
  Matrix C(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) C(i, j) = cost(rng);
  }
  Problem p = make_assignment_problem(AssignmentInstance{C});
  p.description = "assignment-random n=" + std::to_string(n) + " K=" + std::to_string(max_cost) +
                  " seed=" + std::to_string(seed);
  return p;
}

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::invalid_input, "instance document must be a JSON object");
  try {
    if (doc.contains("simplex")) {
      const json& s = doc.at("simplex");
      SimplexFamily fam{s.at("d").get<int>(), s.at("alpha").get<double>(), s.at("beta").get<double>()};
      return make_simplex_problem(fam);
    }
    if (doc.contains("assignment")) {
      return make_assignment_problem(AssignmentInstance{matrix_from(doc.at("assignment").at("C"), "C")});
    }
    Problem p;
    p.lp.A = matrix_from(doc.at("A"), "A");
    p.lp.b = vector_from(doc.at("b"), "b");
    p.lp.c = vector_from(doc.at("c"), "c");
    p.lp.integral_cost = doc.value("integral_cost", false);
    p.description = "lp n=" + std::to_string(p.lp.num_vars()) + " m=" + std::to_string(p.lp.num_constraints());
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("instance schema: ") + e.what());
  }
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open instance file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, "cannot parse " + path + ": " + e.what());
  }
  return parse_problem(doc);
}

json to_json(const LpInstance& lp) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < lp.A.rows(); ++i) rows.push_back(vector_json(lp.A.row(i).transpose()));
  return {{"A", rows}, {"b", vector_json(lp.b)}, {"c", vector_json(lp.c)}, {"integral_cost", lp.integral_cost}};
}

json to_json(const PenalizedSolution& s) {
  return {{"eta", s.eta},
          {"route", to_string(s.route)},
          {"x_eta", vector_json(s.x_eta)},
          {"primal_objective", s.primal_objective},
          {"gap", optional_json(s.gap)},
          {"penalized_objective", s.penalized_objective},
          {"feasibility_residual", s.feasibility_residual},
          {"iterations", s.iterations}};
}

json to_json(const PolytopeProfile& p, bool include_vertices) {
  json j = {{"num_vertices", p.vertices.size()},
            {"optimal_value", p.optimal_value},
            {"optimal_vertices", p.optimal_vertices},
            {"num_suboptimal_vertices", p.suboptimal_vertices.size()},
            {"gap", p.gap},
            {"l1_radius", p.l1_radius},
            {"entropic_radius", p.entropic_radius},
            {"max_entropy_point", vector_json(p.max_entropy_point)}};
  if (include_vertices) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(vector_json(v));
    j["vertices"] = vs;
    j["vertex_values"] = p.vertex_values;
  }
  return j;
}

json to_json(const BoundReport& r) {
  json j = {{"eta", r.eta},
            {"slow_bound", r.slow_bound},
            {"fast_threshold", r.fast_threshold},
            {"fast_bound", optional_json(r.fast_bound)},
            {"face_distance_bound", optional_json(r.face_distance_bound)},
            {"rate_constant_sup", r.rate_constant_sup},
            {"measured_gap", optional_json(r.measured_gap)},
            {"measured_face_distance", optional_json(r.measured_face_distance)},
            {"slack", r.slack},
            {"slow_ok", r.slow_ok},
            {"fast_ok", r.fast_ok ? json(*r.fast_ok) : json(nullptr)},
            {"face_ok", r.face_ok ? json(*r.face_ok) : json(nullptr)},
            {"all_ok", r.all_ok()}};
  if (r.epsilon) {
    j["epsilon"] = *r.epsilon;
    j["eta_for_epsilon"] = optional_json(r.eta_for_epsilon);
  }
  if (r.tau_variant) {
    const TauBound& t = *r.tau_variant;
    j["tau_variant"] = {{"tau", t.tau},
                        {"delta_tau", std::isinf(t.delta_tau) ? json(nullptr) : json(t.delta_tau)},
                        {"threshold", t.threshold},
                        {"bound", optional_json(t.bound)},
                        {"ok", r.tau_ok ? json(*r.tau_ok) : json(nullptr)}};
  }
  return j;
}

}  // namespace entropic
