#include "entropic/scan.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "entropic/error.hpp"

namespace entropic {

using nlohmann::json;

EtaGrid EtaGrid::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw Error(ErrorCode::invalid_input, "eta grid must be start:stop:count:log|lin");
  EtaGrid g;
  try {
    std::size_t used = 0;
    g.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    g.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_input, "eta grid has a malformed number: " + std::string(text));
  }
  if (parts[3] == "log") {
    g.log_spacing = true;
  } else if (parts[3] == "lin") {
    g.log_spacing = false;
  } else {
    throw Error(ErrorCode::invalid_input, "eta grid spacing must be log or lin");
  }
  if (g.count < 1) throw Error(ErrorCode::invalid_input, "eta grid count must be >= 1");
  if (!(g.start > 0.0) || !(g.stop > 0.0)) throw Error(ErrorCode::invalid_input, "eta grid bounds must be positive");
  if (g.start > g.stop) throw Error(ErrorCode::invalid_input, "eta grid start exceeds stop");
  return g;
}

std::vector<double> EtaGrid::points() const {
  std::vector<double> pts(count);
  if (count == 1) {
    pts[0] = start;
    return pts;
  }
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / (count - 1);
    pts[k] = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                         : start + t * (stop - start);
  }
  pts.front() = start;
  pts.back() = stop;
  return pts;
}

std::optional<double> family_lower_bound(const Problem& prob, double eta) {
  switch (prob.family) {
    case Family::simplex:
      return simplex_rate_lower_bound(*prob.simplex, eta);
    case Family::assignment_worst_case:
      return assignment_gap_lower_bound(prob.assignment->size(), eta);
    default:
      return std::nullopt;
  }
}

PolytopeProfile profile_problem(const Problem& prob, const SolveOptions& opts, const EnumerationOptions& enum_opts) {
  validate(prob.lp, enum_opts);
  return profile(prob.lp, max_entropy_solver(opts), enum_opts);
}

ScanRow evaluate_point(const Problem& prob, const PolytopeProfile& prof, double eta, std::optional<Route> route,
                       const SolveOptions& opts) {
  ScanRow row;
  row.eta = eta;
  row.route = route.value_or(select_route(prob.lp));
  try {
    const PenalizedSolution sol = solve(prob.lp, eta, route, opts);
    const BoundReport rep = check_report(prof, sol);
    row.objective = sol.primal_objective;
    row.gap = rep.measured_gap;
    row.slow_bound = rep.slow_bound;
    row.fast_bound = rep.fast_bound;
    row.face_dist = rep.measured_face_distance;
    row.face_bound = rep.face_distance_bound;
    row.lower_bound = family_lower_bound(prob, eta);
    row.iters = sol.iterations;
    row.route = sol.route;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<ScanRow> run_scan(const Problem& prob, const PolytopeProfile& prof, const ScanConfig& cfg) {
  const std::vector<double> etas = cfg.grid.points();
  std::vector<ScanRow> rows(etas.size());
  const int n = static_cast<int>(etas.size());
  SolveOptions inner = cfg.solve;
  // Parallelism is across grid points; keep each solve's kernels serial.
  if (cfg.workers > 1) inner.exec = Execution::serial;
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers > 0 ? cfg.workers : 1)
  for (int k = 0; k < n; ++k) rows[k] = evaluate_point(prob, prof, etas[k], cfg.route, inner);
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Guard against locales with a ',' decimal separator.
  for (char* p = buf; *p; ++p) {
    if (*p == ',') *p = '.';
  }
  return buf;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.eta) << ',' << cell(r.objective) << ',' << cell(r.gap) << ',' << cell(r.slow_bound) << ','
        << cell(r.fast_bound) << ',' << cell(r.face_dist) << ',' << cell(r.face_bound) << ','
        << cell(r.lower_bound) << ',' << (r.error.empty() ? std::to_string(r.iters) : std::string()) << ','
        << to_string(r.route) << '\n';
  }
}

json to_json(const ScanRow& r) {
  json j = {{"eta", r.eta},
            {"objective", opt(r.objective)},
            {"gap", opt(r.gap)},
            {"slow_bound", opt(r.slow_bound)},
            {"fast_bound", opt(r.fast_bound)},
            {"face_dist", opt(r.face_dist)},
            {"face_bound", opt(r.face_bound)},
            {"lower_bound", opt(r.lower_bound)},
            {"iters", r.iters},
            {"route", to_string(r.route)}};
  j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
  return j;
}

json solve_document(const Problem& prob, double eta, std::optional<Route> route, const SolveOptions& opts) {
  const PolytopeProfile prof = profile_problem(prob, opts);
  PenalizedSolution sol = solve(prob.lp, eta, route, opts);
  attach_gap(sol, prof.optimal_value);
  const BoundReport rep = check_report(prof, sol);

  json doc = {{"instance", prob.description},
              {"solution", to_json(sol)},
              {"profile", to_json(prof)},
              {"bounds", to_json(rep)}};
  if (prob.family == Family::simplex) {
    const SimplexFamily& fam = *prob.simplex;
    doc["lower_bound"] = {{"kind", "simplex_rate"}, {"value", opt(simplex_rate_lower_bound(fam, eta))},
                          {"applies_from_eta", (1.0 + std::log(static_cast<double>(fam.d))) / fam.alpha}};
  } else if (prob.family == Family::assignment_worst_case) {
    const int n = prob.assignment->size();
    const double eps = assignment_gap_lower_bound(n, eta);
    doc["lower_bound"] = {{"kind", "assignment_worst_case"},
                          {"value", eps},
                          {"epsilon", eps},
                          {"eta_threshold", assignment_eta_lower_threshold(n, eps)},
                          {"eta_at_or_below_threshold", eta <= assignment_eta_lower_threshold(n, eps) * (1 + 1e-12)}};
  }
  return doc;
}

}  // namespace entropic
