#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entropic/bounds.hpp"
#include "entropic/instance_io.hpp"

namespace entropic {

struct EtaGrid {
  double start = 1.0;
  double stop = 1.0;
  int count = 1;
  bool log_spacing = true;

  /// "start:stop:count:log|lin"
  static EtaGrid parse(std::string_view text);
  std::vector<double> points() const;
};

struct ScanConfig {
  EtaGrid grid;
  std::optional<Route> route;  // nullopt selects automatically
  SolveOptions solve;
  int workers = 1;
};

/// One grid point. Empty optionals render as empty CSV cells.
struct ScanRow {
  double eta = 0.0;
  std::optional<double> objective;
  std::optional<double> gap;
  std::optional<double> slow_bound;
  std::optional<double> fast_bound;
  std::optional<double> face_dist;
  std::optional<double> face_bound;
  std::optional<double> lower_bound;
  int iters = 0;
  Route route = Route::dual_ascent;
  std::string error;
};

inline constexpr std::string_view kCsvHeader =
    "eta,objective,gap,slow_bound,fast_bound,face_dist,face_bound,lower_bound,iters,route";

/// Family-specific lower bound on the gap at eta, when one applies.
std::optional<double> family_lower_bound(const Problem& prob, double eta);

PolytopeProfile profile_problem(const Problem& prob, const SolveOptions& opts = {},
                                const EnumerationOptions& enum_opts = {});

ScanRow evaluate_point(const Problem& prob, const PolytopeProfile& prof, double eta,
                       std::optional<Route> route, const SolveOptions& opts);

/// Rows ordered by eta; grid points run concurrently on `workers` threads.
std::vector<ScanRow> run_scan(const Problem& prob, const PolytopeProfile& prof, const ScanConfig& cfg);

/// 17 significant digits, '.' separator, independent of locale.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows);
nlohmann::json to_json(const ScanRow& row);

/// Solution, profile and bound report for one eta, as printed by `solve`.
nlohmann::json solve_document(const Problem& prob, double eta, std::optional<Route> route,
                              const SolveOptions& opts = {});

}  // namespace entropic
