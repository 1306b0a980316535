// entropic: solve, scan and profile entropy-penalized linear programs.
//
//   entropic solve   --simplex d=4,alpha=1,beta=1 --eta 5
//   entropic scan    --assignment-worst-case n=8 --eta-grid 1:17.6:20:lin --format csv
//   entropic profile --instance lp.json
//   entropic verify

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entropic/acceptance.hpp"
#include "entropic/error.hpp"
#include "entropic/instance_io.hpp"
#include "entropic/scan.hpp"

namespace {

using namespace entropic;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct SourceFlags {
  std::string instance;
  std::string simplex;
  std::string worst_case;
  std::string random;
  std::uint64_t seed = 1;
};

struct SolverFlags {
  std::string route = "auto";
  double tol = 1e-8;
  std::string out;
};

void add_source(CLI::App* cmd, SourceFlags& src) {
  cmd->add_option("--instance", src.instance, "Instance JSON file");
  cmd->add_option("--simplex", src.simplex, "Scaled simplex family, e.g. d=4,alpha=1,beta=1");
  cmd->add_option("--assignment-worst-case", src.worst_case, "Worst-case assignment cost, e.g. n=6");
  cmd->add_option("--assignment-random", src.random, "Random integer assignment costs, e.g. n=5,K=9");
  cmd->add_option("--seed", src.seed, "Seed for --assignment-random")->capture_default_str();
}

void add_solver(CLI::App* cmd, SolverFlags& s) {
  cmd->add_option("--route", s.route, "auto | gibbs | sinkhorn | dual")->capture_default_str();
  cmd->add_option("--tol", s.tol, "Feasibility tolerance")->capture_default_str();
  cmd->add_option("--out", s.out, "Output file (default: standard output)");
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::invalid_input, "expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double kv_number(const std::map<std::string, std::string>& kv, const std::string& key,
                 std::optional<double> fallback = std::nullopt) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw Error(ErrorCode::invalid_input, "missing '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_input, "'" + key + "' is not a number");
  }
}

Problem load_source(const SourceFlags& src) {
  const int given = !src.instance.empty() + !src.simplex.empty() + !src.worst_case.empty() + !src.random.empty();
  if (given != 1) {
    throw Error(ErrorCode::invalid_input,
                "give exactly one of --instance, --simplex, --assignment-worst-case, --assignment-random");
  }
  if (!src.instance.empty()) return load_problem(src.instance);
  if (!src.simplex.empty()) {
    const auto kv = parse_kv(src.simplex);
    return make_simplex_problem(SimplexFamily{static_cast<int>(kv_number(kv, "d")), kv_number(kv, "alpha", 1.0),
                                              kv_number(kv, "beta", 1.0)});
  }
  if (!src.worst_case.empty()) {
    return make_worst_case_assignment_problem(static_cast<int>(kv_number(parse_kv(src.worst_case), "n")));
  }
  const auto kv = parse_kv(src.random);
  return make_random_assignment_problem(static_cast<int>(kv_number(kv, "n")),
                                        static_cast<int>(kv_number(kv, "K", 9.0)), src.seed);
}

std::optional<Route> route_of(const std::string& name) {
  if (name == "auto") return std::nullopt;
  const auto r = parse_route(name);
  if (!r) throw Error(ErrorCode::invalid_input, "unknown route '" + name + "'");
  return r;
}

SolveOptions solve_options(const SolverFlags& s) {
  if (!(s.tol > 0.0)) throw Error(ErrorCode::invalid_input, "--tol must be positive");
  SolveOptions o;
  o.tol = s.tol;
  o.grad_tol = std::min(o.grad_tol, s.tol);
  return o;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-penalized linear programming: solvers and convergence bounds"};
  app.require_subcommand(1);

  SourceFlags src;
  SolverFlags sf;
  double eta = 0.0;
  std::string grid = "0.1:20:25:log";
  std::string format = "csv";
  int workers = 1;
  bool with_vertices = false;
  std::uint64_t verify_seed = 42;

  auto* solve_cmd = app.add_subcommand("solve", "Solve at one eta and report bounds as JSON");
  add_source(solve_cmd, src);
  add_solver(solve_cmd, sf);
  solve_cmd->add_option("--eta", eta, "Penalization parameter")->required();

  auto* scan_cmd = app.add_subcommand("scan", "Solve on an eta grid and tabulate gap against bounds");
  add_source(scan_cmd, src);
  add_solver(scan_cmd, sf);
  scan_cmd->add_option("--eta-grid", grid, "start:stop:count:log|lin")->capture_default_str();
  scan_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  scan_cmd->add_option("--workers", workers, "Concurrent grid points")->check(CLI::PositiveNumber)->capture_default_str();

  auto* profile_cmd = app.add_subcommand("profile", "Vertices, gap, l1 radius and entropic radius");
  add_source(profile_cmd, src);
  add_solver(profile_cmd, sf);
  profile_cmd->add_flag("--vertices", with_vertices, "Include the vertex list");

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite on built-in instances");
  verify_cmd->add_option("--seed", verify_seed, "Seed for randomized criteria")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify_cmd) {
      const auto results = acceptance::run_all(verify_seed);
      acceptance::print_summary(std::cout, results);
      return acceptance::all_passed(results) ? 0 : kExitFailure;
    }

    const Problem prob = load_source(src);
    const SolveOptions opts = solve_options(sf);
    const auto route = route_of(sf.route);

    if (*solve_cmd) {
      emit(sf.out, solve_document(prob, eta, route, opts).dump(2) + "\n");
      return 0;
    }
    if (*profile_cmd) {
      nlohmann::json doc = {{"instance", prob.description},
                            {"profile", to_json(profile_problem(prob, opts), with_vertices)}};
      emit(sf.out, doc.dump(2) + "\n");
      return 0;
    }

    ScanConfig cfg;
    cfg.grid = EtaGrid::parse(grid);
    cfg.route = route;
    cfg.solve = opts;
    cfg.workers = workers;
    const PolytopeProfile prof = profile_problem(prob, opts);
    const auto rows = run_scan(prob, prof, cfg);

    std::ostringstream text;
    if (format == "csv") {
      write_csv(text, rows);
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) arr.push_back(to_json(r));
      text << nlohmann::json{{"instance", prob.description}, {"profile", to_json(prof)}, {"rows", arr}}.dump(2)
           << '\n';
    }
    emit(sf.out, text.str());

    bool failed = false;
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        std::cerr << "eta " << format_double(r.eta) << ": " << r.error << '\n';
        failed = true;
      }
    }
    return failed ? kExitFailure : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::not_converged ? kExitFailure : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
