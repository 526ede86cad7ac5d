#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilin/analysis.hpp"
#include "bilin/harness.hpp"
#include "bilin/solvers.hpp"

using namespace bilin;
using nlohmann::json;

namespace {

constexpr int kExitNoSolution = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::uint32_t q = 13;
  std::optional<int> nx, ny, m;
  int threads = 0;
  std::string format = "json";
};

Params cell_params(const Globals& g) {
  if (!g.nx || !g.ny || !g.m) throw CLI::ValidationError("--nx, --ny and --m are required here");
  Params p{*g.nx, *g.ny, *g.m, g.q};
  p.validate();
  return p;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

BilinearSequence read_instance(const std::string& path) {
  if (path != "-") return load_instance(path);
  json j;
  try {
    std::cin >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
  }
  return sequence_from_json(j);
}

std::string emit_rows(const std::vector<TableRow>& rows, const std::string& format) {
  return format == "csv" ? to_csv(rows) : to_json(rows).dump(2) + "\n";
}

Backend parse_backend(const std::string& s) {
  if (s == "ge" || s == "gaussian") return Backend::Gaussian;
  if (s == "w" || s == "wiedemann") return Backend::Wiedemann;
  throw CLI::ValidationError("unknown backend '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and experiment runner for bilinear systems over prime fields"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base random seed");
  app.add_option("--q", g.q, "Field size (prime)");
  app.add_option("--nx", g.nx, "Number of x variables");
  app.add_option("--ny", g.ny, "Number of y variables");
  app.add_option("--m", g.m, "Number of polynomials");
  app.add_option("--threads", g.threads, "Worker threads (0: BILIN_THREADS or all cores)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string out_path;

  auto* gen = app.add_subcommand("gen", "Write a random instance as JSON");
  bool planted = false;
  bool homogeneous = false;
  gen->add_flag("--planted", planted, "Adjust constants so a random point is a solution");
  gen->add_flag("--homogeneous", homogeneous, "Quadratic part only");
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Solve an instance and print a JSON report");
  std::string instance_path = "-";
  std::string alg = "ymxl";
  std::string backend = "ge";
  std::optional<int> degree;
  int d_max = 8;
  int ax = 0, ay = 0;
  solve->add_option("instance", instance_path, "Instance JSON file ('-' for stdin)");
  solve->add_option("--alg", alg, "Algorithm")->check(CLI::IsMember({"yxl", "ymxl", "yhxl", "brute"}));
  solve->add_option("--degree", degree, "Fixed degree for yxl (default: search up to --dmax)");
  solve->add_option("--dmax", d_max, "Largest degree tried by the searches");
  solve->add_option("--ax", ax, "Guessed x variables for yhxl");
  solve->add_option("--ay", ay, "Guessed y variables for yhxl");
  solve->add_option("--backend", backend, "Consistency backend for yhxl (ge|w)");

  auto* semireg = app.add_subcommand("semireg", "Semiregularity campaign (n_x=4 grid unless a cell is given)");
  int semireg_trials = 100;
  semireg->add_option("--trials", semireg_trials, "Trials per cell");
  semireg->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* est = app.add_subcommand("estimate", "Cost estimates (n_x=20 grid unless a cell is given)");
  double omega = 2.8;
  est->add_option("--omega", omega, "Matrix multiplication exponent")->check(CLI::Range(2.0, 3.0));
  est->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* tables = app.add_subcommand("tables", "Reproduction campaigns");
  std::string which = "all";
  std::optional<int> table_trials;
  int table_dmax = 8;
  tables->add_option("--which", which, "table1|table2|table3|table4|all")
      ->check(CLI::IsMember({"table1", "table2", "table3", "table4", "all"}));
  tables->add_option("--trials", table_trials, "Trials per cell (default 100 for table1, 50 otherwise)");
  tables->add_option("--dmax", table_dmax, "Largest degree tried by the searches");
  tables->add_option("-o,--output", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const Params p = cell_params(g);
      Rng rng(g.seed);
      json j;
      if (planted) {
        if (homogeneous) throw CLI::ValidationError("--planted and --homogeneous are exclusive");
        Solution s;
        j = to_json(planted_instance(p, rng, &s));
        j["planted"] = {{"u", std::vector<Elem>(s.u.data(), s.u.data() + s.u.size())},
                        {"v", std::vector<Elem>(s.v.data(), s.v.data() + s.v.size())}};
      } else {
        j = to_json(random_sequence(p, homogeneous, rng));
      }
      write_output(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*solve) {
      const BilinearSequence B = read_instance(instance_path);
      SolveReport r;
      if (alg == "yxl") {
        r = degree ? y_xl(B, *degree) : y_xl_search(B, d_max);
      } else if (alg == "ymxl") {
        r = y_mxl(B, d_max);
      } else if (alg == "yhxl") {
        HybridConfig cfg;
        cfg.a_x = ax;
        cfg.a_y = ay;
        cfg.backend = parse_backend(backend);
        cfg.seed = g.seed;
        r = y_hxl(B, cfg);
      } else {
        const auto zeros = brute_force(B);
        r.status = zeros.empty() ? SolveStatus::NoSolution : SolveStatus::SolutionFound;
        if (!zeros.empty()) r.solution = zeros.front();
        r.notes.push_back(std::to_string(zeros.size()) + " solutions");
      }
      if (r.solution && !is_solution(B, r.solution->u, r.solution->v)) {
        r.notes.push_back("returned point failed verification and was dropped");
        r.solution.reset();
        r.status = SolveStatus::Undetermined;
      }
      std::cout << to_json(r).dump(2) << '\n';
      return r.status == SolveStatus::NoSolution ? kExitNoSolution : 0;
    }

    if (*semireg) {
      ExperimentConfig cfg = ExperimentConfig::table1(g.q);
      if (g.nx || g.ny || g.m) {
        const Params p = cell_params(g);
        cfg.grid = {{p.nx, p.ny, p.m, p.q}};
      }
      cfg.trials = semireg_trials;
      cfg.base_seed = g.seed;
      cfg.threads = g.threads;
      write_output(out_path, emit_rows(run_experiment(cfg), g.format));
      return 0;
    }

    if (*est) {
      ExperimentConfig cfg = ExperimentConfig::table4();
      if (g.nx || g.ny || g.m) {
        const Params p = cell_params(g);
        cfg.grid = {{p.nx, p.ny, p.m, p.q}};
      }
      cfg.omega = omega;
      write_output(out_path, emit_rows(run_experiment(cfg), g.format));
      return 0;
    }

    if (*tables) {
      std::vector<ExperimentConfig> runs;
      if (which == "table1" || which == "all") runs.push_back(ExperimentConfig::table1(g.q));
      if (which == "table2" || which == "all") runs.push_back(ExperimentConfig::table2(g.q));
      if (which == "table3" || which == "all") runs.push_back(ExperimentConfig::table3(g.q));
      if (which == "table4" || which == "all") runs.push_back(ExperimentConfig::table4());
      std::vector<TableRow> rows;
      for (auto& cfg : runs) {
        if (table_trials) cfg.trials = *table_trials;
        cfg.base_seed = g.seed;
        cfg.threads = g.threads;
        cfg.d_max = table_dmax;
        auto part = run_experiment(cfg);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      write_output(out_path, emit_rows(rows, g.format));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::bad_alloc&) {
    std::cerr << "out of memory\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  }
  return kExitUsage;
}
