#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Core>

#include "bilin/harness.hpp"

namespace bilin {

namespace {

struct GridSpan {
  int ny;
  int m_first;
  int m_last;
};

std::vector<Cell> grid_of(int nx, const std::vector<GridSpan>& spans, std::uint32_t q) {
  std::vector<Cell> cells;
  for (const auto& s : spans)
    for (int m = s.m_first; m <= s.m_last; ++m) cells.push_back({nx, s.ny, m, q});
  return cells;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string alg_letter(Algorithm a) { return a == Algorithm::YHXLWiedemann ? "W" : "S"; }

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Table1: return "table1";
    case ExperimentKind::Table2: return "table2";
    case ExperimentKind::Table3: return "table3";
    case ExperimentKind::Table4: return "table4";
    case ExperimentKind::Custom: return "custom";
  }
  return "custom";
}

ExperimentKind experiment_from_string(const std::string& s) {
  for (auto k : {ExperimentKind::Table1, ExperimentKind::Table2, ExperimentKind::Table3, ExperimentKind::Table4,
                 ExperimentKind::Custom})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown experiment '" + s + "'");
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::Semiregular: return "semiregular";
    case Statistic::FirstFall: return "d_y_ff";
    case Statistic::XlSol: return "yxl_sol";
    case Statistic::MxlSol: return "ymxl_sol";
  }
  return "";
}

ExperimentConfig ExperimentConfig::table1(std::uint32_t q) {
  ExperimentConfig c;
  c.kind = ExperimentKind::Table1;
  c.grid = grid_of(4, {{4, 8, 16}, {5, 9, 18}, {6, 10, 20}, {7, 11, 22}, {8, 12, 23}}, q);
  c.statistics = {Statistic::Semiregular};
  c.trials = 100;
  return c;
}

ExperimentConfig ExperimentConfig::table2(std::uint32_t q) {
  ExperimentConfig c;
  c.kind = ExperimentKind::Table2;
  c.grid = grid_of(4, {{4, 10, 16}, {5, 11, 18}, {6, 12, 20}}, q);
  c.statistics = {Statistic::FirstFall, Statistic::XlSol, Statistic::MxlSol};
  c.trials = 50;
  return c;
}

ExperimentConfig ExperimentConfig::table3(std::uint32_t q) {
  ExperimentConfig c = table2(q);
  c.kind = ExperimentKind::Table3;
  c.grid = grid_of(4, {{7, 13, 22}, {8, 14, 24}}, q);
  return c;
}

ExperimentConfig ExperimentConfig::table4() {
  ExperimentConfig c;
  c.kind = ExperimentKind::Table4;
  for (std::uint32_t q : {5u, 13u, 31u}) {
    for (int m = 42; m <= 62; m += 4) c.grid.push_back({20, 20, m, q});
    for (int m = 52; m <= 72; m += 4) c.grid.push_back({20, 30, m, q});
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("experiment grid is empty");
  if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
  if (kind != ExperimentKind::Table4 && statistics.empty())
    throw std::invalid_argument("experiment requests no statistic");
  if (d_max < 2) throw std::invalid_argument("experiment degree bound must be at least 2");
  for (const auto& c : grid) {
    Params{c.nx, c.ny, c.m, c.q}.validate();
    if (!is_prime(c.q)) throw std::invalid_argument("experiment field size is not prime");
    if (c.m <= c.nx) throw std::invalid_argument("experiment cell needs m > n_x");
  }
}

std::pair<std::optional<int>, double> Histogram::mode() const {
  if (samples.empty()) return {std::nullopt, 0.0};
  std::map<int, int> counts;
  int missing = 0;
  for (const auto& s : samples) {
    if (s) ++counts[*s];
    else ++missing;
  }
  std::optional<int> best;
  int best_count = 0;
  for (const auto& [v, c] : counts)
    if (c > best_count) best = v, best_count = c;
  if (missing > best_count) best = std::nullopt, best_count = missing;
  return {best, static_cast<double>(best_count) / static_cast<double>(samples.size())};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BILIN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BilinearSequence planted_instance(const Params& p, Rng& rng, Solution* planted) {
  BilinearSequence B = random_sequence(p, false, rng);
  ElemVector u = random_vector(B.field(), p.nx, rng);
  ElemVector v = random_vector(B.field(), p.ny, rng);
  B = plant_solution(B, u, v);
  if (planted) *planted = {u, v};
  return B;
}

namespace {

std::vector<TableRow> table4_rows(const ExperimentConfig& cfg) {
  std::vector<TableRow> rows;
  const std::string tag = to_string(cfg.kind);
  for (const auto& c : cfg.grid) {
    const Params p{c.nx, c.ny, c.m, c.q};
    TableRow mxl{tag, c, "MXL", std::nullopt, 0, 0, estimate(Algorithm::YMXL, p, {0, 0, cfg.omega}).log2_mults, ""};
    const HybridChoice h = optimal_hybrid(p, cfg.omega);
    TableRow hxl{tag, c, "HXL", std::nullopt, 0, 0, h.cost.log2_mults,
                 "a_x=" + std::to_string(h.a_x) + " a_y=" + std::to_string(h.a_y) + " alg=" + alg_letter(h.backend)};
    rows.push_back(std::move(mxl));
    rows.push_back(std::move(hxl));
  }
  return rows;
}

// One slot per requested statistic.
using TrialOutcome = std::vector<std::optional<int>>;

TrialOutcome run_trial(const Cell& c, const std::vector<Statistic>& stats, int d_max, std::uint64_t seed) {
  Rng rng(seed);
  const Params p{c.nx, c.ny, c.m, c.q};
  TrialOutcome out(stats.size());
  std::optional<BilinearSequence> planted;
  auto instance = [&]() -> const BilinearSequence& {
    if (!planted) planted = planted_instance(p, rng);
    return *planted;
  };
  for (std::size_t i = 0; i < stats.size(); ++i) {
    switch (stats[i]) {
      case Statistic::Semiregular:
        out[i] = semiregularity_trial(p, rng) ? 1 : 0;
        break;
      case Statistic::FirstFall:
        out[i] = empirical_first_fall(instance(), d_max);
        break;
      case Statistic::XlSol:
        out[i] = y_xl_search(instance(), d_max).solving_degree;
        break;
      case Statistic::MxlSol:
        out[i] = y_mxl(instance(), d_max).solving_degree;
        break;
    }
  }
  return out;
}

}  // namespace

std::vector<TableRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.kind == ExperimentKind::Table4) return table4_rows(cfg);

  const std::size_t cells = cfg.grid.size(), trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cells * trials;
  std::vector<TrialOutcome> outcomes(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t job; (job = next.fetch_add(1)) < total;) {
      try {
        outcomes[job] = run_trial(cfg.grid[job / trials], cfg.statistics, cfg.d_max, cfg.base_seed + job);
      } catch (...) {
        std::lock_guard<std::mutex> g(failure_lock);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const int n_threads = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(total));
  if (n_threads <= 1) {
    worker();
  } else {
    Eigen::initParallel();
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TableRow> rows;
  const std::string tag = to_string(cfg.kind);
  for (std::size_t ci = 0; ci < cells; ++ci) {
    const Cell& c = cfg.grid[ci];
    const DegreeProfile prof = degree_profile(c.nx, c.ny, c.m);
    const bool solving = std::any_of(cfg.statistics.begin(), cfg.statistics.end(),
                                     [](Statistic s) { return s != Statistic::Semiregular; });
    if (std::count(cfg.statistics.begin(), cfg.statistics.end(), Statistic::Semiregular))
      rows.push_back({tag, c, "d_reg", std::nullopt, 0, 0, static_cast<double>(prof.d_reg),
                      prof.divisible ? "divisible" : ""});
    if (solving) {
      rows.push_back({tag, c, "T_ff", std::nullopt, 0, 0, static_cast<double>(prof.d_ff), ""});
      if (prof.d_wit) rows.push_back({tag, c, "T_wit", std::nullopt, 0, 0, static_cast<double>(*prof.d_wit), ""});
    }
    for (std::size_t si = 0; si < cfg.statistics.size(); ++si) {
      Histogram h;
      for (std::size_t t = 0; t < trials; ++t) h.samples.push_back(outcomes[ci * trials + t][si]);
      const auto [mode, freq] = h.mode();
      TableRow row{tag, c, to_string(cfg.statistics[si]), std::nullopt, freq, cfg.trials, std::nullopt, ""};
      if (mode) row.modal = *mode;
      else row.note = "no value up to degree " + std::to_string(cfg.d_max);
      if (cfg.statistics[si] == Statistic::Semiregular) {
        const auto hits = std::count(h.samples.begin(), h.samples.end(), std::optional<int>(1));
        row.value = static_cast<double>(hits) / static_cast<double>(trials);
      }
      rows.push_back(std::move(row));
    }
    if (solving) {
      rows.push_back({tag, c, "F4_ff", std::nullopt, 0, 0, std::nullopt, "absent"});
      rows.push_back({tag, c, "F4_sol", std::nullopt, 0, 0, std::nullopt, "absent"});
    }
  }
  return rows;
}

std::string csv_header() { return "experiment,q,nx,ny,m,statistic,modal,frequency,trials,value,note"; }

std::string to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.cell.q << ',' << r.cell.nx << ',' << r.cell.ny << ',' << r.cell.m << ','
        << r.statistic << ',';
    if (r.modal) out << static_cast<long long>(std::llround(*r.modal));
    out << ',';
    if (r.trials > 0) out << format_number(r.frequency);
    out << ',' << r.trials << ',';
    if (r.value) out << format_number(*r.value);
    out << ',' << r.note << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const std::vector<TableRow>& rows) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j = {{"experiment", r.experiment}, {"q", r.cell.q},          {"nx", r.cell.nx},
                        {"ny", r.cell.ny},            {"m", r.cell.m},          {"statistic", r.statistic},
                        {"trials", r.trials},         {"note", r.note}};
    j["modal"] = r.modal ? nlohmann::json(std::llround(*r.modal)) : nlohmann::json(nullptr);
    j["frequency"] = r.trials > 0 ? nlohmann::json(r.frequency) : nlohmann::json(nullptr);
    j["value"] = r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr);
    a.push_back(std::move(j));
  }
  return a;
}

}  // namespace bilin
