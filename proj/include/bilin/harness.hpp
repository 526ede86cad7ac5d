#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilin/analysis.hpp"
#include "bilin/solvers.hpp"

namespace bilin {

nlohmann::json to_json(const BilinearSequence& B);
BilinearSequence sequence_from_json(const nlohmann::json& j);
void save_instance(const BilinearSequence& B, const std::string& path);
BilinearSequence load_instance(const std::string& path);

nlohmann::json to_json(const SolveReport& r);

enum class ExperimentKind { Table1, Table2, Table3, Table4, Custom };
std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& s);

enum class Statistic { Semiregular, FirstFall, XlSol, MxlSol };
std::string to_string(Statistic s);

struct Cell {
  int nx = 0;
  int ny = 0;
  int m = 0;
  std::uint32_t q = 13;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Custom;
  std::vector<Cell> grid;
  std::vector<Statistic> statistics;
  int trials = 1;
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0: BILIN_THREADS or the hardware count
  int d_max = 8;
  double omega = 2.8;

  // Reference grids and default trial counts.
  static ExperimentConfig table1(std::uint32_t q = 13);
  static ExperimentConfig table2(std::uint32_t q = 13);
  static ExperimentConfig table3(std::uint32_t q = 13);
  static ExperimentConfig table4();
  void validate() const;
};

struct TableRow {
  std::string experiment;
  Cell cell;
  std::string statistic;
  std::optional<double> modal;  // none for absent columns and for "no value" modes
  double frequency = 0;
  int trials = 0;  // 0 marks formula and estimate rows
  std::optional<double> value;  // fractions and estimates
  std::string note;
};

struct Histogram {
  std::vector<std::optional<int>> samples;
  // Most frequent value, ties to the smaller one (a missing value sorts last).
  std::pair<std::optional<int>, double> mode() const;
};

std::vector<TableRow> run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::string to_csv(const std::vector<TableRow>& rows);
nlohmann::json to_json(const std::vector<TableRow>& rows);

int resolve_threads(int requested);

// One trial instance as used by the Tables 2-3 campaigns.
BilinearSequence planted_instance(const Params& p, Rng& rng, Solution* planted = nullptr);

}  // namespace bilin
