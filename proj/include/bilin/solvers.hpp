#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilin/linalg.hpp"
#include "bilin/polyring.hpp"

namespace bilin {

enum class SolveStatus { SolutionFound, NoSolution, Undetermined };
enum class Backend { Gaussian, Wiedemann };

std::string to_string(SolveStatus s);
std::string to_string(Backend b);

struct Solution {
  ElemVector u;
  ElemVector v;
};

// sum x_i * x[i] + sum y_j * y[j] + constant
struct LinearPoly {
  ElemVector x;
  ElemVector y;
  Elem constant = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Undetermined;
  std::optional<Solution> solution;
  std::optional<int> solving_degree;
  std::map<int, Index> per_degree_ranks;
  std::vector<LinearPoly> linear_polys;
  std::vector<int> mutant_count;  // new mutants per inner round
  std::uint64_t guesses_tried = 0;
  std::optional<std::uint64_t> seed;
  double wall_seconds = 0;
  std::vector<std::string> notes;
};

struct HybridConfig {
  int a_x = 0;
  int a_y = 0;
  Backend backend = Backend::Gaussian;
  bool lexicographic = true;
  std::uint64_t seed = 0;
  int wiedemann_trials = 0;  // 0: enough for a 2^-20 failure bound
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SolveReport y_xl(const BilinearSequence& B, int d);
// Degree T_wit(n_x, n_y, m).
SolveReport y_xl(const BilinearSequence& B);
// Raises the degree from 2 until a degree <= 1 row appears or d_max is passed.
SolveReport y_xl_search(const BilinearSequence& B, int d_max);
SolveReport y_mxl(const BilinearSequence& B, int d_max);
SolveReport y_hxl(const BilinearSequence& B, const HybridConfig& cfg);

// True iff the constant 1 lies in J_{y,<=d}(B).
bool witness_consistency_test(const BilinearSequence& B, int d, Backend backend = Backend::Gaussian,
                              std::uint64_t seed = 0);

std::optional<Solution> extract_solution(const BilinearSequence& B,
                                         const std::vector<LinearPoly>& linear_polys, int degree = 3,
                                         std::uint64_t node_budget = 4096);

// Every zero in lexicographic order of (u, v); throws BudgetExceeded past q^(n_x+n_y) > budget.
std::vector<Solution> brute_force(const BilinearSequence& B, std::uint64_t budget = std::uint64_t{1} << 24);

}  // namespace bilin
