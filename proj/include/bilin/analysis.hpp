#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bilin/polyring.hpp"

namespace bilin {

int dreg_formula(int nx, int ny, int m);
int tff_formula(int nx, int ny, int m);
int twit_bound(int nx, int ny, int m);
int hxl_degree(int nx, int ny, int m, int a_x, int a_y);

struct DegreeProfile {
  int d_reg = 0;
  int d_ff = 0;
  std::optional<int> d_wit;  // only when n_x + n_y <= m - 2
  bool divisible = false;    // (m - n_x) | n_x (n_y - 1)
};
DegreeProfile degree_profile(int nx, int ny, int m);

// Single rank check of the whole homogeneous matrix at the regularity degree.
bool is_y_semiregular(const BilinearSequence& Bh);
// Same verdict from the individual degree parts.
bool is_y_semiregular_by_parts(const BilinearSequence& Bh);
bool semiregularity_trial(const Params& p, Rng& rng);

std::optional<int> empirical_first_fall(const BilinearSequence& B, int d_max);
std::optional<int> empirical_dreg(const BilinearSequence& Bh, int d_max);

// rows: 0-based indices, exactly n_x + 1 of them.
YPolyVector cramer_syzygy(const BilinearSequence& Bh, const std::vector<int>& rows);

enum class Algorithm { YXL, YMXL, YHXLGaussian, YHXLWiedemann, F4, Exhaustive };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct EstimateOptions {
  int a_x = 0;
  int a_y = 0;
  double omega = 2.8;
};

struct CostEstimate {
  Algorithm algorithm;
  double log2_mults = 0;
  Params params;
  int a_x = 0;
  int a_y = 0;
  double omega = 2.8;
};

CostEstimate estimate(Algorithm alg, const Params& p, const EstimateOptions& opts = {});

struct HybridChoice {
  int a_x = 0;
  int a_y = 0;
  Algorithm backend = Algorithm::YHXLGaussian;
  CostEstimate cost;
};
HybridChoice optimal_hybrid(const Params& p, double omega = 2.8);

}  // namespace bilin
