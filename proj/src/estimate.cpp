#include <cmath>
#include <stdexcept>

#include "bilin/analysis.hpp"

namespace bilin {

namespace {

double log2_binom(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binomial outside its range");
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

// m C(ny+d-2, d-2) [width C(ny+d-1, d-1)]^(omega-1)
double echelon_cost(int m, int ny, int d, int width, double omega) {
  return std::log2(m) + log2_binom(ny + d - 2, d - 2) +
         (omega - 1) * (std::log2(width) + log2_binom(ny + d - 1, d - 1));
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::YXL: return "yxl";
    case Algorithm::YMXL: return "ymxl";
    case Algorithm::YHXLGaussian: return "yhxl-ge";
    case Algorithm::YHXLWiedemann: return "yhxl-w";
    case Algorithm::F4: return "f4";
    case Algorithm::Exhaustive: return "exhaustive";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  for (Algorithm a : {Algorithm::YXL, Algorithm::YMXL, Algorithm::YHXLGaussian, Algorithm::YHXLWiedemann,
                      Algorithm::F4, Algorithm::Exhaustive})
    if (to_string(a) == s) return a;
  throw std::invalid_argument("unknown algorithm tag '" + s + "'");
}

CostEstimate estimate(Algorithm alg, const Params& p, const EstimateOptions& o) {
  if (o.omega < 2 || o.omega > 3) throw std::invalid_argument("omega must lie in [2, 3]");
  const int nx = p.nx, ny = p.ny, m = p.m;
  const double log2q = std::log2(static_cast<double>(p.q));
  CostEstimate c{alg, 0, p, o.a_x, o.a_y, o.omega};
  switch (alg) {
    case Algorithm::YXL:
      c.log2_mults = echelon_cost(m, ny, twit_bound(nx, ny, m), nx, o.omega);
      break;
    case Algorithm::YMXL:
      c.log2_mults = echelon_cost(m, ny, tff_formula(nx, ny, m), nx, o.omega);
      break;
    case Algorithm::YHXLGaussian:
    case Algorithm::YHXLWiedemann: {
      if (o.a_x < 0 || o.a_x > nx || o.a_y < 0 || o.a_y >= ny)
        throw std::invalid_argument("hybrid estimate needs 0 <= a_x <= n_x and 0 <= a_y < n_y");
      const int d = hxl_degree(nx, ny, m, o.a_x, o.a_y);
      const int nx2 = nx - o.a_x, ny2 = ny - o.a_y;
      const double guesses = (o.a_x + o.a_y) * log2q;
      if (alg == Algorithm::YHXLGaussian)
        c.log2_mults = guesses + echelon_cost(m, ny2, d, nx2 + 1, o.omega);
      else
        c.log2_mults = guesses + std::log2(ny2 + 1.0) + 3 * std::log2(nx2 + 1.0) +
                       2 * log2_binom(ny2 + d - 1, d - 1);
      break;
    }
    case Algorithm::F4: {
      const int d = tff_formula(nx, ny, m);
      c.log2_mults = o.omega * log2_binom(nx + ny + d, d);
      break;
    }
    case Algorithm::Exhaustive:
      c.log2_mults = nx * log2q + std::log2(m) + (o.omega - 1) * std::log2(ny);
      break;
  }
  return c;
}

HybridChoice optimal_hybrid(const Params& p, double omega) {
  constexpr double kTie = 1e-9;
  bool have = false;
  HybridChoice best;
  for (int ax = 0; ax <= p.nx; ++ax)
    for (int ay = 0; ay < p.ny; ++ay) {
      if (p.m - p.nx + ax - 1 <= 0) continue;
      for (Algorithm alg : {Algorithm::YHXLGaussian, Algorithm::YHXLWiedemann}) {
        CostEstimate c = estimate(alg, p, {ax, ay, omega});
        bool better = !have || c.log2_mults < best.cost.log2_mults - kTie;
        if (!better && std::abs(c.log2_mults - best.cost.log2_mults) <= kTie) {
          // equal cost: fewer guessed variables, then the Gaussian backend
          const int s = ax + ay, sb = best.a_x + best.a_y;
          better = s < sb || (s == sb && alg == Algorithm::YHXLGaussian &&
                              best.backend != Algorithm::YHXLGaussian);
        }
        if (better) {
          best = {ax, ay, alg, c};
          have = true;
        }
      }
    }
  if (!have) throw std::invalid_argument("no admissible hybrid parameters");
  return best;
}

}  // namespace bilin
