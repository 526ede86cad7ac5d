#include <algorithm>
#include <stdexcept>

#include "bilin/analysis.hpp"
#include "bilin/linalg.hpp"
#include "bilin/macaulay.hpp"

namespace bilin {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

Index rank_of(const YMacaulayMatrix& M) { return rank(M.field, M.entries); }

YPoly det(const FieldCtx& F, const std::vector<std::vector<YPoly>>& M) {
  const std::size_t n = M.size();
  if (n == 0) return YPoly{};
  if (n == 1) return M[0][0];
  YPoly total;
  for (std::size_t c = 0; c < n; ++c) {
    if (M[0][c].empty()) continue;
    std::vector<std::vector<YPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<YPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(M[r][k]);
      minor.push_back(std::move(row));
    }
    YPoly term = multiply(M[0][c], det(F, minor), F);
    add_scaled(total, term, c % 2 == 0 ? 1 : F.neg(1), F);
  }
  return total;
}

}  // namespace

int dreg_formula(int nx, int ny, int m) {
  require(m > nx, "dreg_formula needs m > n_x");
  return static_cast<int>(ceil_div(static_cast<long long>(nx) * (ny - 1), m - nx)) + 1;
}

int tff_formula(int nx, int ny, int m) {
  require(m > nx, "tff_formula needs m > n_x");
  return static_cast<int>(static_cast<long long>(nx) * (ny - 1) / (m - nx)) + 2;
}

int twit_bound(int nx, int ny, int m) {
  require(nx + ny <= m - 2, "twit_bound needs n_x + n_y <= m - 2");
  return static_cast<int>(ceil_div(static_cast<long long>(ny) * (nx + 1), m - nx - 1)) + 1;
}

int hxl_degree(int nx, int ny, int m, int a_x, int a_y) {
  require(a_x >= 0 && a_x <= nx && a_y >= 0 && a_y <= ny, "hxl_degree: guess counts out of range");
  const long long denom = static_cast<long long>(m) - nx + a_x - 1;
  require(denom > 0, "hxl_degree needs m - n_x + a_x - 1 > 0");
  return static_cast<int>(ceil_div(static_cast<long long>(ny - a_y) * (nx - a_x + 1), denom)) + 1;
}

DegreeProfile degree_profile(int nx, int ny, int m) {
  DegreeProfile p;
  p.d_reg = dreg_formula(nx, ny, m);
  p.d_ff = tff_formula(nx, ny, m);
  if (nx + ny <= m - 2) p.d_wit = twit_bound(nx, ny, m);
  p.divisible = (static_cast<long long>(nx) * (ny - 1)) % (m - nx) == 0;
  return p;
}

bool is_y_semiregular(const BilinearSequence& Bh) {
  require(Bh.is_homogeneous(), "is_y_semiregular needs a homogeneous sequence");
  const int nx = Bh.nx(), ny = Bh.ny(), m = Bh.m();
  require(nx + ny <= m, "is_y_semiregular needs n_x + n_y <= m");
  const int d = dreg_formula(nx, ny, m);
  const std::uint64_t target = m * binomial(ny + d - 3, d - 3) + nx * binomial(ny + d - 2, d - 1);
  YMacaulayMatrix M = build_y_macaulay(Bh, d, ColumnLayout::Homogeneous);
  return static_cast<std::uint64_t>(rank_of(M)) == target;
}

bool is_y_semiregular_by_parts(const BilinearSequence& Bh) {
  require(Bh.is_homogeneous(), "is_y_semiregular needs a homogeneous sequence");
  const int nx = Bh.nx(), ny = Bh.ny(), m = Bh.m();
  const int d = dreg_formula(nx, ny, m);
  for (int j = 2; j < d; ++j)
    if (static_cast<std::uint64_t>(rank_of(degree_part(Bh, j))) != m * binomial(ny + j - 3, j - 2))
      return false;
  return static_cast<std::uint64_t>(rank_of(degree_part(Bh, d))) == nx * binomial(ny + d - 2, d - 1);
}

bool semiregularity_trial(const Params& p, Rng& rng) {
  return is_y_semiregular(random_sequence(p, true, rng));
}

std::optional<int> empirical_first_fall(const BilinearSequence& B, int d_max) {
  BilinearSequence Bq = B.quadratic_part();
  const int ny = B.ny(), m = B.m();
  for (int d = 2; d <= d_max; ++d) {
    const std::uint64_t rows = m * binomial(ny + d - 3, d - 2);
    if (static_cast<std::uint64_t>(rank_of(degree_part(Bq, d))) < rows) return d;
  }
  return std::nullopt;
}

std::optional<int> empirical_dreg(const BilinearSequence& Bh, int d_max) {
  require(Bh.is_homogeneous(), "empirical_dreg needs a homogeneous sequence");
  for (int d = 2; d <= d_max; ++d)
    if (static_cast<std::uint64_t>(rank_of(degree_part(Bh, d))) == Bh.nx() * binomial(Bh.ny() + d - 2, d - 1))
      return d;
  return std::nullopt;
}

YPolyVector cramer_syzygy(const BilinearSequence& Bh, const std::vector<int>& rows) {
  const int nx = Bh.nx(), m = Bh.m();
  require(m > nx, "cramer_syzygy needs m > n_x");
  require(static_cast<int>(rows.size()) == nx + 1, "cramer_syzygy needs exactly n_x + 1 rows");
  std::vector<int> S = rows;
  std::sort(S.begin(), S.end());
  require(std::adjacent_find(S.begin(), S.end()) == S.end() && S.front() >= 0 && S.back() < m,
          "cramer_syzygy rows must be distinct indices below m");
  const FieldCtx& F = Bh.field();
  YPolyMatrix J = jacobian_x(Bh);
  YPolyVector G(m);
  for (int pos = 0; pos <= nx; ++pos) {
    std::vector<std::vector<YPoly>> minor;
    for (int t = 0; t <= nx; ++t)
      if (t != pos) minor.push_back(J[S[t]]);
    YPoly g;
    add_scaled(g, det(F, minor), pos % 2 == 0 ? 1 : F.neg(1), F);
    G[S[pos]] = std::move(g);
  }
  return G;
}

}  // namespace bilin
