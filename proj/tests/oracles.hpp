#pragma once

// Reference implementations used only by the tests. They avoid the library's
// field, echelon and evaluation code so that agreement means something.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bilin/polyring.hpp"

namespace oracle {

using Mat = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  for (; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

// Fermat inverse, p prime.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Schoolbook row reduction; returns the rank and leaves the matrix in echelon form.
inline std::size_t rank_mod(Mat a, std::uint64_t p) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t s = inv_mod(a[r][c], p);
    for (auto& e : a[r]) e = e * s % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = (a[i][k] + (p - f) * a[r][k]) % p;
    }
    ++r;
  }
  return r;
}

// Is the right-hand side in the column span, i.e. does a x = rhs have a solution?
inline bool consistent(const Mat& a, const std::vector<std::uint64_t>& rhs, std::uint64_t p) {
  Mat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i] % p);
  return rank_mod(a, p) == rank_mod(aug, p);
}

template <class M>
Mat to_mat(const M& m) {
  Mat out(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline std::uint64_t eval_poly(const bilin::BilinearPoly& f, const std::vector<std::uint64_t>& u,
                               const std::vector<std::uint64_t>& v, std::uint64_t p) {
  std::uint64_t s = f.d0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s = (s + f.b[i] * u[i]) % p;
    for (std::size_t j = 0; j < v.size(); ++j) s = (s + f.A(i, j) * u[i] % p * v[j]) % p;
  }
  for (std::size_t j = 0; j < v.size(); ++j) s = (s + f.c[j] * v[j]) % p;
  return s;
}

inline bool is_zero_of(const bilin::BilinearSequence& B, const std::vector<std::uint64_t>& u,
                       const std::vector<std::uint64_t>& v) {
  for (const auto& f : B.polys())
    if (eval_poly(f, u, v, B.field().q()) != 0) return false;
  return true;
}

inline bool is_zero_of(const bilin::BilinearSequence& B, const bilin::ElemVector& u, const bilin::ElemVector& v) {
  return is_zero_of(B, std::vector<std::uint64_t>(u.data(), u.data() + u.size()),
                    std::vector<std::uint64_t>(v.data(), v.data() + v.size()));
}

// Solvability by fixing x and checking the remaining linear system in y.
inline bool solvable(const bilin::BilinearSequence& B) {
  const std::uint64_t p = B.field().q();
  const int nx = B.nx(), ny = B.ny();
  std::vector<std::uint64_t> u(nx, 0);
  while (true) {
    Mat lin(B.m(), std::vector<std::uint64_t>(ny, 0));
    std::vector<std::uint64_t> rhs(B.m());
    for (int k = 0; k < B.m(); ++k) {
      const auto& f = B[k];
      std::uint64_t cst = f.d0;
      for (int i = 0; i < nx; ++i) cst = (cst + f.b[i] * u[i]) % p;
      for (int j = 0; j < ny; ++j) {
        std::uint64_t c = f.c[j];
        for (int i = 0; i < nx; ++i) c = (c + f.A(i, j) * u[i]) % p;
        lin[k][j] = c;
      }
      rhs[k] = (p - cst) % p;
    }
    if (ny == 0) {
      bool all = true;
      for (auto r : rhs) all = all && r == 0;
      if (all) return true;
    } else if (consistent(lin, rhs, p)) {
      return true;
    }
    int i = 0;
    while (i < nx && ++u[i] == p) u[i++] = 0;
    if (i == nx) return false;
  }
}

// All zeros by plain enumeration of every point.
inline std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> all_zeros(
    const bilin::BilinearSequence& B) {
  const std::uint64_t p = B.field().q();
  const int n = B.nx() + B.ny();
  std::vector<std::uint64_t> pt(n, 0);
  std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> out;
  while (true) {
    std::vector<std::uint64_t> u(pt.begin(), pt.begin() + B.nx()), v(pt.begin() + B.nx(), pt.end());
    if (is_zero_of(B, u, v)) out.emplace_back(u, v);
    int i = n - 1;
    while (i >= 0 && ++pt[i] == p) pt[i--] = 0;
    if (i < 0) return out;
  }
}

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
  }
  return t[n][k];
}

// Dimension of the space of polynomials of total degree <= 1 spanned by
// y^beta * f_k for |beta| <= d - 2, built directly from the coefficients.
inline std::size_t linear_dimension(const bilin::BilinearSequence& B, int d) {
  const int nx = B.nx(), ny = B.ny();
  const std::uint64_t p = B.field().q();
  std::vector<std::vector<int>> ymonos{std::vector<int>(ny, 0)};
  for (std::size_t i = 0; i < ymonos.size(); ++i) {
    int total = 0;
    for (int e : ymonos[i]) total += e;
    if (total == d - 2) continue;
    int last = ny - 1;
    while (last >= 0 && ymonos[i][last] == 0) --last;
    for (int j = std::max(last, 0); j < ny; ++j) {
      auto next = ymonos[i];
      ++next[j];
      ymonos.push_back(next);
    }
  }
  std::vector<std::map<std::vector<int>, std::uint64_t>> rows;
  for (const auto& f : B.polys())
    for (const auto& beta : ymonos) {
      std::map<std::vector<int>, std::uint64_t> row;
      auto put = [&](int xi, int yj, std::uint64_t c) {
        if (c == 0) return;
        std::vector<int> e(nx + ny, 0);
        if (xi >= 0) e[xi] = 1;
        for (int j = 0; j < ny; ++j) e[nx + j] = beta[j] + (j == yj ? 1 : 0);
        row[e] = (row[e] + c) % p;
      };
      for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) put(i, j, f.A(i, j));
        put(i, -1, f.b[i]);
      }
      for (int j = 0; j < ny; ++j) put(-1, j, f.c[j]);
      put(-1, -1, f.d0);
      rows.push_back(std::move(row));
    }
  std::map<std::vector<int>, std::size_t> high, low;
  for (const auto& r : rows)
    for (const auto& [e, c] : r) {
      int deg = 0;
      for (int k : e) deg += k;
      (deg <= 1 ? low : high).emplace(e, 0);
    }
  std::size_t n = 0;
  for (auto& [e, i] : high) i = n++;
  for (auto& [e, i] : low) i = n++;
  Mat full(rows.size(), std::vector<std::uint64_t>(n, 0));
  Mat top(rows.size(), std::vector<std::uint64_t>(high.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [e, c] : rows[r]) {
      if (auto it = high.find(e); it != high.end()) {
        full[r][it->second] = c;
        top[r][it->second] = c;
      } else {
        full[r][low.at(e)] = c;
      }
    }
  return rank_mod(full, p) - rank_mod(top, p);
}

}  // namespace oracle
