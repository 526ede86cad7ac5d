#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "bilin/harness.hpp"
#include "bilin/macaulay.hpp"
#include "oracles.hpp"

using namespace bilin;

namespace {

BilinearSequence small_example() { return load_instance(BILIN_FIXTURES "/small_2x2.json"); }

std::multiset<std::vector<std::uint64_t>> row_multiset(const DenseElemMatrix& M) {
  std::multiset<std::vector<std::uint64_t>> rows;
  for (const auto& r : oracle::to_mat(M)) rows.insert(r);
  return rows;
}

}  // namespace

TEST_CASE("columns of the small example at degree 3") {
  auto M = build_y_macaulay(small_example(), 3);
  std::vector<std::string> labels;
  for (const auto& c : M.columns) labels.push_back(c.to_string());
  CHECK(labels == std::vector<std::string>{"x1*y1^2", "x1*y1*y2", "x1*y2^2", "x2*y1^2", "x2*y1*y2", "x2*y2^2",
                                           "x1*y1", "x1*y2", "x2*y1", "x2*y2"});
}

TEST_CASE("rows of the small example at degree 3") {
  auto M = build_y_macaulay(small_example(), 3);
  REQUIRE(M.row_count() == 6);
  // Printed rows, with y1*f1 replaced by its direct expansion x1y1^2 + x1y1y2 + x2y1^2.
  DenseElemMatrix expected(6, 10);
  expected << 0, 0, 0, 1, 1, 0, 0, 0, 0, 0,  //
      0, 0, 0, 0, 1, 1, 0, 0, 0, 0,          //
      1, 1, 0, 1, 0, 0, 0, 0, 0, 0,          //
      0, 1, 1, 0, 1, 0, 0, 0, 0, 0,          //
      0, 0, 0, 0, 0, 0, 0, 0, 1, 1,          //
      0, 0, 0, 0, 0, 0, 1, 1, 1, 0;
  CHECK(row_multiset(M.dense()) == row_multiset(expected));
  CHECK(oracle::rank_mod(oracle::to_mat(M.dense()), 13) == 6);
}

TEST_CASE("row labels reproduce their rows") {
  Rng rng(2);
  auto B = random_sequence({2, 3, 5, 7}, false, rng);
  auto M = build_y_macaulay(B, 4);
  for (Index i = 0; i < M.row_count(); ++i) {
    const auto& lbl = M.rows[i];
    CHECK(lbl.multiplier.degree() <= 2);
    // evaluate the row at a random point and compare with mult(v) * f(u, v)
    const FieldCtx& F = B.field();
    auto u = random_vector(F, 2, rng), v = random_vector(F, 3, rng);
    std::uint64_t row_val = 0;
    for (SparseElemMatrix::InnerIterator it(M.entries, i); it; ++it) {
      const auto& c = M.columns[it.col()];
      std::uint64_t mono = c.x_index >= 0 ? u[c.x_index] : 1;
      for (int j = 0; j < 3; ++j) mono = mono * oracle::pow_mod(v[j], c.y[j], 7) % 7;
      row_val = (row_val + mono * it.value()) % 7;
    }
    std::uint64_t mult = 1;
    for (int j = 0; j < 3; ++j) mult = mult * oracle::pow_mod(v[j], lbl.multiplier[j], 7) % 7;
    const auto fv = oracle::eval_poly(B[lbl.generator], {u.data(), u.data() + 2}, {v.data(), v.data() + 3}, 7);
    CHECK(row_val == mult * fv % 7);
  }
}

TEST_CASE("matrix dimensions follow the monomial counts") {
  Rng rng(8);
  for (int d = 2; d <= 5; ++d) {
    const int nx = 3, ny = 4, m = 6;
    auto H = random_sequence({nx, ny, m, 13}, true, rng);
    auto Mh = build_y_macaulay(H, d);
    std::uint64_t cols = 0, rows = 0;
    for (int j = 2; j <= d; ++j) cols += nx * oracle::binom(ny + j - 2, j - 1);
    for (int k = 0; k <= d - 2; ++k) rows += m * oracle::binom(ny + k - 1, k);
    CHECK(static_cast<std::uint64_t>(Mh.col_count()) == cols);
    CHECK(static_cast<std::uint64_t>(Mh.row_count()) == rows);

    auto A = random_sequence({nx, ny, m, 13}, false, rng);
    auto Ma = build_y_macaulay(A, d);
    std::uint64_t acols = 1;
    for (int j = 1; j <= d - 1; ++j) acols += nx * oracle::binom(ny + j - 2, j - 1) + oracle::binom(ny + j - 1, j);
    acols += nx * oracle::binom(ny + d - 2, d - 1);
    CHECK(static_cast<std::uint64_t>(Ma.col_count()) == acols);
    CHECK(Ma.row_count() == Mh.row_count());
  }
  CHECK_THROWS(build_y_macaulay(random_sequence({2, 2, 3, 13}, false, rng), 3, ColumnLayout::Homogeneous));
}

TEST_CASE("columns strictly decrease in the chosen order") {
  for (auto order : {MonomialOrder::Grlex, MonomialOrder::Grevlex}) {
    ColumnIndex idx(2, 3, 4, false, order);
    const auto& L = idx.labels();
    for (std::size_t i = 1; i < L.size(); ++i) CHECK(cmp_monomials(L[i - 1], L[i], order) > 0);
    for (Index i = 0; i < idx.size(); ++i) CHECK(idx.find(L[i].x_index, L[i].y) == i);
    CHECK(idx.constant_column() == idx.size() - 1);
    CHECK(idx.find(0, YMonomial({5, 0, 0})) == -1);
  }
}

TEST_CASE("column order never changes the rank") {
  Rng rng(12);
  auto B = random_sequence({3, 3, 7, 13}, false, rng);
  auto a = build_y_macaulay(B, 4, ColumnLayout::Auto, MonomialOrder::Grlex);
  auto b = build_y_macaulay(B, 4, ColumnLayout::Auto, MonomialOrder::Grevlex);
  CHECK(oracle::rank_mod(oracle::to_mat(a.dense()), 13) == oracle::rank_mod(oracle::to_mat(b.dense()), 13));
}

TEST_CASE("degree parts stack into the homogeneous matrix") {
  Rng rng(13);
  auto H = random_sequence({2, 3, 6, 13}, true, rng);
  auto full = build_y_macaulay(H, 4);
  std::size_t rows = 0;
  for (int j = 2; j <= 4; ++j) {
    auto P = degree_part(H, j);
    CHECK(static_cast<std::uint64_t>(P.row_count()) == 6 * oracle::binom(3 + j - 3, j - 2));
    CHECK(static_cast<std::uint64_t>(P.col_count()) == 2 * oracle::binom(3 + j - 2, j - 1));
    for (const auto& c : P.columns) CHECK(c.degree() == j);
    rows += P.row_count();
  }
  CHECK(static_cast<Index>(rows) == full.row_count());
}

TEST_CASE("indexer ranks are a bijection") {
  YMonomialIndexer idx(3, 4);
  std::set<std::size_t> seen;
  for (int d = 0; d <= 4; ++d)
    for (const auto& mu : y_monomials_of_degree(3, d)) {
      const auto r = idx.rank(mu);
      CHECK(r < idx.size());
      seen.insert(r);
    }
  CHECK(seen.size() == idx.size());
  CHECK(idx.size() == oracle::binom(3 + 4, 4));
  auto deg2 = y_monomials_of_degree(2, 2);
  REQUIRE(deg2.size() == 3);
  CHECK(deg2[0] == YMonomial({2, 0}));
  CHECK(deg2[2] == YMonomial({0, 2}));
}

TEST_CASE("sms dump") {
  auto M = build_y_macaulay(small_example(), 3);
  std::ostringstream out;
  write_sms(out, M);
  std::istringstream in(out.str());
  Index r, c, nnz = 0;
  std::uint64_t q;
  in >> r >> c >> q;
  CHECK(r == 6);
  CHECK(c == 10);
  CHECK(q == 13);
  Index i, j;
  std::uint64_t v;
  while (in >> i >> j >> v && i != 0) {
    CHECK(M.dense()(i - 1, j - 1) == v);
    ++nnz;
  }
  CHECK(i == 0);
  CHECK(nnz == M.entries.nonZeros());
}

TEST_CASE("binomials") {
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == oracle::binom(n, k));
  CHECK(binomial(3, 5) == 0);
}
