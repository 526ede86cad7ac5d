#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bilin/linalg.hpp"
#include "oracles.hpp"

using namespace bilin;

namespace {

DenseElemMatrix random_low_rank(const FieldCtx& F, Index rows, Index cols, Index r, Rng& rng) {
  DenseElemMatrix L = DenseElemMatrix::NullaryExpr(rows, r, [&] { return F.rand_elem(rng); });
  DenseElemMatrix R = DenseElemMatrix::NullaryExpr(r, cols, [&] { return F.rand_elem(rng); });
  DenseElemMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      std::uint64_t s = 0;
      for (Index k = 0; k < r; ++k) s = (s + std::uint64_t{L(i, k)} * R(k, j)) % F.q();
      out(i, j) = static_cast<Elem>(s);
    }
  return out;
}

SparseElemMatrix random_sparse(const FieldCtx& F, Index rows, Index cols, int per_row, Rng& rng) {
  std::vector<Eigen::Triplet<Elem>> t;
  std::uniform_int_distribution<Index> pick(0, cols - 1);
  for (Index i = 0; i < rows; ++i)
    for (int k = 0; k < per_row; ++k) t.emplace_back(i, pick(rng), F.rand_elem(rng));
  SparseElemMatrix M(rows, cols);
  M.setFromTriplets(t.begin(), t.end(), [&](Elem a, Elem b) { return F.add(a, b); });
  return M;
}

}  // namespace

TEST_CASE("rank agrees with schoolbook elimination") {
  for (std::uint64_t p : {2ULL, 3ULL, 13ULL, 65521ULL, 2147483647ULL}) {
    FieldCtx F(p);
    Rng rng(p + 1);
    for (auto [rows, cols] : {std::pair<Index, Index>{7, 9}, {40, 30}, {90, 140}, {150, 70}}) {
      for (Index r : {Index(0), Index(1), std::min(rows, cols) / 2, std::min(rows, cols)}) {
        auto M = random_low_rank(F, rows, cols, r, rng);
        CHECK(static_cast<std::size_t>(rank(F, M)) == oracle::rank_mod(oracle::to_mat(M), p));
      }
    }
  }
}

TEST_CASE("sparse rank matches dense rank") {
  FieldCtx F(13);
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    auto S = random_sparse(F, 120, 80, 3, rng);
    CHECK(rank(F, S) == rank(F, DenseElemMatrix(S)));
  }
}

TEST_CASE("row echelon output is reduced and spans the input") {
  FieldCtx F(13);
  Rng rng(17);
  auto M = random_low_rank(F, 60, 50, 23, rng);
  auto E = row_echelon(F, M);
  REQUIRE(E.rank == 23);
  REQUIRE(E.pivots.size() == 23);
  for (std::size_t i = 0; i < E.pivots.size(); ++i) {
    if (i) CHECK(E.pivots[i] > E.pivots[i - 1]);
    for (std::size_t k = 0; k < E.pivots.size(); ++k) CHECK(E.reduced(k, E.pivots[i]) == (k == i ? 1u : 0u));
    for (Index c = 0; c < E.pivots[i]; ++c) CHECK(E.reduced(i, c) == 0);
  }
  DenseElemMatrix stacked(M.rows() + E.rank, M.cols());
  stacked << M, E.reduced;
  CHECK(oracle::rank_mod(oracle::to_mat(stacked), 13) == 23);
}

TEST_CASE("large blocked elimination") {
  FieldCtx F(13);
  Rng rng(23);
  auto M = random_low_rank(F, 400, 300, 250, rng);
  CHECK(rank(F, M) == 250);
  auto E = row_echelon(F, M);
  CHECK(E.rank == 250);
}

TEST_CASE("incremental basis matches batch elimination") {
  FieldCtx F(13);
  Rng rng(29);
  auto M = random_low_rank(F, 200, 120, 90, rng);
  EchelonBasis basis(F, M.cols());
  for (Index start = 0; start < M.rows(); start += 37) {
    const Index n = std::min<Index>(37, M.rows() - start);
    basis.insert(DenseElemMatrix(M.middleRows(start, n)));
  }
  auto batch = row_echelon(F, M);
  auto inc = basis.result();
  CHECK(inc.rank == batch.rank);
  CHECK(inc.pivots == batch.pivots);
  CHECK(inc.reduced == batch.reduced);
  for (Index id : basis.ids_by_pivot()) CHECK(basis.is_pivot(basis.pivot_of(id)));
}

TEST_CASE("prepending columns keeps the row space") {
  FieldCtx F(13);
  Rng rng(31);
  auto M = random_low_rank(F, 30, 20, 12, rng);
  EchelonBasis basis(F, 20);
  basis.insert(M);
  basis.prepend_columns(5);
  CHECK(basis.cols() == 25);
  DenseElemMatrix wide = DenseElemMatrix::Zero(30, 25);
  wide.rightCols(20) = M;
  DenseElemMatrix extra = random_low_rank(F, 10, 25, 4, rng);
  basis.insert(extra);
  DenseElemMatrix all(40, 25);
  all << wide, extra;
  auto E = row_echelon(F, all);
  CHECK(basis.result().reduced == E.reduced);
}

TEST_CASE("sparse row insertion") {
  FieldCtx F(13);
  EchelonBasis basis(F, 4);
  std::vector<SparseRow> rows = {{{0, 1}, {3, 2}}, {{1, 5}}, {{0, 2}, {3, 4}}};
  auto fresh = basis.insert(rows);
  CHECK(fresh.size() == 2);
  CHECK(basis.rank() == 2);
  CHECK(basis.ids_with_pivot_from(1).size() == 1);
  auto r = basis.sparse_row(basis.ids_with_pivot_from(1)[0]);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == std::pair<Index, Elem>{1, 1});
}

TEST_CASE("left solve matches the consistency oracle") {
  FieldCtx F(13);
  Rng rng(37);
  for (int t = 0; t < 40; ++t) {
    auto M = random_low_rank(F, 15, 20, 9, rng);
    RowVector b(20);
    if (t % 2) {
      RowVector z = RowVector::NullaryExpr(15, [&] { return F.rand_elem(rng); });
      b = left_multiply(F, z, SparseElemMatrix(M.sparseView()));
    } else {
      for (Index j = 0; j < 20; ++j) b[j] = F.rand_elem(rng);
    }
    // z M = b  <=>  M^T z^T = b^T
    oracle::Mat Mt(20, std::vector<std::uint64_t>(15));
    for (Index i = 0; i < 15; ++i)
      for (Index j = 0; j < 20; ++j) Mt[j][i] = M(i, j);
    const bool ok = oracle::consistent(Mt, {b.data(), b.data() + 20}, 13);
    auto z = solve_left(F, M, b);
    CHECK(z.has_value() == ok);
    if (z) CHECK(left_multiply(F, *z, SparseElemMatrix(M.sparseView())) == b);
  }
}

TEST_CASE("wiedemann verdicts") {
  FieldCtx F(13);
  CHECK(wiedemann_trials_for(F) == 8);
  CHECK(wiedemann_trials_for(FieldCtx(2)) == 20);
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    auto M = random_sparse(F, 40, 60, 4, rng);
    RowVector b(60);
    const bool planted = t % 2 == 0;
    if (planted) {
      RowVector z = RowVector::NullaryExpr(40, [&] { return F.rand_elem(rng); });
      b = left_multiply(F, z, M);
    } else {
      for (Index j = 0; j < 60; ++j) b[j] = F.rand_elem(rng);
    }
    auto v = wiedemann_consistent(F, M, b, wiedemann_trials_for(F), rng);
    const bool truth = solve_left(F, DenseElemMatrix(M), b).has_value();
    if (v.tag == Verdict::Consistent) {
      CHECK(truth);
      CHECK(left_multiply(F, v.certificate, M) == b);
    } else {
      CHECK(v.failure_bound_log2 <= -20.0);
    }
    if (planted) CHECK(v.tag == Verdict::Consistent);
  }
  RowVector zero = RowVector::Zero(5);
  CHECK(wiedemann_consistent(F, SparseElemMatrix(3, 5), zero, 1, rng).tag == Verdict::Consistent);
  RowVector e = RowVector::Zero(5);
  e[4] = 1;
  auto empty = wiedemann_consistent(F, SparseElemMatrix(0, 5), e, 1, rng);
  CHECK(empty.tag == Verdict::ProbablyInconsistent);
}
