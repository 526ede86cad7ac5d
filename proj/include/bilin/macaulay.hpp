#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "bilin/polyring.hpp"

namespace bilin {

using Index = Eigen::Index;
using DenseElemMatrix = Eigen::Matrix<Elem, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseElemMatrix = Eigen::SparseMatrix<Elem, Eigen::RowMajor>;
using SparseRow = std::vector<std::pair<Index, Elem>>;

enum class ColumnLayout { Auto, Affine, Homogeneous };

// Dense ranking of the y-monomials of degree <= max_degree (graded, colex inside a degree).
class YMonomialIndexer {
 public:
  YMonomialIndexer(int ny, int max_degree);
  std::size_t size() const { return size_; }
  int max_degree() const { return max_degree_; }
  std::size_t rank(const YMonomial& mu) const;

 private:
  std::uint64_t binom(int n, int k) const;
  int ny_;
  int max_degree_;
  std::size_t size_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

// y-monomials of exactly the given degree, lex-descending (y1 first).
std::vector<YMonomial> y_monomials_of_degree(int ny, int degree);

std::vector<ColumnMonomial> column_monomials(const Params& p, int d, bool homogeneous,
                                             MonomialOrder order = MonomialOrder::Grlex);

// Column labels of M_{y,<=d} with reverse lookup; columns decrease under the order.
class ColumnIndex {
 public:
  ColumnIndex(int nx, int ny, int d, bool homogeneous, MonomialOrder order = MonomialOrder::Grlex);
  // Affine columns plus the pure y-monomials of degree d, i.e. every ambient
  // monomial of degree <= d. Needed once lower-degree polynomials are multiplied.
  static ColumnIndex ambient(int nx, int ny, int d, MonomialOrder order = MonomialOrder::Grlex);

  const std::vector<ColumnMonomial>& labels() const { return labels_; }
  Index size() const { return static_cast<Index>(labels_.size()); }
  int degree_bound() const { return d_; }
  bool homogeneous() const { return homogeneous_; }
  // -1 when the monomial is not a column.
  Index find(int x_index, const YMonomial& y) const;
  Index constant_column() const { return find(-1, YMonomial(ny_)); }
  // First column whose total degree is <= deg (columns are graded, so this starts a suffix).
  Index first_column_of_degree_at_most(int deg) const;
  int degree_of(Index col) const { return labels_[col].degree(); }

 private:
  ColumnIndex(int nx, int ny, int d, bool homogeneous, int pure_y_max, MonomialOrder order);

  int nx_, ny_, d_;
  bool homogeneous_;
  YMonomialIndexer indexer_;
  std::vector<ColumnMonomial> labels_;
  std::vector<std::int64_t> lookup_;
};

// Polynomial inside the ambient span: x-linear or pure y terms.
struct Term {
  int x_index;
  YMonomial y;
  Elem coef;
};
using AmbientPoly = std::vector<Term>;

AmbientPoly to_ambient(const BilinearPoly& f);
int degree(const AmbientPoly& g);
AmbientPoly row_to_poly(const SparseRow& row, const ColumnIndex& cols);
AmbientPoly row_to_poly(const std::vector<ColumnMonomial>& labels,
                        const Eigen::Ref<const Eigen::Matrix<Elem, 1, Eigen::Dynamic>>& row);

// Coefficients of mult * g over the given columns, sorted by column. Throws if a
// product monomial is not a column.
SparseRow multiply_to_row(const AmbientPoly& g, const YMonomial& mult, const ColumnIndex& cols);

struct RowLabel {
  int generator;
  YMonomial multiplier;
};

struct YMacaulayMatrix {
  FieldCtx field;
  int degree_bound;
  std::vector<ColumnMonomial> columns;
  std::vector<RowLabel> rows;
  SparseElemMatrix entries;

  Index row_count() const { return entries.rows(); }
  Index col_count() const { return entries.cols(); }
  DenseElemMatrix dense() const { return DenseElemMatrix(entries); }
  AmbientPoly row_polynomial(Index i) const;
};

YMacaulayMatrix build_y_macaulay(const BilinearSequence& B, int d,
                                 ColumnLayout layout = ColumnLayout::Auto,
                                 MonomialOrder order = MonomialOrder::Grlex);

// Rows m*f_k with deg m = j-2 over the x-linear monomials of total degree j.
YMacaulayMatrix degree_part(const BilinearSequence& B, int j,
                            MonomialOrder order = MonomialOrder::Grlex);

// SMS triplets: "rows cols q", then 1-based "i j v" per nonzero, then "0 0 0".
void write_sms(std::ostream& out, const YMacaulayMatrix& M);

std::uint64_t binomial(int n, int k);

}  // namespace bilin
