#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "bilin/macaulay.hpp"

namespace bilin {

using RowVector = Eigen::Matrix<Elem, 1, Eigen::Dynamic>;

struct EchelonResult {
  DenseElemMatrix reduced;  // rank x cols, reduced row echelon form
  Index rank = 0;
  std::vector<Index> pivots;  // strictly increasing
};

namespace detail {
class EchelonImpl;
}

// Reduced row echelon basis of a growing row space. Rows can be inserted in
// batches; columns can be prepended (they start out as non-pivot columns).
class EchelonBasis {
 public:
  EchelonBasis(const FieldCtx& F, Index cols);
  ~EchelonBasis();
  EchelonBasis(EchelonBasis&&) noexcept;
  EchelonBasis& operator=(EchelonBasis&&) noexcept;

  const FieldCtx& field() const { return field_; }
  Index cols() const;
  Index rank() const;

  // Each insert returns the storage ids of rows that received new pivots.
  std::vector<Index> insert(const DenseElemMatrix& rows);
  std::vector<Index> insert(const std::vector<SparseRow>& rows);
  void prepend_columns(Index n);

  bool is_pivot(Index col) const;
  // Pivot column of storage row id (ids are stable between inserts).
  Index pivot_of(Index id) const;
  // Storage ids in increasing pivot-column order.
  std::vector<Index> ids_by_pivot() const;
  RowVector row(Index id) const;
  SparseRow sparse_row(Index id) const;
  // Ids of rows whose pivot column is >= col.
  std::vector<Index> ids_with_pivot_from(Index col) const;

  EchelonResult result() const;

 private:
  FieldCtx field_;
  std::unique_ptr<detail::EchelonImpl> impl_;
};

EchelonResult row_echelon(const FieldCtx& F, const DenseElemMatrix& M);
Index rank(const FieldCtx& F, const DenseElemMatrix& M);
Index rank(const FieldCtx& F, const SparseElemMatrix& M);
// Some z with z M = b, or nothing if b is outside the row space.
std::optional<RowVector> solve_left(const FieldCtx& F, const DenseElemMatrix& M, const RowVector& b);

enum class Verdict { Consistent, ProbablyInconsistent };

struct ConsistencyVerdict {
  Verdict tag = Verdict::ProbablyInconsistent;
  RowVector certificate;  // z with z M = b when Consistent
  double failure_bound_log2 = 0.0;  // log2 of the chance an inconsistent verdict is wrong
  int trials_used = 0;
};

// Repetitions of the projected Wiedemann test needed to push the failure bound to 2^target.
int wiedemann_trials_for(const FieldCtx& F, double target_log2 = -20.0);
double wiedemann_trial_failure_log2(const FieldCtx& F);

ConsistencyVerdict wiedemann_consistent(const FieldCtx& F, const SparseElemMatrix& M,
                                        const RowVector& b, int trials, Rng& rng);

// z M over GF(q) for a sparse row-major M.
RowVector left_multiply(const FieldCtx& F, const RowVector& z, const SparseElemMatrix& M);

}  // namespace bilin
