#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bilin/linalg.hpp"
#include "bilin/macaulay.hpp"
#include "bilin/solvers.hpp"

namespace bilin::detail {

struct Generator {
  AmbientPoly poly;
  int nominal_degree;  // products m*g enter at degree deg m + nominal_degree
};

// Echelon basis of J_{y,<=d} grown one degree at a time. Generators may be
// added at the current degree, which is how y-MXL feeds mutants back.
class SpanChain {
 public:
  explicit SpanChain(const BilinearSequence& B, MonomialOrder order = MonomialOrder::Grlex);

  int degree() const { return d_; }
  Index rank() const { return E_ ? E_->rank() : 0; }
  const ColumnIndex& columns() const { return *cols_; }
  const EchelonBasis& basis() const { return *E_; }

  // Raise the bound to d; returns ids of rows that got new pivots.
  std::vector<Index> raise_to(int d);
  // Adds generators and all their multiples by y-monomials of degree >= 1 up to the bound.
  std::vector<Index> add_generators(std::vector<Generator> gens);

  bool has_one() const;
  bool has_linear() const;
  std::vector<LinearPoly> linear_polys() const;
  int pivot_degree(Index id) const { return cols_->degree_of(E_->pivot_of(id)); }
  AmbientPoly row_poly(Index id) const { return row_to_poly(E_->sparse_row(id), *cols_); }

 private:
  void queue_products(const Generator& g, int mult_lo, int mult_hi);
  std::vector<Index> flush();

  FieldCtx F_;
  int nx_, ny_;
  MonomialOrder order_;
  std::vector<Generator> gens_;
  int d_ = 0;
  std::unique_ptr<ColumnIndex> cols_;
  std::optional<EchelonBasis> E_;
  std::vector<SparseRow> pending_;
  std::vector<Index> created_;
};

LinearPoly to_linear(const AmbientPoly& g, int nx, int ny);

struct Extraction {
  std::optional<Solution> solution;
  bool refuted = false;  // every branch ended in a contradiction within the budget
};

Extraction extract_or_refute(const BilinearSequence& B, const std::vector<LinearPoly>& linear_polys, int degree,
                             std::uint64_t node_budget = 4096);

}  // namespace bilin::detail
