#include <stdexcept>

#include "bilin/solvers.hpp"
#include "span_chain.hpp"

namespace bilin {

namespace {

LinearPoly transform(const LinearPoly& l, const AffineChange& ch, const FieldCtx& F) {
  LinearPoly out{ElemVector::Zero(ch.Tx.cols()), ElemVector::Zero(ch.Ty.cols()), l.constant};
  for (Index i = 0; i < ch.Tx.rows(); ++i) {
    if (l.x[i] == 0) continue;
    for (Index t = 0; t < ch.Tx.cols(); ++t) out.x[t] = F.fma(out.x[t], l.x[i], ch.Tx(i, t));
    out.constant = F.fma(out.constant, l.x[i], ch.tx[i]);
  }
  for (Index j = 0; j < ch.Ty.rows(); ++j) {
    if (l.y[j] == 0) continue;
    for (Index t = 0; t < ch.Ty.cols(); ++t) out.y[t] = F.fma(out.y[t], l.y[j], ch.Ty(j, t));
    out.constant = F.fma(out.constant, l.y[j], ch.ty[j]);
  }
  return out;
}

// Variables named by pivots of pure rows become affine in the remaining ones.
void eliminate_block(const std::vector<RowVector>& rows, Index offset, Index n, const FieldCtx& F,
                     ElemMatrix& T, ElemVector& t) {
  std::vector<bool> bound(n, false);
  std::vector<Index> pivot(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Index p = 0;
    while (rows[r][offset + p] == 0) ++p;
    pivot[r] = p;
    bound[p] = true;
  }
  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i)
    if (!bound[i]) keep.push_back(i);
  T = ElemMatrix::Zero(n, static_cast<Index>(keep.size()));
  t = ElemVector::Zero(n);
  for (std::size_t s = 0; s < keep.size(); ++s) T(keep[s], s) = 1;
  const Index constant_col = rows.empty() ? 0 : rows[0].size() - 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    // x_p + sum_free a_j x_j + a0 = 0 (rows are reduced, pivot coefficient 1)
    for (std::size_t s = 0; s < keep.size(); ++s) T(pivot[r], s) = F.neg(rows[r][offset + keep[s]]);
    t[pivot[r]] = F.neg(rows[r][constant_col]);
  }
}

// A failed search is a refutation unless the node budget ran out somewhere below.
std::optional<Solution> solve_rec(const BilinearSequence& B, std::vector<LinearPoly> lin, int degree,
                                  std::uint64_t& budget, bool xl_done, bool& inconclusive) {
  if (budget == 0) {
    inconclusive = true;
    return std::nullopt;
  }
  --budget;
  const FieldCtx& F = B.field();
  const int nx = B.nx(), ny = B.ny();
  if (nx == 0 || ny == 0)
    for (const auto& f : B.polys()) lin.push_back({f.b, f.c, f.d0});

  const Index width = nx + ny + 1;
  EchelonBasis E(F, width);
  DenseElemMatrix L(static_cast<Index>(lin.size()), width);
  for (std::size_t r = 0; r < lin.size(); ++r) {
    L.row(r).head(nx) = lin[r].x.transpose();
    L.row(r).segment(nx, ny) = lin[r].y.transpose();
    L(r, nx + ny) = lin[r].constant;
  }
  if (L.rows() > 0) E.insert(L);
  if (E.is_pivot(nx + ny)) return std::nullopt;

  std::vector<RowVector> pure_x, pure_y;
  std::vector<LinearPoly> mixed;
  for (Index id : E.ids_by_pivot()) {
    RowVector row = E.row(id);
    const Index p = E.pivot_of(id);
    if (p >= nx) pure_y.push_back(row);
    else if (row.segment(nx, ny).isZero()) pure_x.push_back(row);
    else mixed.push_back({row.head(nx).transpose(), row.segment(nx, ny).transpose(), row[nx + ny]});
  }

  if (!pure_x.empty() || !pure_y.empty()) {
    AffineChange ch;
    eliminate_block(pure_x, 0, nx, F, ch.Tx, ch.tx);
    eliminate_block(pure_y, nx, ny, F, ch.Ty, ch.ty);
    BilinearSequence B2 = substitute(B, ch);
    std::vector<LinearPoly> lin2;
    for (const auto& l : mixed) lin2.push_back(transform(l, ch, F));
    auto sub = solve_rec(B2, std::move(lin2), degree, budget, false, inconclusive);
    if (!sub) return std::nullopt;
    Solution s;
    ch.apply(sub->u, sub->v, F, s.u, s.v);
    return s;
  }
  if (nx == 0 || ny == 0) return Solution{ElemVector::Zero(nx), ElemVector::Zero(ny)};

  if (!xl_done) {
    detail::SpanChain chain(B);
    chain.raise_to(degree);
    if (chain.has_one()) return std::nullopt;
    auto more = chain.linear_polys();
    if (!more.empty()) {
      lin.insert(lin.end(), more.begin(), more.end());
      return solve_rec(B, std::move(lin), degree, budget, true, inconclusive);
    }
  }

  // Nothing linear left to use: try every value of x_1.
  for (Elem val = 0; val < F.q(); ++val) {
    AffineChange ch;
    ch.Tx = ElemMatrix::Zero(nx, nx - 1);
    ch.Tx.bottomRows(nx - 1).setIdentity();
    ch.tx = ElemVector::Zero(nx);
    ch.tx[0] = val;
    ch.Ty = ElemMatrix::Identity(ny, ny);
    ch.ty = ElemVector::Zero(ny);
    std::vector<LinearPoly> lin2;
    for (const auto& l : lin) lin2.push_back(transform(l, ch, F));
    auto sub = solve_rec(substitute(B, ch), std::move(lin2), degree, budget, false, inconclusive);
    if (sub) {
      Solution s;
      ch.apply(sub->u, sub->v, F, s.u, s.v);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

namespace detail {

Extraction extract_or_refute(const BilinearSequence& B, const std::vector<LinearPoly>& linear_polys, int degree,
                             std::uint64_t node_budget) {
  Extraction out;
  if (linear_polys.empty()) return out;
  for (const auto& l : linear_polys)
    if (l.x.size() != B.nx() || l.y.size() != B.ny())
      throw std::invalid_argument("linear polynomial does not match the sequence");
  std::uint64_t budget = node_budget;
  bool inconclusive = false;
  auto s = solve_rec(B, linear_polys, std::max(degree, 2), budget, true, inconclusive);
  if (s && is_solution(B, s->u, s->v)) out.solution = std::move(s);
  else out.refuted = !s && !inconclusive;
  return out;
}

}  // namespace detail

std::optional<Solution> extract_solution(const BilinearSequence& B,
                                         const std::vector<LinearPoly>& linear_polys, int degree,
                                         std::uint64_t node_budget) {
  return detail::extract_or_refute(B, linear_polys, degree, node_budget).solution;
}

}  // namespace bilin
