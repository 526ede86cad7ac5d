#include "bilin/macaulay.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace bilin {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

YMonomialIndexer::YMonomialIndexer(int ny, int max_degree) : ny_(ny), max_degree_(max_degree) {
  if (ny < 0 || max_degree < 0) throw std::invalid_argument("bad monomial indexer bounds");
  const int n = ny + max_degree + 1;
  binom_.assign(n + 1, std::vector<std::uint64_t>(max_degree + 2, 0));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= max_degree + 1; ++b) binom_[a][b] = binomial(a, b);
  size_ = static_cast<std::size_t>(binomial(ny + max_degree, max_degree));
}

std::uint64_t YMonomialIndexer::binom(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  return binom_[n][k];
}

std::size_t YMonomialIndexer::rank(const YMonomial& mu) const {
  if (mu.nvars() != ny_ || mu.degree() > max_degree_)
    throw std::out_of_range("y-monomial outside the indexed range");
  const int deg = mu.degree();
  // Monomials of smaller degree come first.
  std::uint64_t r = deg == 0 ? 0 : binom(ny_ + deg - 1, deg - 1);
  int t = 1;
  for (int j = 0; j < ny_; ++j)
    for (int e = 0; e < mu[j]; ++e, ++t) r += binom(j + t - 1, t);
  return static_cast<std::size_t>(r);
}

std::vector<YMonomial> y_monomials_of_degree(int ny, int degree) {
  std::vector<YMonomial> out;
  if (degree < 0) return out;
  std::vector<std::uint16_t> e(ny, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == ny - 1 || ny == 0) {
      if (ny == 0) {
        if (left == 0) out.emplace_back(e);
        return;
      }
      e[j] = static_cast<std::uint16_t>(left);
      out.emplace_back(e);
      e[j] = 0;
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[j] = static_cast<std::uint16_t>(a);
      self(self, j + 1, left - a);
    }
    e[j] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

namespace {

std::vector<ColumnMonomial> labels_for(int nx, int ny, int d, bool homogeneous, int pure_y_max,
                                       MonomialOrder order) {
  std::vector<ColumnMonomial> labels;
  for (int deg = 0; deg <= std::max(d - 1, pure_y_max); ++deg)
    for (const auto& mu : y_monomials_of_degree(ny, deg)) {
      if (deg <= d - 1 && (deg >= 1 || !homogeneous))
        for (int i = 0; i < nx; ++i) labels.push_back({i, mu});
      if (!homogeneous && deg <= pure_y_max) labels.push_back({-1, mu});
    }
  std::sort(labels.begin(), labels.end(), [order](const auto& a, const auto& b) {
    return cmp_monomials(a, b, order) == std::strong_ordering::greater;
  });
  return labels;
}

}  // namespace

std::vector<ColumnMonomial> column_monomials(const Params& p, int d, bool homogeneous,
                                             MonomialOrder order) {
  if (d < 2) throw std::invalid_argument("Macaulay degree must be at least 2");
  return labels_for(p.nx, p.ny, d, homogeneous, d - 1, order);
}

ColumnIndex::ColumnIndex(int nx, int ny, int d, bool homogeneous, MonomialOrder order)
    : ColumnIndex(nx, ny, d, homogeneous, d - 1, order) {}

ColumnIndex ColumnIndex::ambient(int nx, int ny, int d, MonomialOrder order) {
  return ColumnIndex(nx, ny, d, false, d, order);
}

ColumnIndex::ColumnIndex(int nx, int ny, int d, bool homogeneous, int pure_y_max, MonomialOrder order)
    : nx_(nx), ny_(ny), d_(d), homogeneous_(homogeneous), indexer_(ny, std::max({d - 1, pure_y_max, 0})) {
  if (d < 2) throw std::invalid_argument("Macaulay degree must be at least 2");
  labels_ = labels_for(nx, ny, d, homogeneous, pure_y_max, order);
  lookup_.assign(indexer_.size() * static_cast<std::size_t>(nx + 1), -1);
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    const auto& lab = labels_[c];
    lookup_[indexer_.rank(lab.y) * (nx + 1) + (lab.x_index + 1)] = static_cast<std::int64_t>(c);
  }
}

Index ColumnIndex::find(int x_index, const YMonomial& y) const {
  if (x_index >= nx_ || y.nvars() != ny_ || y.degree() > indexer_.max_degree()) return -1;
  return lookup_[indexer_.rank(y) * (nx_ + 1) + (x_index + 1)];
}

Index ColumnIndex::first_column_of_degree_at_most(int deg) const {
  auto it = std::partition_point(labels_.begin(), labels_.end(),
                                 [deg](const ColumnMonomial& c) { return c.degree() > deg; });
  return static_cast<Index>(it - labels_.begin());
}

AmbientPoly to_ambient(const BilinearPoly& f) {
  const int nx = static_cast<int>(f.A.rows()), ny = static_cast<int>(f.A.cols());
  AmbientPoly g;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      if (f.A(i, j) != 0) g.push_back({i, YMonomial::variable(ny, j), f.A(i, j)});
  for (int i = 0; i < nx; ++i)
    if (f.b[i] != 0) g.push_back({i, YMonomial(ny), f.b[i]});
  for (int j = 0; j < ny; ++j)
    if (f.c[j] != 0) g.push_back({-1, YMonomial::variable(ny, j), f.c[j]});
  if (f.d0 != 0) g.push_back({-1, YMonomial(ny), f.d0});
  return g;
}

int degree(const AmbientPoly& g) {
  int d = -1;
  for (const auto& t : g) d = std::max(d, t.y.degree() + (t.x_index >= 0 ? 1 : 0));
  return d;
}

AmbientPoly row_to_poly(const SparseRow& row, const ColumnIndex& cols) {
  AmbientPoly g;
  for (const auto& [c, v] : row) {
    const auto& lab = cols.labels()[c];
    g.push_back({lab.x_index, lab.y, v});
  }
  return g;
}

AmbientPoly row_to_poly(const std::vector<ColumnMonomial>& labels,
                        const Eigen::Ref<const Eigen::Matrix<Elem, 1, Eigen::Dynamic>>& row) {
  AmbientPoly g;
  for (Index c = 0; c < row.size(); ++c)
    if (row[c] != 0) g.push_back({labels[c].x_index, labels[c].y, row[c]});
  return g;
}

SparseRow multiply_to_row(const AmbientPoly& g, const YMonomial& mult, const ColumnIndex& cols) {
  SparseRow row;
  row.reserve(g.size());
  for (const auto& t : g) {
    Index c = cols.find(t.x_index, t.y * mult);
    if (c < 0) throw std::out_of_range("product monomial is not a column of the matrix");
    row.emplace_back(c, t.coef);
  }
  std::sort(row.begin(), row.end());
  return row;
}

AmbientPoly YMacaulayMatrix::row_polynomial(Index i) const {
  AmbientPoly g;
  for (SparseElemMatrix::InnerIterator it(entries, i); it; ++it)
    g.push_back({columns[it.col()].x_index, columns[it.col()].y, it.value()});
  return g;
}

namespace {

YMacaulayMatrix assemble(const BilinearSequence& B, const ColumnIndex& cols, int min_mult,
                         int max_mult, int d) {
  YMacaulayMatrix M{B.field(), d, cols.labels(), {}, {}};
  std::vector<AmbientPoly> gens;
  for (const auto& f : B.polys()) gens.push_back(to_ambient(f));
  std::vector<Eigen::Triplet<Elem>> trips;
  Index r = 0;
  for (int md = max_mult; md >= min_mult; --md)
    for (const auto& mu : y_monomials_of_degree(B.ny(), md))
      for (int k = 0; k < B.m(); ++k, ++r) {
        M.rows.push_back({k, mu});
        for (const auto& [c, v] : multiply_to_row(gens[k], mu, cols)) trips.emplace_back(r, c, v);
      }
  M.entries.resize(r, cols.size());
  M.entries.setFromTriplets(trips.begin(), trips.end());
  M.entries.makeCompressed();
  return M;
}

}  // namespace

YMacaulayMatrix build_y_macaulay(const BilinearSequence& B, int d, ColumnLayout layout,
                                 MonomialOrder order) {
  if (d < 2) throw std::invalid_argument("Macaulay degree must be at least 2");
  bool hom = layout == ColumnLayout::Homogeneous ||
             (layout == ColumnLayout::Auto && B.is_homogeneous());
  if (hom && !B.is_homogeneous())
    throw std::invalid_argument("homogeneous layout requested for an affine sequence");
  ColumnIndex cols(B.nx(), B.ny(), d, hom, order);
  return assemble(B, cols, 0, d - 2, d);
}

YMacaulayMatrix degree_part(const BilinearSequence& B, int j, MonomialOrder order) {
  if (j < 2) throw std::invalid_argument("degree part needs j >= 2");
  if (!B.is_homogeneous()) throw std::invalid_argument("degree part needs a homogeneous sequence");
  // Top block of the homogeneous matrix of bound j: x-linear columns of degree j.
  ColumnIndex all(B.nx(), B.ny(), j, true, order);
  YMacaulayMatrix full = assemble(B, all, j - 2, j - 2, j);
  const Index top = all.first_column_of_degree_at_most(j - 1);
  YMacaulayMatrix part{B.field(), j,
                       std::vector<ColumnMonomial>(all.labels().begin(), all.labels().begin() + top),
                       full.rows, full.entries.leftCols(top)};
  part.entries.makeCompressed();
  return part;
}

void write_sms(std::ostream& out, const YMacaulayMatrix& M) {
  out << M.row_count() << ' ' << M.col_count() << ' ' << M.field.q() << '\n';
  for (Index i = 0; i < M.entries.outerSize(); ++i)
    for (SparseElemMatrix::InnerIterator it(M.entries, i); it; ++it)
      out << (i + 1) << ' ' << (it.col() + 1) << ' ' << it.value() << '\n';
  out << "0 0 0\n";
}

}  // namespace bilin
