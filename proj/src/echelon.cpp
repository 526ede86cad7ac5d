#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <variant>

#include "bilin/linalg.hpp"

namespace bilin {
namespace detail {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class S>
struct ModArith;

// Exact integer arithmetic in doubles: every value stays below 2^53, so products
// are accumulated by Eigen's GEMM and reduced once per chunk of the inner dimension.
template <>
struct ModArith<double> {
  explicit ModArith(std::uint32_t modulus) : q(modulus), qinv(1.0 / modulus) {
    const double sq = (q - 1.0) * (q - 1.0);
    chunk = sq == 0 ? Index{1} << 40 : std::max<Index>(1, static_cast<Index>((9007199254740992.0 - q) / sq));
  }
  double reduce(double x) const {
    double t = x - q * std::floor(x * qinv);
    if (t < 0) t += q;
    else if (t >= q) t -= q;
    return t;
  }
  // x + c*y with canonical inputs
  double axpy(double x, double c, double y) const { return reduce(x + c * y); }
  double q, qinv;
  Index chunk;
};

template <>
struct ModArith<std::uint64_t> {
  explicit ModArith(std::uint32_t modulus) : q(modulus) {}
  std::uint64_t reduce(std::uint64_t x) const { return x % q; }
  std::uint64_t axpy(std::uint64_t x, std::uint64_t c, std::uint64_t y) const { return (x + c * y) % q; }
  std::uint64_t q;
};

// C <- C - A*B (mod q)
void gemm_sub(const ModArith<double>& ar, Mat<double>& C, const Mat<double>& A, const Mat<double>& B) {
  if (A.cols() == 0 || C.size() == 0) return;
  Mat<double> T(C.rows(), C.cols());
  const double q = ar.q;
  for (Index k0 = 0; k0 < A.cols(); k0 += ar.chunk) {
    const Index kc = std::min(ar.chunk, A.cols() - k0);
    T.noalias() = A.middleCols(k0, kc) * B.middleRows(k0, kc);
    double* c = C.data();
    const double* t = T.data();
    const Index n = C.size();
    for (Index i = 0; i < n; ++i) {
      double v = c[i] - ar.reduce(t[i]);
      c[i] = v < 0 ? v + q : v;
    }
  }
}

void gemm_sub(const ModArith<std::uint64_t>& ar, Mat<std::uint64_t>& C, const Mat<std::uint64_t>& A,
              const Mat<std::uint64_t>& B) {
  for (Index i = 0; i < A.rows(); ++i)
    for (Index k = 0; k < A.cols(); ++k) {
      const std::uint64_t a = A(i, k);
      if (a == 0) continue;
      const std::uint64_t na = ar.q - a;
      for (Index j = 0; j < C.cols(); ++j) C(i, j) = ar.axpy(C(i, j), na, B(k, j));
    }
}

template <class S>
Mat<S> gather_cols(const Mat<S>& M, const std::vector<Index>& cols) {
  Mat<S> out(M.rows(), static_cast<Index>(cols.size()));
  for (Index i = 0; i < M.rows(); ++i)
    for (Index s = 0; s < out.cols(); ++s) out(i, s) = M(i, cols[s]);
  return out;
}

constexpr Index kLeafRows = 32;

template <class S>
class Kernel {
 public:
  using Scalar = S;

  Kernel(const FieldCtx& F, Index cols) : F_(F), ar_(F.q()), cols_(cols) {
    free_.resize(cols);
    std::iota(free_.begin(), free_.end(), Index{0});
    R_.resize(0, cols);
    rebuild_where();
  }

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(piv_.size()); }
  const std::vector<Index>& pivots() const { return piv_; }
  bool is_pivot(Index col) const { return where_[col] < 0; }

  std::vector<Index> insert_dense(const Mat<S>& N) {
    if (N.rows() == 0) return {};
    if (rank() == 0) {
      const Index before = rank();
      absorb_fresh(N);
      return ids_from(before);
    }
    Mat<S> Np = gather_cols(N, piv_);
    Mat<S> Nn = gather_cols(N, free_);
    return insert_parts(Np, std::move(Nn));
  }

  std::vector<Index> insert_sparse(const std::vector<SparseRow>& rows) {
    const Index k = static_cast<Index>(rows.size());
    Mat<S> Np = Mat<S>::Zero(k, rank());
    Mat<S> Nn = Mat<S>::Zero(k, static_cast<Index>(free_.size()));
    for (Index i = 0; i < k; ++i)
      for (const auto& [c, v] : rows[i]) {
        if (c < 0 || c >= cols_) throw std::out_of_range("sparse row column out of range");
        const Index w = where_[c];
        if (w >= 0) Nn(i, w) = ar_.reduce(static_cast<S>(v));
        else Np(i, -w - 1) = ar_.reduce(static_cast<S>(v));
      }
    return insert_parts(Np, std::move(Nn));
  }

  void prepend_columns(Index n) {
    if (n <= 0) return;
    for (auto& p : piv_) p += n;
    std::vector<Index> f(n);
    std::iota(f.begin(), f.end(), Index{0});
    for (Index c : free_) f.push_back(c + n);
    free_ = std::move(f);
    Mat<S> R2 = Mat<S>::Zero(rank(), static_cast<Index>(free_.size()));
    R2.rightCols(R_.cols()) = R_;
    R_ = std::move(R2);
    cols_ += n;
    rebuild_where();
  }

  Index pivot_of(Index id) const { return piv_.at(id); }

  RowVector row(Index id) const {
    RowVector r = RowVector::Zero(cols_);
    r[piv_.at(id)] = 1;
    for (std::size_t s = 0; s < free_.size(); ++s) r[free_[s]] = static_cast<Elem>(R_(id, s));
    return r;
  }

  SparseRow sparse_row(Index id) const {
    SparseRow r;
    r.emplace_back(piv_.at(id), 1);
    for (std::size_t s = 0; s < free_.size(); ++s)
      if (R_(id, s) != 0) r.emplace_back(free_[s], static_cast<Elem>(R_(id, s)));
    std::sort(r.begin(), r.end());
    return r;
  }

 private:
  std::vector<Index> ids_from(Index first) const {
    std::vector<Index> ids(rank() - first);
    std::iota(ids.begin(), ids.end(), first);
    return ids;
  }

  void rebuild_where() {
    where_.assign(cols_, 0);
    for (std::size_t s = 0; s < free_.size(); ++s) where_[free_[s]] = static_cast<Index>(s);
    for (std::size_t id = 0; id < piv_.size(); ++id) where_[piv_[id]] = -static_cast<Index>(id) - 1;
  }

  // Rows already given on (pivot part, free part) coordinates.
  std::vector<Index> insert_parts(const Mat<S>& Np, Mat<S> Nn) {
    if (Nn.rows() == 0 || Nn.cols() == 0) return {};
    if (rank() > 0) gemm_sub(ar_, Nn, Np, R_);
    Kernel sub(F_, Nn.cols());
    sub.absorb_fresh(Nn);
    if (sub.rank() == 0) return {};
    const Index before = rank();
    Mat<S> top = gather_cols(R_, sub.free_);
    if (before > 0) {
      Mat<S> coef = gather_cols(R_, sub.piv_);
      gemm_sub(ar_, top, coef, sub.R_);
    }
    R_.resize(before + sub.rank(), top.cols());
    R_.topRows(before) = top;
    R_.bottomRows(sub.rank()) = sub.R_;
    for (Index p : sub.piv_) piv_.push_back(free_[p]);
    std::vector<Index> nf;
    nf.reserve(sub.free_.size());
    for (Index s : sub.free_) nf.push_back(free_[s]);
    free_ = std::move(nf);
    rebuild_where();
    return ids_from(before);
  }

  // Echelonize N into an empty kernel whose width equals N.cols().
  void absorb_fresh(const Mat<S>& N) {
    if (N.rows() <= kLeafRows) {
      leaf(N);
      return;
    }
    const Index half = N.rows() / 2;
    absorb_fresh(N.topRows(half));
    insert_dense(N.bottomRows(N.rows() - half));
  }

  void leaf(Mat<S> N) {
    const Index k = N.rows(), f = N.cols();
    Index r = 0;
    std::vector<Index> pc;
    for (Index col = 0; col < f && r < k; ++col) {
      Index p = r;
      while (p < k && N(p, col) == 0) ++p;
      if (p == k) continue;
      if (p != r) N.row(p).swap(N.row(r));
      const S inv = static_cast<S>(F_.inv(static_cast<Elem>(N(r, col))));
      for (Index j = col; j < f; ++j) N(r, j) = ar_.axpy(S(0), inv, N(r, j));
      for (Index i = 0; i < k; ++i) {
        if (i == r || N(i, col) == 0) continue;
        const S c = static_cast<S>(ar_.q) - N(i, col);
        for (Index j = col; j < f; ++j) N(i, j) = ar_.axpy(N(i, j), c, N(r, j));
      }
      pc.push_back(col);
      ++r;
    }
    std::vector<Index> nf;
    std::size_t t = 0;
    for (Index c = 0; c < f; ++c) {
      if (t < pc.size() && pc[t] == c) ++t;
      else nf.push_back(c);
    }
    Mat<S> top = N.topRows(r);
    R_ = gather_cols(top, nf);
    piv_ = std::move(pc);
    free_ = std::move(nf);
    rebuild_where();
  }

  FieldCtx F_;
  ModArith<S> ar_;
  Index cols_;
  std::vector<Index> piv_;
  std::vector<Index> free_;
  std::vector<Index> where_;
  Mat<S> R_;
};

constexpr std::uint32_t kDoubleLimit = 1u << 26;

class EchelonImpl {
 public:
  EchelonImpl(const FieldCtx& F, Index cols)
      : k_(F.q() < kDoubleLimit ? Variant(std::in_place_type<Kernel<double>>, F, cols)
                                : Variant(std::in_place_type<Kernel<std::uint64_t>>, F, cols)) {}
  template <class Fn>
  decltype(auto) visit(Fn&& fn) { return std::visit(std::forward<Fn>(fn), k_); }
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const { return std::visit(std::forward<Fn>(fn), k_); }

 private:
  using Variant = std::variant<Kernel<double>, Kernel<std::uint64_t>>;
  Variant k_;
};

}  // namespace detail

EchelonBasis::EchelonBasis(const FieldCtx& F, Index cols)
    : field_(F), impl_(std::make_unique<detail::EchelonImpl>(F, cols)) {}
EchelonBasis::~EchelonBasis() = default;
EchelonBasis::EchelonBasis(EchelonBasis&&) noexcept = default;
EchelonBasis& EchelonBasis::operator=(EchelonBasis&&) noexcept = default;

Index EchelonBasis::cols() const {
  return impl_->visit([](const auto& k) { return k.cols(); });
}
Index EchelonBasis::rank() const {
  return impl_->visit([](const auto& k) { return k.rank(); });
}

std::vector<Index> EchelonBasis::insert(const DenseElemMatrix& rows) {
  if (rows.cols() != cols()) throw std::invalid_argument("row width differs from the basis width");
  return impl_->visit([&](auto& k) {
    using S = typename std::decay_t<decltype(k)>::Scalar;
    return k.insert_dense(rows.cast<S>());
  });
}

std::vector<Index> EchelonBasis::insert(const std::vector<SparseRow>& rows) {
  if (rows.empty()) return {};
  return impl_->visit([&](auto& k) { return k.insert_sparse(rows); });
}

void EchelonBasis::prepend_columns(Index n) {
  impl_->visit([&](auto& k) { k.prepend_columns(n); });
}

bool EchelonBasis::is_pivot(Index col) const {
  return impl_->visit([&](const auto& k) { return k.is_pivot(col); });
}

Index EchelonBasis::pivot_of(Index id) const {
  return impl_->visit([&](const auto& k) { return k.pivot_of(id); });
}

std::vector<Index> EchelonBasis::ids_by_pivot() const {
  return impl_->visit([](const auto& k) {
    std::vector<Index> ids(k.rank());
    std::iota(ids.begin(), ids.end(), Index{0});
    const auto& p = k.pivots();
    std::sort(ids.begin(), ids.end(), [&](Index a, Index b) { return p[a] < p[b]; });
    return ids;
  });
}

RowVector EchelonBasis::row(Index id) const {
  return impl_->visit([&](const auto& k) { return k.row(id); });
}

SparseRow EchelonBasis::sparse_row(Index id) const {
  return impl_->visit([&](const auto& k) { return k.sparse_row(id); });
}

std::vector<Index> EchelonBasis::ids_with_pivot_from(Index col) const {
  return impl_->visit([&](const auto& k) {
    std::vector<Index> ids;
    const auto& p = k.pivots();
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] >= col) ids.push_back(static_cast<Index>(i));
    return ids;
  });
}

EchelonResult EchelonBasis::result() const {
  EchelonResult res;
  auto ids = ids_by_pivot();
  res.rank = static_cast<Index>(ids.size());
  res.reduced.resize(res.rank, cols());
  for (Index i = 0; i < res.rank; ++i) {
    res.reduced.row(i) = row(ids[i]);
    res.pivots.push_back(pivot_of(ids[i]));
  }
  return res;
}

EchelonResult row_echelon(const FieldCtx& F, const DenseElemMatrix& M) {
  EchelonBasis E(F, M.cols());
  E.insert(M);
  return E.result();
}

Index rank(const FieldCtx& F, const DenseElemMatrix& M) {
  EchelonBasis E(F, M.cols());
  E.insert(M);
  return E.rank();
}

Index rank(const FieldCtx& F, const SparseElemMatrix& M) {
  EchelonBasis E(F, M.cols());
  std::vector<SparseRow> rows;
  constexpr Index kBatch = 4096;
  for (Index i = 0; i < M.rows(); ++i) {
    SparseRow r;
    for (SparseElemMatrix::InnerIterator it(M, i); it; ++it) r.emplace_back(it.col(), it.value());
    rows.push_back(std::move(r));
    if (static_cast<Index>(rows.size()) == kBatch) {
      E.insert(rows);
      rows.clear();
    }
  }
  E.insert(rows);
  return E.rank();
}

std::optional<RowVector> solve_left(const FieldCtx& F, const DenseElemMatrix& M, const RowVector& b) {
  if (b.size() != M.cols()) throw std::invalid_argument("solve_left: b length differs from column count");
  const Index R = M.rows(), C = M.cols();
  // z M = b  <=>  [M^T | b^T] is consistent; unknown z_i sits in column i.
  DenseElemMatrix aug(C, R + 1);
  aug.leftCols(R) = M.transpose();
  aug.col(R) = b.transpose();
  EchelonBasis E(F, R + 1);
  E.insert(aug);
  if (E.is_pivot(R)) return std::nullopt;
  RowVector z = RowVector::Zero(R);
  for (Index id = 0; id < E.rank(); ++id) z[E.pivot_of(id)] = E.row(id)[R];
  return z;
}

}  // namespace bilin
