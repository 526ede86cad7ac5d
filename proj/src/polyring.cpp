#include "bilin/polyring.hpp"

#include <stdexcept>
#include <string>

namespace bilin {

namespace {

ElemMatrix mat_mul(const FieldCtx& F, const ElemMatrix& X, const ElemMatrix& Y) {
  if (X.cols() != Y.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  ElemMatrix Z(X.rows(), Y.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
      Elem acc = 0;
      for (Eigen::Index k = 0; k < X.cols(); ++k) acc = F.fma(acc, X(i, k), Y(k, j));
      Z(i, j) = acc;
    }
  return Z;
}

ElemVector mat_vec(const FieldCtx& F, const ElemMatrix& X, const ElemVector& v) {
  return mat_mul(F, X, ElemMatrix(v));
}

ElemVector vec_add(const FieldCtx& F, const ElemVector& a, const ElemVector& b) {
  ElemVector r(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Elem dot(const FieldCtx& F, const ElemVector& a, const ElemVector& b) {
  Elem acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc = F.fma(acc, a[i], b[i]);
  return acc;
}

void check_poly_shape(const BilinearPoly& p, int nx, int ny, std::uint32_t q) {
  if (p.A.rows() != nx || p.A.cols() != ny || p.b.size() != nx || p.c.size() != ny)
    throw std::invalid_argument("bilinear polynomial does not match (n_x, n_y)");
  auto in_range = [q](Elem e) { return e < q; };
  bool ok = p.d0 < q;
  for (Eigen::Index i = 0; i < p.A.size(); ++i) ok = ok && in_range(p.A.data()[i]);
  for (Eigen::Index i = 0; i < p.b.size(); ++i) ok = ok && in_range(p.b[i]);
  for (Eigen::Index i = 0; i < p.c.size(); ++i) ok = ok && in_range(p.c[i]);
  if (!ok) throw std::invalid_argument("coefficient not reduced mod q");
}

}  // namespace

void Params::validate() const {
  if (nx < 1 || ny < 1 || m < 1)
    throw std::invalid_argument("parameters need n_x, n_y, m >= 1");
  FieldCtx check(q);
  (void)check;
}

YMonomial::YMonomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

YMonomial YMonomial::variable(int ny, int j) {
  YMonomial r(ny);
  return r.times_var(j);
}

YMonomial YMonomial::operator*(const YMonomial& o) const {
  if (o.nvars() != nvars()) throw std::invalid_argument("y-monomials over different n_y");
  YMonomial r = *this;
  for (int j = 0; j < nvars(); ++j) r.exps_[j] += o.exps_[j];
  r.degree_ += o.degree_;
  return r;
}

YMonomial YMonomial::times_var(int j) const {
  YMonomial r = *this;
  ++r.exps_.at(j);
  ++r.degree_;
  return r;
}

bool YMonomial::divides(const YMonomial& o) const {
  for (int j = 0; j < nvars(); ++j)
    if (exps_[j] > o.exps_[j]) return false;
  return true;
}

std::string ColumnMonomial::to_string() const {
  std::string s;
  if (x_index >= 0) s = "x" + std::to_string(x_index + 1);
  for (int j = 0; j < y.nvars(); ++j) {
    if (y[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "y" + std::to_string(j + 1);
    if (y[j] > 1) s += "^" + std::to_string(y[j]);
  }
  return s.empty() ? "1" : s;
}

std::strong_ordering cmp_monomials(const ColumnMonomial& a, const ColumnMonomial& b,
                                   MonomialOrder order) {
  if (a.y.nvars() != b.y.nvars()) throw std::invalid_argument("monomials over different n_y");
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const int ny = a.y.nvars();
  if (order == MonomialOrder::Grlex) {
    if (a.x_index != b.x_index) {
      // The monomial carrying the earlier x-variable wins the lex comparison.
      if (a.x_index < 0) return std::strong_ordering::less;
      if (b.x_index < 0) return std::strong_ordering::greater;
      return a.x_index < b.x_index ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    for (int j = 0; j < ny; ++j)
      if (a.y[j] != b.y[j]) return a.y[j] <=> b.y[j];
    return std::strong_ordering::equal;
  }
  // grevlex: the last differing variable decides, smaller exponent is greater.
  for (int j = ny - 1; j >= 0; --j)
    if (a.y[j] != b.y[j]) return b.y[j] <=> a.y[j];
  if (a.x_index == b.x_index) return std::strong_ordering::equal;
  int last = std::max(a.x_index, b.x_index);
  int ea = a.x_index == last ? 1 : 0, eb = b.x_index == last ? 1 : 0;
  return eb <=> ea;
}

BilinearPoly BilinearPoly::zero(int nx, int ny) {
  return {ElemMatrix::Zero(nx, ny), ElemVector::Zero(nx), ElemVector::Zero(ny), 0};
}

bool BilinearPoly::is_homogeneous() const {
  return d0 == 0 && (b.size() == 0 || b.isZero()) && (c.size() == 0 || c.isZero());
}

bool BilinearPoly::is_zero() const {
  return is_homogeneous() && (A.size() == 0 || A.isZero());
}

BilinearSequence::BilinearSequence(FieldCtx field, int nx, int ny, std::vector<BilinearPoly> polys)
    : field_(field), nx_(nx), ny_(ny), polys_(std::move(polys)) {
  if (nx < 0 || ny < 0) throw std::invalid_argument("negative variable count");
  for (const auto& p : polys_) check_poly_shape(p, nx, ny, field_.q());
}

bool BilinearSequence::is_homogeneous() const {
  for (const auto& p : polys_)
    if (!p.is_homogeneous()) return false;
  return true;
}

BilinearSequence BilinearSequence::quadratic_part() const {
  std::vector<BilinearPoly> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) {
    BilinearPoly h = BilinearPoly::zero(nx_, ny_);
    h.A = p.A;
    out.push_back(std::move(h));
  }
  return {field_, nx_, ny_, std::move(out)};
}

void add_scaled(YPoly& acc, const YPoly& p, Elem scale, const FieldCtx& F) {
  if (scale == 0) return;
  for (const auto& [mono, coef] : p) {
    auto [it, fresh] = acc.try_emplace(mono, 0);
    it->second = F.fma(it->second, coef, scale);
    if (it->second == 0) acc.erase(it);
  }
}

YPoly multiply(const YPoly& a, const YPoly& b, const FieldCtx& F) {
  YPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto [it, fresh] = r.try_emplace(ma * mb, 0);
      it->second = F.fma(it->second, ca, cb);
      if (it->second == 0) r.erase(it);
    }
  return r;
}

ElemVector evaluate(const BilinearSequence& B, const ElemVector& u, const ElemVector& v) {
  if (u.size() != B.nx() || v.size() != B.ny())
    throw std::invalid_argument("evaluation point has the wrong length");
  const FieldCtx& F = B.field();
  ElemVector out(B.m());
  for (int k = 0; k < B.m(); ++k) {
    const BilinearPoly& f = B[k];
    Elem acc = f.d0;
    for (int i = 0; i < B.nx(); ++i) {
      if (u[i] == 0) continue;
      Elem row = f.b[i];
      for (int j = 0; j < B.ny(); ++j) row = F.fma(row, f.A(i, j), v[j]);
      acc = F.fma(acc, row, u[i]);
    }
    for (int j = 0; j < B.ny(); ++j) acc = F.fma(acc, f.c[j], v[j]);
    out[k] = acc;
  }
  return out;
}

bool is_solution(const BilinearSequence& B, const ElemVector& u, const ElemVector& v) {
  return evaluate(B, u, v).isZero();
}

AffineChange AffineChange::identity(int nx, int ny) {
  return {ElemMatrix::Identity(nx, nx), ElemVector::Zero(nx), ElemMatrix::Identity(ny, ny),
          ElemVector::Zero(ny)};
}

AffineChange AffineChange::compose(const AffineChange& inner, const FieldCtx& F) const {
  return {mat_mul(F, Tx, inner.Tx), vec_add(F, mat_vec(F, Tx, inner.tx), tx),
          mat_mul(F, Ty, inner.Ty), vec_add(F, mat_vec(F, Ty, inner.ty), ty)};
}

void AffineChange::apply(const ElemVector& u_new, const ElemVector& v_new, const FieldCtx& F,
                         ElemVector& u, ElemVector& v) const {
  u = vec_add(F, mat_vec(F, Tx, u_new), tx);
  v = vec_add(F, mat_vec(F, Ty, v_new), ty);
}

BilinearSequence substitute(const BilinearSequence& B, const AffineChange& ch) {
  const FieldCtx& F = B.field();
  if (ch.Tx.rows() != B.nx() || ch.tx.size() != B.nx() || ch.Ty.rows() != B.ny() ||
      ch.ty.size() != B.ny())
    throw std::invalid_argument("substitution does not match the sequence");
  const int nx2 = static_cast<int>(ch.Tx.cols()), ny2 = static_cast<int>(ch.Ty.cols());
  ElemMatrix TxT = ch.Tx.transpose(), TyT = ch.Ty.transpose();
  std::vector<BilinearPoly> out;
  out.reserve(B.m());
  for (const auto& f : B.polys()) {
    BilinearPoly g;
    ElemVector Aty = mat_vec(F, f.A, ch.ty);
    ElemVector Attx = mat_vec(F, f.A.transpose(), ch.tx);
    g.A = mat_mul(F, mat_mul(F, TxT, f.A), ch.Ty);
    g.b = mat_vec(F, TxT, vec_add(F, Aty, f.b));
    g.c = mat_vec(F, TyT, vec_add(F, Attx, f.c));
    g.d0 = F.add(F.add(dot(F, ch.tx, Aty), dot(F, f.b, ch.tx)), F.add(dot(F, f.c, ch.ty), f.d0));
    out.push_back(std::move(g));
  }
  return {F, nx2, ny2, std::move(out)};
}

BilinearSequence partial_evaluate(const BilinearSequence& B, const ElemVector& u_prefix,
                                  const ElemVector& v_prefix) {
  const int ax = static_cast<int>(u_prefix.size()), ay = static_cast<int>(v_prefix.size());
  if (ax > B.nx() || ay > B.ny()) throw std::invalid_argument("guess prefix too long");
  AffineChange ch;
  ch.Tx = ElemMatrix::Zero(B.nx(), B.nx() - ax);
  ch.Tx.bottomRows(B.nx() - ax).setIdentity();
  ch.tx = ElemVector::Zero(B.nx());
  ch.tx.head(ax) = u_prefix;
  ch.Ty = ElemMatrix::Zero(B.ny(), B.ny() - ay);
  ch.Ty.bottomRows(B.ny() - ay).setIdentity();
  ch.ty = ElemVector::Zero(B.ny());
  ch.ty.head(ay) = v_prefix;
  return substitute(B, ch);
}

BilinearSequence homogenize(const BilinearSequence& B) {
  const int nx = B.nx(), ny = B.ny();
  std::vector<BilinearPoly> out;
  for (const auto& f : B.polys()) {
    BilinearPoly h = BilinearPoly::zero(nx + 1, ny + 1);
    h.A(0, 0) = f.d0;
    h.A.block(1, 0, nx, 1) = f.b;
    h.A.block(0, 1, 1, ny) = f.c.transpose();
    h.A.block(1, 1, nx, ny) = f.A;
    out.push_back(std::move(h));
  }
  return {B.field(), nx + 1, ny + 1, std::move(out)};
}

BilinearSequence dehomogenize(const BilinearSequence& Bh) {
  if (Bh.nx() < 1 || Bh.ny() < 1)
    throw std::invalid_argument("dehomogenize needs x0 and y0 present");
  const FieldCtx& F = Bh.field();
  const int nx = Bh.nx() - 1, ny = Bh.ny() - 1;
  std::vector<BilinearPoly> out;
  for (const auto& h : Bh.polys()) {
    BilinearPoly f = BilinearPoly::zero(nx, ny);
    f.A = h.A.block(1, 1, nx, ny);
    for (int i = 0; i < nx; ++i) f.b[i] = F.add(h.A(i + 1, 0), h.b[i + 1]);
    for (int j = 0; j < ny; ++j) f.c[j] = F.add(h.A(0, j + 1), h.c[j + 1]);
    f.d0 = F.add(F.add(h.A(0, 0), h.d0), F.add(h.b[0], h.c[0]));
    out.push_back(std::move(f));
  }
  return {F, nx, ny, std::move(out)};
}

YPolyMatrix jacobian_x(const BilinearSequence& B) {
  const int ny = B.ny();
  YPolyMatrix J(B.m(), std::vector<YPoly>(B.nx()));
  for (int i = 0; i < B.m(); ++i)
    for (int j = 0; j < B.nx(); ++j) {
      YPoly& e = J[i][j];
      for (int k = 0; k < ny; ++k)
        if (B[i].A(j, k) != 0) e[YMonomial::variable(ny, k)] = B[i].A(j, k);
      if (B[i].b[j] != 0) e[YMonomial(ny)] = B[i].b[j];
    }
  return J;
}

ElemVector random_vector(const FieldCtx& F, int n, Rng& rng) {
  ElemVector v(n);
  for (int i = 0; i < n; ++i) v[i] = F.rand_elem(rng);
  return v;
}

BilinearSequence random_sequence(const Params& p, bool homogeneous, Rng& rng) {
  FieldCtx F(p.q);
  if (p.nx < 0 || p.ny < 0 || p.m < 0) throw std::invalid_argument("negative parameters");
  std::vector<BilinearPoly> polys;
  polys.reserve(p.m);
  for (int k = 0; k < p.m; ++k) {
    BilinearPoly f = BilinearPoly::zero(p.nx, p.ny);
    for (int i = 0; i < p.nx; ++i)
      for (int j = 0; j < p.ny; ++j) f.A(i, j) = F.rand_elem(rng);
    if (!homogeneous) {
      f.b = random_vector(F, p.nx, rng);
      f.c = random_vector(F, p.ny, rng);
      f.d0 = F.rand_elem(rng);
    }
    polys.push_back(std::move(f));
  }
  return {F, p.nx, p.ny, std::move(polys)};
}

BilinearSequence plant_solution(const BilinearSequence& B, const ElemVector& u,
                                const ElemVector& v) {
  ElemVector vals = evaluate(B, u, v);
  std::vector<BilinearPoly> polys = B.polys();
  for (int k = 0; k < B.m(); ++k) polys[k].d0 = B.field().sub(polys[k].d0, vals[k]);
  return {B.field(), B.nx(), B.ny(), std::move(polys)};
}

bool verify_syzygy(const BilinearSequence& B, const YPolyVector& G) {
  if (static_cast<int>(G.size()) != B.m())
    throw std::invalid_argument("syzygy length differs from the sequence length");
  const FieldCtx& F = B.field();
  const int ny = B.ny();
  // Coefficients keyed by (x index or -1, y-monomial).
  std::map<std::pair<int, YMonomial>, Elem> total;
  auto accumulate = [&](int xi, const YMonomial& mono, Elem a, Elem b) {
    if (a == 0 || b == 0) return;
    auto [it, fresh] = total.try_emplace({xi, mono}, 0);
    it->second = F.fma(it->second, a, b);
  };
  for (int k = 0; k < B.m(); ++k) {
    const BilinearPoly& f = B[k];
    for (const auto& [mu, g] : G[k]) {
      if (mu.nvars() != ny) throw std::invalid_argument("syzygy entry over the wrong n_y");
      for (int i = 0; i < B.nx(); ++i) {
        for (int j = 0; j < ny; ++j) accumulate(i, mu.times_var(j), g, f.A(i, j));
        accumulate(i, mu, g, f.b[i]);
      }
      for (int j = 0; j < ny; ++j) accumulate(-1, mu.times_var(j), g, f.c[j]);
      accumulate(-1, mu, g, f.d0);
    }
  }
  for (const auto& [key, coef] : total)
    if (coef != 0) return false;
  return true;
}

}  // namespace bilin
