#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bilin/field.hpp"

namespace bilin {

using ElemMatrix = Eigen::Matrix<Elem, Eigen::Dynamic, Eigen::Dynamic>;
using ElemVector = Eigen::Matrix<Elem, Eigen::Dynamic, 1>;

struct Params {
  int nx = 0;
  int ny = 0;
  int m = 0;
  std::uint32_t q = 2;

  // n_x, n_y, m >= 1 and q prime; solver-facing callers add their own conditions.
  void validate() const;
  friend bool operator==(const Params&, const Params&) = default;
};

enum class MonomialOrder { Grlex, Grevlex };

class YMonomial {
 public:
  YMonomial() = default;
  explicit YMonomial(int ny) : exps_(ny, 0) {}
  explicit YMonomial(std::vector<std::uint16_t> exps);
  static YMonomial variable(int ny, int j);

  int nvars() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  std::uint16_t operator[](int j) const { return exps_[j]; }
  const std::vector<std::uint16_t>& exponents() const { return exps_; }

  YMonomial operator*(const YMonomial& o) const;
  YMonomial times_var(int j) const;
  bool divides(const YMonomial& o) const;

  // Lexicographic on exponent vectors; only used as a container key.
  friend auto operator<=>(const YMonomial& a, const YMonomial& b) { return a.exps_ <=> b.exps_; }
  friend bool operator==(const YMonomial& a, const YMonomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<std::uint16_t> exps_;
  int degree_ = 0;
};

// x_i * mu with at most one x-variable; x_index < 0 means a pure y-monomial.
struct ColumnMonomial {
  int x_index = -1;
  YMonomial y;

  int degree() const { return y.degree() + (x_index >= 0 ? 1 : 0); }
  std::string to_string() const;
  friend bool operator==(const ColumnMonomial&, const ColumnMonomial&) = default;
};

// Degree first, then grlex or grevlex with x1 > ... > x_nx > y1 > ... > y_ny.
std::strong_ordering cmp_monomials(const ColumnMonomial& a, const ColumnMonomial& b,
                                   MonomialOrder order = MonomialOrder::Grlex);

// f = x A y^T + b x^T + c y^T + d0
struct BilinearPoly {
  ElemMatrix A;
  ElemVector b;
  ElemVector c;
  Elem d0 = 0;

  static BilinearPoly zero(int nx, int ny);
  bool is_homogeneous() const;
  bool is_zero() const;
  friend bool operator==(const BilinearPoly& p, const BilinearPoly& o) {
    return p.A == o.A && p.b == o.b && p.c == o.c && p.d0 == o.d0;
  }
};

class BilinearSequence {
 public:
  // Shapes are checked; entries must already be reduced mod q. Zero-width blocks
  // are accepted so that fully evaluated systems stay representable.
  BilinearSequence(FieldCtx field, int nx, int ny, std::vector<BilinearPoly> polys);

  const FieldCtx& field() const { return field_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int m() const { return static_cast<int>(polys_.size()); }
  Params params() const { return {nx_, ny_, m(), field_.q()}; }

  const BilinearPoly& operator[](int k) const { return polys_[k]; }
  const std::vector<BilinearPoly>& polys() const { return polys_; }
  bool is_homogeneous() const;
  // Quadratic parts only.
  BilinearSequence quadratic_part() const;

  friend bool operator==(const BilinearSequence& a, const BilinearSequence& b) {
    return a.field_ == b.field_ && a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.polys_ == b.polys_;
  }

 private:
  FieldCtx field_;
  int nx_;
  int ny_;
  std::vector<BilinearPoly> polys_;
};

using YPoly = std::map<YMonomial, Elem>;
using YPolyVector = std::vector<YPoly>;
using YPolyMatrix = std::vector<std::vector<YPoly>>;

void add_scaled(YPoly& acc, const YPoly& p, Elem scale, const FieldCtx& F);
YPoly multiply(const YPoly& a, const YPoly& b, const FieldCtx& F);

ElemVector evaluate(const BilinearSequence& B, const ElemVector& u, const ElemVector& v);
bool is_solution(const BilinearSequence& B, const ElemVector& u, const ElemVector& v);

// Original coordinates expressed through new ones: x = Tx x' + tx, y = Ty y' + ty.
struct AffineChange {
  ElemMatrix Tx;
  ElemVector tx;
  ElemMatrix Ty;
  ElemVector ty;

  static AffineChange identity(int nx, int ny);
  // this ∘ inner: original = this(inner(x''))
  AffineChange compose(const AffineChange& inner, const FieldCtx& F) const;
  void apply(const ElemVector& u_new, const ElemVector& v_new, const FieldCtx& F, ElemVector& u,
             ElemVector& v) const;
};

BilinearSequence substitute(const BilinearSequence& B, const AffineChange& change);

// Fixes x_1..x_{a_x} = u_prefix and y_1..y_{a_y} = v_prefix.
BilinearSequence partial_evaluate(const BilinearSequence& B, const ElemVector& u_prefix,
                                  const ElemVector& v_prefix);

// New variables x0, y0 sit at index 0.
BilinearSequence homogenize(const BilinearSequence& B);
BilinearSequence dehomogenize(const BilinearSequence& Bh);

// m x n_x matrix of affine-linear y-polynomials d f_i / d x_j.
YPolyMatrix jacobian_x(const BilinearSequence& B);

BilinearSequence random_sequence(const Params& p, bool homogeneous, Rng& rng);
BilinearSequence plant_solution(const BilinearSequence& B, const ElemVector& u,
                                const ElemVector& v);
ElemVector random_vector(const FieldCtx& F, int n, Rng& rng);

// True iff sum_i G_i f_i expands to the zero polynomial.
bool verify_syzygy(const BilinearSequence& B, const YPolyVector& G);

}  // namespace bilin
