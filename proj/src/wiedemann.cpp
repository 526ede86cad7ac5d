#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bilin/linalg.hpp"

namespace bilin {

namespace {

// Berlekamp-Massey; returns the connection polynomial C with C[0] = 1 and its length L.
std::pair<std::vector<Elem>, int> berlekamp_massey(const FieldCtx& F, const std::vector<Elem>& s) {
  std::vector<Elem> C{1}, B{1};
  int L = 0, shift = 1;
  Elem b = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Elem d = s[n];
    for (int i = 1; i <= L && i < static_cast<int>(C.size()); ++i) d = F.fma(d, C[i], s[n - i]);
    if (d == 0) {
      ++shift;
      continue;
    }
    const Elem coef = F.mul(d, F.inv(b));
    std::vector<Elem> T = C;
    if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
    for (std::size_t i = 0; i < B.size(); ++i) C[i + shift] = F.sub(C[i + shift], F.mul(coef, B[i]));
    if (2 * L <= static_cast<int>(n)) {
      L = static_cast<int>(n) + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  C.resize(std::max<std::size_t>(C.size(), L + 1), 0);
  return {C, L};
}

// Sparse random map stored per output coordinate.
struct SparseMap {
  std::vector<std::vector<std::pair<Index, Elem>>> rows;

  std::vector<Elem> apply(const FieldCtx& F, const std::vector<Elem>& w) const {
    std::vector<Elem> out(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Elem acc = 0;
      for (const auto& [j, v] : rows[i]) acc = F.fma(acc, v, w[j]);
      out[i] = acc;
    }
    return out;
  }
};

// out_dim x in_dim map; every input coordinate feeds `per_input` random outputs.
SparseMap random_map(const FieldCtx& F, Index out_dim, Index in_dim, int per_input, Rng& rng) {
  SparseMap P;
  P.rows.resize(out_dim);
  std::uniform_int_distribution<Index> pick(0, out_dim - 1);
  for (Index j = 0; j < in_dim; ++j)
    for (int t = 0; t < per_input; ++t) {
      Elem v = 0;
      while (v == 0) v = F.rand_elem(rng);
      P.rows[pick(rng)].emplace_back(j, v);
    }
  // Every output coordinate sees at least one input.
  std::uniform_int_distribution<Index> pick_in(0, in_dim - 1);
  for (auto& r : P.rows)
    if (r.empty()) {
      Elem v = 0;
      while (v == 0) v = F.rand_elem(rng);
      r.emplace_back(pick_in(rng), v);
    }
  return P;
}

// x -> M^T x as a dense vector (length cols).
std::vector<Elem> transpose_apply(const FieldCtx& F, const SparseElemMatrix& M, const std::vector<Elem>& x) {
  std::vector<std::uint64_t> acc(M.cols(), 0);
  const std::uint64_t q = F.q();
  for (Index r = 0; r < M.rows(); ++r) {
    if (x[r] == 0) continue;
    for (SparseElemMatrix::InnerIterator it(M, r); it; ++it)
      acc[it.col()] = (acc[it.col()] + static_cast<std::uint64_t>(x[r]) * it.value()) % q;
  }
  return {acc.begin(), acc.end()};
}

}  // namespace

double wiedemann_trial_failure_log2(const FieldCtx& F) {
  return std::log2(std::min(0.5, 2.0 / F.q()));
}

int wiedemann_trials_for(const FieldCtx& F, double target_log2) {
  return std::max(1, static_cast<int>(std::ceil(target_log2 / wiedemann_trial_failure_log2(F))));
}

RowVector left_multiply(const FieldCtx& F, const RowVector& z, const SparseElemMatrix& M) {
  if (z.size() != M.rows()) throw std::invalid_argument("left_multiply: length mismatch");
  std::vector<Elem> x(z.data(), z.data() + z.size());
  auto y = transpose_apply(F, M, x);
  RowVector out(M.cols());
  for (Index c = 0; c < M.cols(); ++c) out[c] = y[c];
  return out;
}

ConsistencyVerdict wiedemann_consistent(const FieldCtx& F, const SparseElemMatrix& M,
                                        const RowVector& b, int trials, Rng& rng) {
  if (b.size() != M.cols()) throw std::invalid_argument("wiedemann: b length differs from column count");
  const Index R = M.rows(), C = M.cols();
  ConsistencyVerdict out;
  if (b.isZero()) {
    out.tag = Verdict::Consistent;
    out.certificate = RowVector::Zero(R);
    out.failure_bound_log2 = -std::numeric_limits<double>::infinity();
    return out;
  }
  if (R == 0 || M.nonZeros() == 0) {
    out.failure_bound_log2 = -std::numeric_limits<double>::infinity();
    return out;
  }
  const Index n0 = std::min(R, C);
  const int per_input = std::max(2, static_cast<int>(std::ceil(std::log2(static_cast<double>(n0)))));
  std::vector<Elem> bv(b.data(), b.data() + b.size());
  for (int t = 0; t < trials; ++t) {
    ++out.trials_used;
    // Square operator S on F^{n0}: S = M^T P when R >= C, S = Q M^T otherwise.
    SparseMap pre, post;
    const bool tall = R >= C;
    if (tall) pre = random_map(F, R, n0, per_input, rng);
    else post = random_map(F, n0, C, per_input, rng);
    auto S = [&](const std::vector<Elem>& w) {
      std::vector<Elem> x = tall ? pre.apply(F, w) : w;
      std::vector<Elem> y = transpose_apply(F, M, x);
      return tall ? y : post.apply(F, y);
    };
    const std::vector<Elem> rhs = tall ? bv : post.apply(F, bv);
    std::vector<Elem> u(n0);
    for (auto& e : u) e = F.rand_elem(rng);
    std::vector<Elem> seq;
    seq.reserve(2 * n0);
    std::vector<Elem> v = rhs;
    for (Index i = 0; i < 2 * n0; ++i) {
      Elem s = 0;
      for (Index j = 0; j < n0; ++j) s = F.fma(s, u[j], v[j]);
      seq.push_back(s);
      if (i + 1 < 2 * n0) v = S(v);
    }
    auto [conn, L] = berlekamp_massey(F, seq);
    if (L == 0 || conn[L] == 0) continue;
    // f(λ) = sum_i conn[L-i] λ^i; w = -(1/f0) sum_{i>=1} f_i S^{i-1} rhs
    const Elem scale = F.neg(F.inv(conn[L]));
    std::vector<Elem> w(n0, 0), kv = rhs;
    for (int i = 1; i <= L; ++i) {
      const Elem fi = conn[L - i];
      if (fi != 0)
        for (Index j = 0; j < n0; ++j) w[j] = F.fma(w[j], fi, kv[j]);
      if (i < L) kv = S(kv);
    }
    for (auto& e : w) e = F.mul(e, scale);
    std::vector<Elem> z = tall ? pre.apply(F, w) : w;
    if (transpose_apply(F, M, z) == bv) {
      out.tag = Verdict::Consistent;
      out.certificate = RowVector(R);
      for (Index r = 0; r < R; ++r) out.certificate[r] = z[r];
      out.failure_bound_log2 = -std::numeric_limits<double>::infinity();
      return out;
    }
  }
  out.failure_bound_log2 = out.trials_used * wiedemann_trial_failure_log2(F);
  return out;
}

}  // namespace bilin
