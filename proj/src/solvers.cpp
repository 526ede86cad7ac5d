#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "bilin/analysis.hpp"
#include "bilin/solvers.hpp"
#include "span_chain.hpp"

namespace bilin {

namespace detail {

namespace {
constexpr std::size_t kBatchRows = 4096;
}

SpanChain::SpanChain(const BilinearSequence& B, MonomialOrder order)
    : F_(B.field()), nx_(B.nx()), ny_(B.ny()), order_(order) {
  for (const auto& f : B.polys()) gens_.push_back({to_ambient(f), 2});
}

void SpanChain::queue_products(const Generator& g, int mult_lo, int mult_hi) {
  if (g.poly.empty()) return;
  for (int md = mult_lo; md <= mult_hi; ++md)
    for (const auto& mu : y_monomials_of_degree(ny_, md)) {
      pending_.push_back(multiply_to_row(g.poly, mu, *cols_));
      if (pending_.size() >= kBatchRows) flush();
    }
}

std::vector<Index> SpanChain::flush() {
  if (!pending_.empty()) {
    auto ids = E_->insert(pending_);
    created_.insert(created_.end(), ids.begin(), ids.end());
    pending_.clear();
  }
  return std::move(created_);
}

std::vector<Index> SpanChain::raise_to(int d) {
  std::vector<Index> all;
  for (int e = std::max(d_ + 1, 2); e <= d; ++e) {
    auto next = std::make_unique<ColumnIndex>(ColumnIndex::ambient(nx_, ny_, e, order_));
    if (!E_) E_.emplace(F_, next->size());
    else E_->prepend_columns(next->size() - cols_->size());
    cols_ = std::move(next);
    const bool first = d_ < 2;
    d_ = e;
    created_.clear();
    for (const auto& g : gens_) {
      const int top = e - g.nominal_degree;
      if (top < 0) continue;
      queue_products(g, first ? 0 : top, top);
    }
    auto ids = flush();
    all.insert(all.end(), ids.begin(), ids.end());
  }
  return all;
}

std::vector<Index> SpanChain::add_generators(std::vector<Generator> gens) {
  created_.clear();
  for (auto& g : gens) {
    queue_products(g, 1, d_ - g.nominal_degree);
    gens_.push_back(std::move(g));
  }
  return flush();
}

bool SpanChain::has_one() const {
  const Index c = cols_->constant_column();
  return c >= 0 && E_->is_pivot(c);
}

bool SpanChain::has_linear() const {
  return !E_->ids_with_pivot_from(cols_->first_column_of_degree_at_most(1)).empty();
}

LinearPoly to_linear(const AmbientPoly& g, int nx, int ny) {
  LinearPoly l{ElemVector::Zero(nx), ElemVector::Zero(ny), 0};
  for (const auto& t : g) {
    if (t.x_index >= 0) {
      l.x[t.x_index] = t.coef;
    } else if (t.y.degree() == 0) {
      l.constant = t.coef;
    } else {
      for (int j = 0; j < ny; ++j)
        if (t.y[j] == 1) l.y[j] = t.coef;
    }
  }
  return l;
}

std::vector<LinearPoly> SpanChain::linear_polys() const {
  std::vector<LinearPoly> out;
  const Index from = cols_->first_column_of_degree_at_most(1);
  auto ids = E_->ids_with_pivot_from(from);
  std::sort(ids.begin(), ids.end(), [&](Index a, Index b) { return E_->pivot_of(a) < E_->pivot_of(b); });
  for (Index id : ids) out.push_back(to_linear(row_poly(id), nx_, ny_));
  return out;
}

}  // namespace detail

using detail::SpanChain;

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::SolutionFound: return "solution_found";
    case SolveStatus::NoSolution: return "no_solution";
    case SolveStatus::Undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(Backend b) { return b == Backend::Gaussian ? "gaussian" : "wiedemann"; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared ending of y-XL and y-MXL once the chain has stopped at some degree.
void conclude(SolveReport& rep, const BilinearSequence& B, const SpanChain& chain) {
  rep.linear_polys = chain.linear_polys();
  if (chain.has_one()) {
    rep.status = SolveStatus::NoSolution;
    return;
  }
  if (rep.linear_polys.empty()) {
    rep.status = SolveStatus::Undetermined;
    return;
  }
  auto ex = detail::extract_or_refute(B, rep.linear_polys, chain.degree());
  if (ex.solution) {
    rep.status = SolveStatus::SolutionFound;
    rep.solution = std::move(ex.solution);
  } else if (ex.refuted) {
    rep.status = SolveStatus::NoSolution;
    rep.notes.push_back("every completion of the linear polynomials is contradictory");
  } else {
    rep.status = SolveStatus::Undetermined;
    rep.notes.push_back("linear polynomials found but no solution could be completed");
  }
}

void check_degree(int d) {
  if (d < 2) throw std::invalid_argument("solver degree must be at least 2");
}

}  // namespace

SolveReport y_xl(const BilinearSequence& B, int d) {
  check_degree(d);
  const auto t0 = Clock::now();
  SolveReport rep;
  SpanChain chain(B);
  for (int e = 2; e <= d; ++e) {
    chain.raise_to(e);
    rep.per_degree_ranks[e] = chain.rank();
    if (!rep.solving_degree && chain.has_linear()) rep.solving_degree = e;
  }
  conclude(rep, B, chain);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

SolveReport y_xl(const BilinearSequence& B) { return y_xl(B, twit_bound(B.nx(), B.ny(), B.m())); }

SolveReport y_xl_search(const BilinearSequence& B, int d_max) {
  check_degree(d_max);
  const auto t0 = Clock::now();
  SolveReport rep;
  SpanChain chain(B);
  for (int e = 2; e <= d_max; ++e) {
    chain.raise_to(e);
    rep.per_degree_ranks[e] = chain.rank();
    if (chain.has_linear()) {
      rep.solving_degree = e;
      break;
    }
  }
  conclude(rep, B, chain);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

SolveReport y_mxl(const BilinearSequence& B, int d_max) {
  check_degree(d_max);
  const auto t0 = Clock::now();
  SolveReport rep;
  SpanChain chain(B);
  for (int e = 2; e <= d_max; ++e) {
    auto fresh = chain.raise_to(e);
    while (!chain.has_linear()) {
      std::vector<detail::Generator> mutants;
      for (Index id : fresh)
        if (chain.pivot_degree(id) < e) {
          AmbientPoly g = chain.row_poly(id);
          const int deg = degree(g);
          mutants.push_back({std::move(g), deg});
        }
      if (mutants.empty()) break;
      rep.mutant_count.push_back(static_cast<int>(mutants.size()));
      fresh = chain.add_generators(std::move(mutants));
    }
    rep.per_degree_ranks[e] = chain.rank();
    if (chain.has_linear()) {
      rep.solving_degree = e;
      break;
    }
  }
  conclude(rep, B, chain);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

namespace {

// 1 in J_{y,<=d}(B), Gaussian path with early exit.
bool one_in_span_gaussian(const BilinearSequence& B, int d) {
  ColumnIndex cols(B.nx(), B.ny(), d, false);
  const Index one = cols.constant_column();
  EchelonBasis E(B.field(), cols.size());
  std::vector<AmbientPoly> gens;
  for (const auto& f : B.polys()) gens.push_back(to_ambient(f));
  std::vector<SparseRow> batch;
  for (int md = 0; md <= d - 2; ++md)
    for (const auto& mu : y_monomials_of_degree(B.ny(), md)) {
      for (const auto& g : gens)
        if (!g.empty()) batch.push_back(multiply_to_row(g, mu, cols));
      if (batch.size() >= 4096) {
        E.insert(batch);
        batch.clear();
        if (E.is_pivot(one)) return true;
      }
    }
  E.insert(batch);
  return E.is_pivot(one);
}

bool one_in_span_wiedemann(const BilinearSequence& B, int d, Rng& rng, int trials) {
  YMacaulayMatrix M = build_y_macaulay(B, d, ColumnLayout::Affine);
  ColumnIndex cols(B.nx(), B.ny(), d, false);
  RowVector e = RowVector::Zero(M.col_count());
  e[cols.constant_column()] = 1;
  if (trials <= 0) trials = wiedemann_trials_for(B.field());
  return wiedemann_consistent(B.field(), M.entries, e, trials, rng).tag == Verdict::Consistent;
}

}  // namespace

bool witness_consistency_test(const BilinearSequence& B, int d, Backend backend, std::uint64_t seed) {
  check_degree(d);
  if (backend == Backend::Gaussian) return one_in_span_gaussian(B, d);
  Rng rng(seed);
  return one_in_span_wiedemann(B, d, rng, 0);
}

SolveReport y_hxl(const BilinearSequence& B, const HybridConfig& cfg) {
  const int nx = B.nx(), ny = B.ny(), m = B.m();
  if (cfg.a_x < 0 || cfg.a_x > nx || cfg.a_y < 0 || cfg.a_y >= ny)
    throw std::invalid_argument("hybrid guess counts need 0 <= a_x <= n_x and 0 <= a_y < n_y");
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.seed = cfg.seed;
  const int d = hxl_degree(nx, ny, m, cfg.a_x, cfg.a_y);
  if ((nx - cfg.a_x) + (ny - cfg.a_y) > m - 2)
    rep.notes.push_back("evaluated systems are outside n_x + n_y <= m - 2; verdicts may be unreliable");
  const FieldCtx& F = B.field();
  const int a = cfg.a_x + cfg.a_y;
  std::vector<Elem> guess(a, 0);
  bool done = false;
  std::uint64_t index = 0;
  while (!done) {
    ElemVector u(cfg.a_x), v(cfg.a_y);
    for (int i = 0; i < cfg.a_x; ++i) u[i] = guess[i];
    for (int j = 0; j < cfg.a_y; ++j) v[j] = guess[cfg.a_x + j];
    BilinearSequence Bp = partial_evaluate(B, u, v);
    ++rep.guesses_tried;
    bool one;
    if (cfg.backend == Backend::Gaussian) {
      one = one_in_span_gaussian(Bp, d);
    } else {
      Rng rng(cfg.seed + index);
      one = one_in_span_wiedemann(Bp, d, rng, cfg.wiedemann_trials);
    }
    if (!one) {
      SolveReport sub = y_xl(Bp, d);
      std::optional<Solution> tail = sub.solution;
      if (!tail && sub.status != SolveStatus::NoSolution) tail = extract_solution(Bp, sub.linear_polys, d);
      if (tail) {
        Solution s{ElemVector(nx), ElemVector(ny)};
        s.u.head(cfg.a_x) = u;
        s.u.tail(nx - cfg.a_x) = tail->u;
        s.v.head(cfg.a_y) = v;
        s.v.tail(ny - cfg.a_y) = tail->v;
        if (is_solution(B, s.u, s.v)) {
          rep.status = SolveStatus::SolutionFound;
          rep.solution = s;
          rep.solving_degree = d;
          rep.linear_polys = sub.linear_polys;
          rep.per_degree_ranks = sub.per_degree_ranks;
          rep.wall_seconds = seconds_since(t0);
          return rep;
        }
      }
      rep.notes.push_back("guess " + std::to_string(index) + " passed the consistency test but did not extend");
    }
    // next guess, first coordinate most significant
    int pos = a - 1;
    while (pos >= 0 && guess[pos] == F.q() - 1) guess[pos--] = 0;
    if (pos < 0) done = true;
    else ++guess[pos];
    ++index;
  }
  rep.status = SolveStatus::NoSolution;
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::vector<Solution> brute_force(const BilinearSequence& B, std::uint64_t budget) {
  const FieldCtx& F = B.field();
  const int nx = B.nx(), ny = B.ny(), m = B.m();
  long double total = 1;
  for (int i = 0; i < nx + ny; ++i) total *= F.q();
  if (total > static_cast<long double>(budget))
    throw BudgetExceeded("exhaustive search over q^(n_x+n_y) points exceeds the budget");
  std::vector<Solution> out;
  ElemVector u = ElemVector::Zero(nx), v(ny);
  // for fixed u every f_k is affine in y: w_k . y + s_k
  ElemMatrix W(m, ny);
  ElemVector s(m);
  auto bump = [&](ElemVector& x) {
    for (Index i = x.size() - 1; i >= 0; --i) {
      if (++x[i] < F.q()) return true;
      x[i] = 0;
    }
    return false;
  };
  do {
    for (int k = 0; k < m; ++k) {
      const BilinearPoly& f = B[k];
      Elem sk = f.d0;
      for (int i = 0; i < nx; ++i) sk = F.fma(sk, f.b[i], u[i]);
      s[k] = sk;
      for (int j = 0; j < ny; ++j) {
        Elem w = f.c[j];
        for (int i = 0; i < nx; ++i) w = F.fma(w, u[i], f.A(i, j));
        W(k, j) = w;
      }
    }
    v.setZero();
    do {
      bool zero = true;
      for (int k = 0; k < m && zero; ++k) {
        Elem acc = s[k];
        for (int j = 0; j < ny; ++j) acc = F.fma(acc, W(k, j), v[j]);
        zero = acc == 0;
      }
      if (zero) out.push_back({u, v});
    } while (bump(v));
  } while (bump(u));
  return out;
}

}  // namespace bilin
