#include "octlab/linsolve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <cstdio>
#include <cstdlib>

namespace octlab {

// ---------------------------------------------------------------------------
// SparseMatrix

void SparseMatrix::add(std::int64_t r, std::int64_t c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    fail(ErrorCode::DimensionMismatch, "sparse entry out of range");
  if (sgn(v) == 0) return;
  entries_.push_back({r, c, v});
  finalized_ = false;
}

void SparseMatrix::finalize() {
  std::sort(entries_.begin(), entries_.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<SparseEntry> merged;
  merged.reserve(entries_.size());
  for (auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(std::move(e));
    }
  }
  entries_.clear();
  for (auto& e : merged)
    if (sgn(e.value) != 0) entries_.push_back(std::move(e));
  finalized_ = true;
}

void SparseMatrix::dump(std::ostream& os) const {
  os << "octlab-sparse 1\n" << rows_ << " " << cols_ << "\n";
  for (const auto& e : entries_)
    os << e.row << " " << e.col << " " << scalar_to_string(e.value) << "\n";
}

SparseMatrix SparseMatrix::load(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "octlab-sparse" || version != 1)
    fail(ErrorCode::Io, "bad sparse dump header");
  std::int64_t rows = 0, cols = 0;
  is >> rows >> cols;
  SparseMatrix m(rows, cols);
  std::int64_t r, c;
  std::string v;
  while (is >> r >> c >> v) m.add(r, c, scalar_from_string(v));
  m.finalize();
  return m;
}

IntRows to_int_rows(const SparseMatrix& m) {
  if (!m.finalized()) fail(ErrorCode::BadInput, "matrix not finalized");
  IntRows out;
  out.cols = m.cols();
  out.rows.assign(static_cast<std::size_t>(m.rows()), {});
  const auto& es = m.entries();
  std::size_t i = 0;
  mpz_class lim = (mpz_class(1) << 62);
  while (i < es.size()) {
    std::size_t j = i;
    mpz_class scale = 1;
    while (j < es.size() && es[j].row == es[i].row) {
      mpz_class den = es[j].value.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
      scale = scale / g * den;
      ++j;
    }
    IRow& row = out.rows[static_cast<std::size_t>(es[i].row)];
    for (std::size_t k = i; k < j; ++k) {
      mpz_class num = es[k].value.get_num() * (scale / es[k].value.get_den());
      if (abs(num) >= lim)
        fail(ErrorCode::ResourceBound, "scaled entry exceeds int64 range");
      row.push_back({static_cast<std::int32_t>(es[k].col),
                     static_cast<std::int64_t>(num.get_si())});
    }
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Time budget

namespace {
std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}
thread_local const TimeBudget* g_solver_budget = nullptr;
}  // namespace

TimeBudget::TimeBudget(std::int64_t budget_ms) : budget_ms_(budget_ms), start_ms_(now_ms()) {}

void TimeBudget::check() const {
  if (budget_ms_ > 0 && now_ms() - start_ms_ > budget_ms_)
    fail(ErrorCode::ResourceBound, "time budget exceeded");
}

std::int64_t TimeBudget::elapsed_ms() const { return now_ms() - start_ms_; }

void set_solver_budget(const TimeBudget* budget) { g_solver_budget = budget; }

namespace {
std::atomic<int> g_solver_workers{1};
}

void set_solver_workers(int workers) { g_solver_workers = std::max(1, workers); }
int solver_workers() { return g_solver_workers; }

// ---------------------------------------------------------------------------
// Prime pool and rational reconstruction

const std::vector<std::uint64_t>& multimodular_prime_pool() {
  static const std::vector<std::uint64_t> pool = [] {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t c = (1ull << 31) - 1; ps.size() < 16; c -= 2)
      if (is_prime_u64(c)) ps.push_back(c);
    return ps;
  }();
  return pool;
}

std::optional<Scalar> rational_reconstruct(const mpz_class& x, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = (m - 1) / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = x % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  if (abs(t1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Scalar q(r1, abs(t1));
  q.canonicalize();
  if (t1 < 0) q = -q;
  return q;
}

// ---------------------------------------------------------------------------
// Sparse elimination engine (RREF invariant: pivot rows never contain other
// pivot columns, so reducing an incoming row uses each pivot at most once).

namespace {

struct FpOps {
  std::uint64_t p;
  using V = std::uint64_t;
  V zero() const { return 0; }
  V one() const { return 1; }
  bool is_zero(V a) const { return a == 0; }
  V from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<V>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  V sub_mul(V a, V f, V w) const {  // a - f*w
    return (a + (p - f) * w % p) % p;
  }
  V mul(V a, V b) const { return a * b % p; }
  V neg(V a) const { return a ? p - a : 0; }
  V inv(V a) const {
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a);
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (t0 < 0) t0 += static_cast<std::int64_t>(p);
    return static_cast<V>(t0);
  }
};

struct QOps {
  using V = Scalar;
  V zero() const { return Scalar(0); }
  V one() const { return Scalar(1); }
  bool is_zero(const V& a) const { return sgn(a) == 0; }
  V from_int(std::int64_t v) const { return Scalar(static_cast<long>(v)); }
  V sub_mul(const V& a, const V& f, const V& w) const { return a - f * w; }
  V mul(const V& a, const V& b) const { return a * b; }
  V neg(const V& a) const { return -a; }
  V inv(const V& a) const { return Scalar(1) / a; }
};

template <class Ops>
class SparseRref {
 public:
  using V = typename Ops::V;
  using Row = std::vector<std::pair<std::int32_t, V>>;

  SparseRref(Ops ops, std::int64_t cols)
      : ops_(ops),
        cols_(cols),
        row_of_col_(static_cast<std::size_t>(cols), -1),
        col_count_(static_cast<std::size_t>(cols), 0),
        col_users_(static_cast<std::size_t>(cols)),
        acc_(static_cast<std::size_t>(cols), ops.zero()),
        mark_(static_cast<std::size_t>(cols), 0) {}

  std::int64_t pivot_count() const { return static_cast<std::int64_t>(rows_.size()); }

  bool add_row(const Row& row) {
    for (const auto& [c, v] : row) {
      if (!mark_[c]) {
        mark_[c] = 1;
        touched_.push_back(c);
        acc_[c] = v;
      } else {
        acc_[c] = ops_.sub_mul(acc_[c], ops_.neg(ops_.one()), v);  // acc + v
      }
    }
    // eliminate by pivot rows; each AXPY only touches non-pivot columns
    for (std::size_t qi = 0; qi < touched_.size(); ++qi) {
      std::int32_t c = touched_[qi];
      std::int32_t r = row_of_col_[c];
      if (r < 0) continue;
      V f = acc_[c];
      if (ops_.is_zero(f)) continue;
      for (const auto& [cc, vv] : rows_[r]) {
        if (!mark_[cc]) {
          mark_[cc] = 1;
          touched_.push_back(cc);
          acc_[cc] = ops_.zero();
        }
        acc_[cc] = ops_.sub_mul(acc_[cc], f, vv);
      }
    }
    std::sort(touched_.begin(), touched_.end());
    Row nr;
    for (std::int32_t c : touched_) {
      if (!ops_.is_zero(acc_[c])) nr.push_back({c, acc_[c]});
      acc_[c] = ops_.zero();
      mark_[c] = 0;
    }
    touched_.clear();
    if (nr.empty()) return false;

    // pivot: least-used column, lowest index on ties
    std::int32_t pc = nr[0].first;
    std::int32_t best = col_count_[pc];
    for (const auto& [c, v] : nr) {
      if (col_count_[c] < best) {
        best = col_count_[c];
        pc = c;
      }
    }
    V lead;
    for (const auto& [c, v] : nr)
      if (c == pc) lead = v;
    V s = ops_.inv(lead);
    for (auto& [c, v] : nr) v = ops_.mul(v, s);

    // restore the RREF invariant: clear pc from every stored row
    std::int32_t id = static_cast<std::int32_t>(rows_.size());
    for (std::int32_t rid : col_users_[pc]) {
      Row& tr = rows_[rid];
      auto it = std::lower_bound(tr.begin(), tr.end(), pc,
                                 [](const auto& e, std::int32_t c) { return e.first < c; });
      if (it == tr.end() || it->first != pc) continue;  // stale
      V f = it->second;
      merge_sub(tr, f, nr, rid);
    }
    col_users_[pc].clear();

    for (const auto& [c, v] : nr) {
      ++col_count_[c];
      col_users_[c].push_back(id);
    }
    row_of_col_[pc] = id;
    pivcol_.push_back(pc);
    rows_.push_back(std::move(nr));
    return true;
  }

  /// Canonical (RREF, leading coefficient 1) basis of the kernel implied by
  /// the current pivot rows, as dense vectors sorted by leading coordinate.
  std::vector<std::vector<V>> kernel() {
    std::vector<std::vector<V>> raw;
    for (std::int64_t f = 0; f < cols_; ++f) {
      if (row_of_col_[f] >= 0) continue;
      std::vector<V> v(static_cast<std::size_t>(cols_), ops_.zero());
      v[f] = ops_.one();
      for (std::int32_t rid : col_users_[f]) {
        const Row& tr = rows_[rid];
        auto it = std::lower_bound(tr.begin(), tr.end(), static_cast<std::int32_t>(f),
                                   [](const auto& e, std::int32_t c) { return e.first < c; });
        if (it == tr.end() || it->first != f) continue;
        v[pivcol_[rid]] = ops_.neg(it->second);
      }
      raw.push_back(std::move(v));
    }
    return canonicalize(std::move(raw));
  }

  std::vector<std::vector<V>> canonicalize(std::vector<std::vector<V>> vs) {
    std::vector<std::vector<V>> basis;
    std::vector<std::int64_t> leads;
    for (auto& v : vs) {
      for (std::size_t r = 0; r < basis.size(); ++r) {
        const V& f = v[leads[r]];
        if (ops_.is_zero(f)) continue;
        V fc = f;
        for (std::int64_t c = 0; c < cols_; ++c)
          if (!ops_.is_zero(basis[r][c])) v[c] = ops_.sub_mul(v[c], fc, basis[r][c]);
      }
      std::int64_t lead = -1;
      for (std::int64_t c = 0; c < cols_; ++c)
        if (!ops_.is_zero(v[c])) {
          lead = c;
          break;
        }
      if (lead < 0) continue;
      V s = ops_.inv(v[lead]);
      for (std::int64_t c = lead; c < cols_; ++c) v[c] = ops_.mul(v[c], s);
      for (std::size_t r = 0; r < basis.size(); ++r) {
        const V& f = basis[r][lead];
        if (ops_.is_zero(f)) continue;
        V fc = f;
        for (std::int64_t c = 0; c < cols_; ++c)
          if (!ops_.is_zero(v[c])) basis[r][c] = ops_.sub_mul(basis[r][c], fc, v[c]);
      }
      basis.push_back(std::move(v));
      leads.push_back(lead);
    }
    std::vector<std::size_t> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return leads[a] < leads[b]; });
    std::vector<std::vector<V>> out;
    out.reserve(basis.size());
    for (std::size_t i : order) out.push_back(std::move(basis[i]));
    return out;
  }

 private:
  // tr -= f * nr; maintains col bookkeeping for row rid
  void merge_sub(Row& tr, const V& f, const Row& nr, std::int32_t rid) {
    Row out;
    out.reserve(tr.size() + nr.size());
    std::size_t a = 0, b = 0;
    while (a < tr.size() || b < nr.size()) {
      if (b == nr.size() || (a < tr.size() && tr[a].first < nr[b].first)) {
        out.push_back(tr[a++]);
      } else if (a == tr.size() || nr[b].first < tr[a].first) {
        V v = ops_.sub_mul(ops_.zero(), f, nr[b].second);
        if (!ops_.is_zero(v)) {
          out.push_back({nr[b].first, v});
          ++col_count_[nr[b].first];
          col_users_[nr[b].first].push_back(rid);
        }
        ++b;
      } else {
        V v = ops_.sub_mul(tr[a].second, f, nr[b].second);
        if (!ops_.is_zero(v)) {
          out.push_back({tr[a].first, v});
        } else {
          --col_count_[tr[a].first];
        }
        ++a;
        ++b;
      }
    }
    tr = std::move(out);
  }

  Ops ops_;
  std::int64_t cols_;
  std::vector<std::int32_t> row_of_col_;
  std::vector<std::int32_t> col_count_;
  std::vector<std::vector<std::int32_t>> col_users_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivcol_;
  std::vector<V> acc_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::int32_t> touched_;
};

template <class Ops>
struct ElimOut {
  std::int64_t rank = 0;
  std::vector<std::vector<typename Ops::V>> kernel;  // dense canonical basis
};

/// Full elimination with a stall cutoff and a verification sweep: rows are
/// processed sparsest-first until the pivot set stops growing, then every row
/// is checked against the candidate kernel and violators are folded back in.
/// On return the kernel annihilates every row exactly.
template <class Ops>
ElimOut<Ops> run_elimination(Ops ops, std::int64_t cols, const IntRows& m,
                             const TimeBudget* budget) {
  using V = typename Ops::V;
  const std::int64_t dbg_t0 = now_ms();
  SparseRref<Ops> rr(ops, cols);
  // identical rows are redundant; keep the first of each (rows arrive sorted
  // by column, so lexicographic comparison is well defined)
  std::vector<std::uint32_t> order(m.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (m.rows[a].size() != m.rows[b].size()) return m.rows[a].size() < m.rows[b].size();
    return m.rows[a] < m.rows[b];
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::uint32_t a, std::uint32_t b) {
                            return m.rows[a] == m.rows[b];
                          }),
              order.end());
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return m.rows[a].size() < m.rows[b].size();
  });

  typename SparseRref<Ops>::Row scratch;
  auto fetch = [&](std::size_t i) -> const typename SparseRref<Ops>::Row& {
    scratch.clear();
    for (const auto& [c, v] : m.rows[i]) {
      V w = ops.from_int(v);
      if (!ops.is_zero(w)) scratch.push_back({c, w});
    }
    return scratch;
  };

  std::size_t processed = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if ((i & 1023) == 0) {
      if (budget) budget->check();
      if (g_solver_budget) g_solver_budget->check();
    }
    rr.add_row(fetch(order[i]));
    ++processed;
    if (rr.pivot_count() == cols) break;
  }
  if (getenv("OCTLAB_DEBUG"))
    fprintf(stderr, "[elim] phase1 done: processed=%zu pivots=%lld t=%lld ms\n", processed,
            (long long)rr.pivot_count(), (long long)(now_ms() - dbg_t0));

  auto kernel = rr.kernel();
  if (getenv("OCTLAB_DEBUG"))
    fprintf(stderr, "[elim] kernel extracted: kdim=%zu t=%lld ms\n", kernel.size(),
            (long long)(now_ms() - dbg_t0));
  while (!kernel.empty()) {
    bool clean = true;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      if ((i & 4095) == 0) {
        if (budget) budget->check();
        if (g_solver_budget) g_solver_budget->check();
      }
      bool bad = false;
      for (const auto& kv : kernel) {
        V dot = ops.zero();
        for (const auto& [c, v] : m.rows[i]) {
          V w = ops.from_int(v);
          if (!ops.is_zero(w) && !ops.is_zero(kv[c]))
            dot = ops.sub_mul(dot, ops.neg(w), kv[c]);
        }
        if (!ops.is_zero(dot)) {
          bad = true;
          break;
        }
      }
      if (bad) {
        rr.add_row(fetch(i));
        clean = false;
      }
    }
    if (clean) break;
    kernel = rr.kernel();
  }
  if (getenv("OCTLAB_DEBUG"))
    fprintf(stderr, "[elim] sweep done: rank=%lld kdim=%zu t=%lld ms\n",
            (long long)rr.pivot_count(), kernel.size(), (long long)(now_ms() - dbg_t0));
  return {rr.pivot_count(), std::move(kernel)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Field-level drivers

namespace {

/// Residue rows of a rational matrix mod p; throws PrimeDividesDenominator.
IntRows residue_rows(const SparseMatrix& m, std::uint64_t p) {
  Field fp = field_prime(p, true);
  IntRows out;
  out.cols = m.cols();
  out.rows.assign(static_cast<std::size_t>(m.rows()), {});
  for (const auto& e : m.entries()) {
    Scalar r = fp.reduce(e.value);
    std::int64_t v = static_cast<std::int64_t>(r.get_num().get_si());
    if (v != 0)
      out.rows[static_cast<std::size_t>(e.row)].push_back(
          {static_cast<std::int32_t>(e.col), v});
  }
  return out;
}

Vec to_vec(const std::vector<Scalar>& v) { return v; }

Vec fp_vec_to_scalars(const std::vector<std::uint64_t>& v) {
  Vec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<unsigned long>(x));
  return out;
}

struct ModularSolve {
  std::uint64_t p;
  std::int64_t rank;
  std::vector<std::vector<std::uint64_t>> kernel;
  std::vector<std::int64_t> leads;
};

std::vector<std::int64_t> kernel_leads(const std::vector<std::vector<std::uint64_t>>& k) {
  std::vector<std::int64_t> leads;
  for (const auto& v : k) {
    std::int64_t l = -1;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c]) {
        l = static_cast<std::int64_t>(c);
        break;
      }
    leads.push_back(l);
  }
  return leads;
}

ModularSolve solve_mod(const IntRows& m, std::uint64_t p, const TimeBudget* budget) {
  FpOps ops{p};
  auto out = run_elimination(ops, m.cols, m, budget);
  ModularSolve ms;
  ms.p = p;
  ms.rank = out.rank;
  ms.kernel = std::move(out.kernel);
  ms.leads = kernel_leads(ms.kernel);
  return ms;
}

/// Exact check that row . v == 0 for every row, with v rational.
bool verify_rational_kernel(const IntRows& m, const std::vector<Vec>& basis) {
  for (const auto& v : basis) {
    mpz_class den = 1;
    for (const auto& x : v) {
      mpz_class d = x.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
      den = den / g * d;
    }
    std::vector<mpz_class> w(v.size());
    bool small = true;
    std::vector<std::int64_t> wi(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = v[i].get_num() * (den / v[i].get_den());
      if (!w[i].fits_slong_p()) small = false;
    }
    if (small) {
      for (std::size_t i = 0; i < v.size(); ++i) wi[i] = w[i].get_si();
      for (const auto& row : m.rows) {
        __int128 acc = 0;
        bool overflow = false;
        for (const auto& [c, val] : row) {
          __int128 t = static_cast<__int128>(val) * wi[c];
          acc += t;
          if (acc > (static_cast<__int128>(1) << 120) || acc < -(static_cast<__int128>(1) << 120)) {
            overflow = true;
            break;
          }
        }
        if (overflow) {
          mpz_class a = 0;
          for (const auto& [c, val] : row) a += mpz_class(static_cast<long>(val)) * w[c];
          if (a != 0) return false;
        } else if (acc != 0) {
          return false;
        }
      }
    } else {
      for (const auto& row : m.rows) {
        mpz_class a = 0;
        for (const auto& [c, val] : row) a += mpz_class(static_cast<long>(val)) * w[c];
        if (a != 0) return false;
      }
    }
  }
  return true;
}

NullspaceResult nullspace_direct_q(const IntRows& m, const TimeBudget* budget) {
  QOps ops;
  auto out = run_elimination(ops, m.cols, m, budget);
  NullspaceResult res;
  res.dim = static_cast<std::int64_t>(out.kernel.size());
  for (auto& v : out.kernel) res.basis.push_back(to_vec(v));
  res.certification = Certification::ExactVerified;
  return res;
}

NullspaceResult nullspace_multimodular(const IntRows& m, const TimeBudget* budget) {
  // resolve the scoped budget here so worker threads inherit it
  if (!budget) budget = g_solver_budget;
  const auto& pool = multimodular_prime_pool();
  std::size_t want = 3;
  std::vector<ModularSolve> solves;
  std::size_t next_prime = 0;

  auto solve_more = [&](std::size_t target) {
    target = std::min(target, pool.size());
    const int workers = solver_workers();
    if (workers <= 1 || solves.size() + 1 >= target) {
      while (solves.size() < target && next_prime < pool.size())
        solves.push_back(solve_mod(m, pool[next_prime++], budget));
      return;
    }
    std::size_t first = next_prime;
    std::size_t count = target - solves.size();
    std::vector<ModularSolve> out(count);
    std::vector<std::thread> threads;
    std::atomic<std::size_t> cursor{0};
    int nthreads = std::min<int>(workers, static_cast<int>(count));
    for (int t = 0; t < nthreads; ++t)
      threads.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1))
          out[i] = solve_mod(m, pool[first + i], budget);
      });
    for (auto& th : threads) th.join();
    for (auto& s : out) solves.push_back(std::move(s));
    next_prime = first + count;
  };

  while (true) {
    solve_more(want);
    if (solves.size() < 3)
      fail(ErrorCode::DimensionDisagreement, "prime pool exhausted");

    // consensus: solutions with the smallest kernel (bad primes see bigger
    // kernels) and identical canonical lead structure
    std::size_t min_dim = SIZE_MAX;
    for (const auto& s : solves) min_dim = std::min(min_dim, s.kernel.size());
    const std::vector<std::int64_t>* ref_leads = nullptr;
    for (const auto& s : solves)
      if (s.kernel.size() == min_dim) {
        ref_leads = &s.leads;
        break;
      }
    std::vector<const ModularSolve*> members;
    for (const auto& s : solves)
      if (s.kernel.size() == min_dim && s.leads == *ref_leads) members.push_back(&s);
    if (members.size() < 3) {
      if (want >= pool.size())
        fail(ErrorCode::DimensionDisagreement,
             "modular kernels disagree across the prime pool");
      want = std::min(pool.size(), want + 2);
      continue;
    }

    const std::size_t kdim = min_dim;
    const std::size_t cols = static_cast<std::size_t>(m.cols);
    if (kdim == 0) {
      NullspaceResult res;
      res.dim = 0;
      res.certification = Certification::ExactVerified;
      for (const auto* s : members) res.primes_used.push_back(s->p);
      return res;
    }

    // CRT residues across members, then rational reconstruction
    bool ok = true;
    std::vector<Vec> basis;
    mpz_class modulus = 1;
    for (const auto* s : members) modulus *= mpz_class(static_cast<unsigned long>(s->p));
    for (std::size_t r = 0; r < kdim && ok; ++r) {
      Vec v(cols, Scalar(0));
      for (std::size_t c = 0; c < cols && ok; ++c) {
        bool all_zero = true;
        for (const auto* s : members)
          if (s->kernel[r][c]) all_zero = false;
        if (all_zero) continue;
        mpz_class x = 0, mod = 1;
        for (const auto* s : members) {
          mpz_class p(static_cast<unsigned long>(s->p));
          mpz_class rc(static_cast<unsigned long>(s->kernel[r][c]));
          // Garner step: x += mod * ((rc - x) * mod^-1 mod p)
          mpz_class diff = (rc - x) % p;
          if (diff < 0) diff += p;
          mpz_class minv;
          mpz_class mmod = mod % p;
          mpz_invert(minv.get_mpz_t(), mmod.get_mpz_t(), p.get_mpz_t());
          x += mod * (diff * minv % p);
          mod *= p;
        }
        auto q = rational_reconstruct(x, modulus);
        if (!q) {
          ok = false;
          break;
        }
        v[c] = *q;
      }
      if (ok) basis.push_back(std::move(v));
    }

    if (ok && verify_rational_kernel(m, basis)) {
      NullspaceResult res;
      res.dim = static_cast<std::int64_t>(kdim);
      res.basis = std::move(basis);
      res.certification = Certification::ExactVerified;
      for (const auto* s : members) res.primes_used.push_back(s->p);
      return res;
    }

    if (want < pool.size()) {
      want = std::min(pool.size(), want * 2);
      continue;
    }

    // fallback: exact solve restricted to the modular kernel support
    std::vector<std::int32_t> support;
    {
      std::vector<std::uint8_t> used(cols, 0);
      for (const auto* s : members)
        for (const auto& v : s->kernel)
          for (std::size_t c = 0; c < cols; ++c)
            if (v[c]) used[c] = 1;
      for (std::size_t c = 0; c < cols; ++c)
        if (used[c]) support.push_back(static_cast<std::int32_t>(c));
    }
    std::vector<std::int32_t> col_map(cols, -1);
    for (std::size_t i = 0; i < support.size(); ++i) col_map[support[i]] = static_cast<std::int32_t>(i);
    IntRows restricted;
    restricted.cols = static_cast<std::int64_t>(support.size());
    restricted.rows.reserve(m.rows.size());
    for (const auto& row : m.rows) {
      IRow rr;
      for (const auto& [c, v] : row)
        if (col_map[c] >= 0) rr.push_back({col_map[c], v});
      if (!rr.empty()) restricted.rows.push_back(std::move(rr));
    }
    NullspaceResult sub = nullspace_direct_q(restricted, budget);
    if (static_cast<std::size_t>(sub.dim) == kdim) {
      NullspaceResult res;
      res.dim = sub.dim;
      for (const auto& v : sub.basis) {
        Vec full(cols, Scalar(0));
        for (std::size_t i = 0; i < support.size(); ++i) full[support[i]] = v[i];
        res.basis.push_back(std::move(full));
      }
      if (verify_rational_kernel(m, res.basis)) {
        res.certification = Certification::ExactVerified;
        for (const auto* s : members) res.primes_used.push_back(s->p);
        return res;
      }
    }
    // last resort: full exact solve
    return nullspace_direct_q(m, budget);
  }
}

}  // namespace

NullspaceResult nullspace(const IntRows& m, const Field& field, SolvePolicy policy) {
  if (field.is_rationals()) {
    if (policy == SolvePolicy::MultiModular) return nullspace_multimodular(m, nullptr);
    return nullspace_direct_q(m, nullptr);
  }
  FpOps ops{field.modulus()};
  auto out = run_elimination(ops, m.cols, m, nullptr);
  NullspaceResult res;
  res.dim = static_cast<std::int64_t>(out.kernel.size());
  for (auto& v : out.kernel) res.basis.push_back(fp_vec_to_scalars(v));
  res.certification = Certification::ExactVerified;
  res.primes_used = {field.modulus()};
  return res;
}

NullspaceResult nullspace(const SparseMatrix& m, const Field& field, SolvePolicy policy) {
  if (!m.finalized()) fail(ErrorCode::BadInput, "matrix not finalized");
  if (field.is_rationals()) return nullspace(to_int_rows(m), field, policy);
  return nullspace(residue_rows(m, field.modulus()), field, policy);
}

std::int64_t rank(const IntRows& m, const Field& field) {
  if (!field.is_rationals()) {
    FpOps ops{field.modulus()};
    auto out = run_elimination(ops, m.cols, m, nullptr);
    return out.rank;
  }
  std::int64_t size = 0;
  for (const auto& r : m.rows) size += static_cast<std::int64_t>(r.size());
  if (m.cols <= 512 && size <= 200000) {
    QOps ops;
    auto out = run_elimination(ops, m.cols, m, nullptr);
    return out.rank;
  }
  // modular ranks cross-checked against the certified nullity
  NullspaceResult ns = nullspace_multimodular(m, nullptr);
  std::int64_t best = 0;
  for (auto p : ns.primes_used) {
    FpOps ops{p};
    auto out = run_elimination(ops, m.cols, m, nullptr);
    best = std::max(best, out.rank);
  }
  if (best + ns.dim != m.cols)
    fail(ErrorCode::DimensionDisagreement, "rank + nullity != cols");
  return best;
}

std::int64_t rank(const SparseMatrix& m, const Field& field) {
  if (!m.finalized()) fail(ErrorCode::BadInput, "matrix not finalized");
  if (field.is_rationals()) return rank(to_int_rows(m), field);
  return rank(residue_rows(m, field.modulus()), field);
}

// ---------------------------------------------------------------------------
// RowSpace

bool RowSpace::insert(Vec v) {
  if (v.size() != ambient_) fail(ErrorCode::DimensionMismatch, "row space insert size");
  v = reduce(std::move(v));
  int lead = -1;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (!field_.is_zero(v[c])) {
      lead = static_cast<int>(c);
      break;
    }
  if (lead < 0) return false;
  Scalar s = field_.inv(v[lead]);
  for (std::size_t c = static_cast<std::size_t>(lead); c < ambient_; ++c)
    v[c] = field_.mul(v[c], s);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar f = rows_[r][static_cast<std::size_t>(lead)];
    if (field_.is_zero(f)) continue;
    for (std::size_t c = 0; c < ambient_; ++c)
      rows_[r][c] = field_.sub(rows_[r][c], field_.mul(f, v[c]));
  }
  auto pos = std::lower_bound(leads_.begin(), leads_.end(), lead);
  std::size_t idx = static_cast<std::size_t>(pos - leads_.begin());
  leads_.insert(pos, lead);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

Vec RowSpace::reduce(Vec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& f = v[static_cast<std::size_t>(leads_[r])];
    if (field_.is_zero(f)) continue;
    Scalar fc = f;
    for (std::size_t c = 0; c < ambient_; ++c)
      v[c] = field_.sub(v[c], field_.mul(fc, rows_[r][c]));
  }
  return v;
}

bool RowSpace::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (const auto& x : r)
    if (!field_.is_zero(x)) return false;
  return true;
}

bool RowSpace::equals(const RowSpace& other) const {
  if (ambient_ != other.ambient_ || rows_.size() != other.rows_.size()) return false;
  if (leads_ != other.leads_) return false;
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (!vec_eq(rows_[r], other.rows_[r])) return false;
  return true;
}

}  // namespace octlab
