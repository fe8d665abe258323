#include "octlab/structure.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <random>

namespace octlab {

// ---------------------------------------------------------------------------
// Ideal closure

Subspace ideal_closure(const StructureAlgebra& a, const std::vector<Vec>& generators) {
  const std::size_t dim = static_cast<std::size_t>(a.dim());
  Subspace space(a.field(), dim);
  for (const auto& g : generators) space.insert(g);
  bool grew = true;
  while (grew && space.dim() < dim) {
    grew = false;
    std::vector<Vec> snapshot = space.basis();
    for (const auto& v : snapshot) {
      for (int j = 0; j < a.dim(); ++j) {
        Vec e = vec_zero(dim);
        e[static_cast<std::size_t>(j)] = a.field().one();
        if (space.insert(a.product(v, e))) grew = true;
        if (space.dim() == dim) return space;
        if (space.insert(a.product(e, v))) grew = true;
        if (space.dim() == dim) return space;
      }
    }
  }
  return space;
}

bool verify_ideal(const StructureAlgebra& a, const Subspace& ideal) {
  const std::size_t dim = static_cast<std::size_t>(a.dim());
  for (const auto& v : ideal.basis())
    for (int j = 0; j < a.dim(); ++j) {
      Vec e = vec_zero(dim);
      e[static_cast<std::size_t>(j)] = a.field().one();
      if (!ideal.contains(a.product(v, e))) return false;
      if (!ideal.contains(a.product(e, v))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Meataxe-style irreducibility over a prime field. The module is A acting on
// itself through left/right multiplications, so submodules are two-sided
// ideals and irreducibility is simplicity.

namespace {

struct FpTable {
  std::uint64_t p = 0;
  int dim = 0;
  std::vector<std::vector<std::pair<std::int32_t, std::uint64_t>>> prod;  // (i*dim+j)
  bool general = false;  // need right multiplications as separate generators

  const std::vector<std::pair<std::int32_t, std::uint64_t>>& at(int i, int j) const {
    return prod[static_cast<std::size_t>(i) * dim + j];
  }
};

FpTable fp_table(const StructureAlgebra& a) {
  if (a.field().is_rationals()) fail(ErrorCode::BadInput, "fp_table needs a prime field");
  FpTable t;
  t.p = a.field().modulus();
  t.dim = a.dim();
  t.general = a.flavor() == Flavor::General;
  t.prod.resize(static_cast<std::size_t>(t.dim) * t.dim);
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) {
      auto& out = t.prod[static_cast<std::size_t>(i) * t.dim + j];
      for (const auto& [k, c] : a.table(i, j))
        out.push_back({k, c.get_num().get_ui()});
    }
  return t;
}

using FpVec = std::vector<std::uint64_t>;

// w += f * (b_i . v) where the action is left multiplication
void apply_left(const FpTable& t, int i, const FpVec& v, FpVec& out) {
  const std::uint64_t p = t.p;
  for (int j = 0; j < t.dim; ++j) {
    std::uint64_t vj = v[static_cast<std::size_t>(j)];
    if (!vj) continue;
    for (const auto& [k, c] : t.at(i, j))
      out[static_cast<std::size_t>(k)] = (out[static_cast<std::size_t>(k)] + vj * c) % p;
  }
}

void apply_right(const FpTable& t, int i, const FpVec& v, FpVec& out) {
  const std::uint64_t p = t.p;
  for (int j = 0; j < t.dim; ++j) {
    std::uint64_t vj = v[static_cast<std::size_t>(j)];
    if (!vj) continue;
    for (const auto& [k, c] : t.at(j, i))
      out[static_cast<std::size_t>(k)] = (out[static_cast<std::size_t>(k)] + vj * c) % p;
  }
}

// transposed generator actions, for the dual-module spin
void apply_left_t(const FpTable& t, int i, const FpVec& v, FpVec& out) {
  const std::uint64_t p = t.p;
  for (int j = 0; j < t.dim; ++j) {
    std::uint64_t acc = 0;
    for (const auto& [k, c] : t.at(i, j)) acc = (acc + v[static_cast<std::size_t>(k)] * c) % p;
    out[static_cast<std::size_t>(j)] = (out[static_cast<std::size_t>(j)] + acc) % p;
  }
}

void apply_right_t(const FpTable& t, int i, const FpVec& v, FpVec& out) {
  const std::uint64_t p = t.p;
  for (int j = 0; j < t.dim; ++j) {
    std::uint64_t acc = 0;
    for (const auto& [k, c] : t.at(j, i)) acc = (acc + v[static_cast<std::size_t>(k)] * c) % p;
    out[static_cast<std::size_t>(j)] = (out[static_cast<std::size_t>(j)] + acc) % p;
  }
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  std::int64_t t0 = 0, t1 = 1, r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a);
  while (r1) {
    std::int64_t q = r0 / r1, tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return static_cast<std::uint64_t>(t0 < 0 ? t0 + static_cast<std::int64_t>(p) : t0);
}

/// Dense RREF accumulator mod p.
class FpRowSpace {
 public:
  FpRowSpace(std::uint64_t p, int ambient) : p_(p), ambient_(ambient) {}

  bool insert(FpVec v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint64_t f = v[static_cast<std::size_t>(leads_[r])];
      if (!f) continue;
      std::uint64_t g = p_ - f;
      const FpVec& row = rows_[r];
      for (int c = leads_[r]; c < ambient_; ++c)
        v[static_cast<std::size_t>(c)] =
            (v[static_cast<std::size_t>(c)] + g * row[static_cast<std::size_t>(c)]) % p_;
    }
    int lead = -1;
    for (int c = 0; c < ambient_; ++c)
      if (v[static_cast<std::size_t>(c)]) {
        lead = c;
        break;
      }
    if (lead < 0) return false;
    std::uint64_t s = fp_inv(v[static_cast<std::size_t>(lead)], p_);
    for (int c = lead; c < ambient_; ++c)
      v[static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(c)] * s % p_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint64_t f = rows_[r][static_cast<std::size_t>(lead)];
      if (!f) continue;
      std::uint64_t g = p_ - f;
      for (int c = lead; c < ambient_; ++c)
        rows_[r][static_cast<std::size_t>(c)] =
            (rows_[r][static_cast<std::size_t>(c)] + g * v[static_cast<std::size_t>(c)]) % p_;
    }
    auto pos = std::lower_bound(leads_.begin(), leads_.end(), lead);
    std::size_t idx = static_cast<std::size_t>(pos - leads_.begin());
    leads_.insert(pos, lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
    return true;
  }

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<FpVec>& basis() const { return rows_; }

 private:
  std::uint64_t p_;
  int ambient_;
  std::vector<FpVec> rows_;
  std::vector<int> leads_;
};

/// Submodule generated by v under all multiplication operators.
FpRowSpace spin(const FpTable& t, const FpVec& v, bool transposed) {
  FpRowSpace space(t.p, t.dim);
  space.insert(v);
  bool grew = true;
  while (grew && space.dim() < t.dim) {
    grew = false;
    std::vector<FpVec> snapshot = space.basis();
    for (const auto& w : snapshot) {
      for (int i = 0; i < t.dim && space.dim() < t.dim; ++i) {
        FpVec out(static_cast<std::size_t>(t.dim), 0);
        transposed ? apply_left_t(t, i, w, out) : apply_left(t, i, w, out);
        if (space.insert(std::move(out))) grew = true;
        if (t.general) {
          FpVec out2(static_cast<std::size_t>(t.dim), 0);
          transposed ? apply_right_t(t, i, w, out2) : apply_right(t, i, w, out2);
          if (space.insert(std::move(out2))) grew = true;
        }
      }
      if (space.dim() == t.dim) break;
    }
  }
  return space;
}

/// Kernel of a dense matrix mod p (columns = input coordinates).
std::vector<FpVec> fp_kernel(const FpTable& t, const std::vector<FpVec>& mat_rows) {
  FpRowSpace rs(t.p, t.dim);
  for (const auto& r : mat_rows) rs.insert(r);
  // free columns relative to the row space
  std::vector<int> lead_of(static_cast<std::size_t>(t.dim), -1);
  const auto& rows = rs.basis();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < t.dim; ++c)
      if (rows[r][static_cast<std::size_t>(c)]) {
        lead_of[static_cast<std::size_t>(c)] = static_cast<int>(r);
        break;
      }
  std::vector<FpVec> kernel;
  for (int f = 0; f < t.dim; ++f) {
    if (lead_of[static_cast<std::size_t>(f)] >= 0) continue;
    FpVec v(static_cast<std::size_t>(t.dim), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (int c = 0; c < t.dim; ++c) {
      int r = lead_of[static_cast<std::size_t>(c)];
      if (r < 0) continue;
      std::uint64_t w = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)];
      if (w) v[static_cast<std::size_t>(c)] = t.p - w;
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::vector<FpVec> operator_matrix_rows(const FpTable& t,
                                        const std::function<void(const FpVec&, FpVec&)>& op) {
  // rows of the matrix of op (row k = k-th output coordinate over all inputs)
  std::vector<FpVec> cols;
  for (int j = 0; j < t.dim; ++j) {
    FpVec e(static_cast<std::size_t>(t.dim), 0);
    e[static_cast<std::size_t>(j)] = 1;
    FpVec out(static_cast<std::size_t>(t.dim), 0);
    op(e, out);
    cols.push_back(std::move(out));
  }
  std::vector<FpVec> rows(static_cast<std::size_t>(t.dim),
                          FpVec(static_cast<std::size_t>(t.dim), 0));
  for (int j = 0; j < t.dim; ++j)
    for (int k = 0; k < t.dim; ++k)
      rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  return rows;
}

Vec fp_to_scalars(const FpVec& v) {
  Vec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<unsigned long>(x));
  return out;
}

/// Verified proper ideal from an Fp subspace, or nullopt if it is not one.
std::optional<std::vector<Vec>> as_ideal_witness(const StructureAlgebra& a,
                                                 const FpRowSpace& space) {
  Subspace sub(a.field(), static_cast<std::size_t>(a.dim()));
  for (const auto& v : space.basis()) sub.insert(fp_to_scalars(v));
  if (sub.dim() == 0 || sub.dim() == static_cast<std::size_t>(a.dim())) return std::nullopt;
  if (!verify_ideal(a, sub)) return std::nullopt;
  return sub.basis();
}

SimplicityCertificate certify_simple_fp(const StructureAlgebra& a, int trials,
                                        std::uint64_t seed) {
  FpTable t = fp_table(a);
  SimplicityCertificate cert;
  cert.method = SimplicityMethod::IrreducibilityTest;
  cert.primes = {t.p};

  // a one-dimensional module with nonzero action is irreducible outright
  if (t.dim == 1) {
    cert.verdict = SimplicityVerdict::SimpleCertified;
    return cert;
  }

  for (int attempt = 0; attempt < trials; ++attempt) {
    // theta: random short sum of words in the multiplication operators;
    // first attempts use single generators (often singular already)
    auto theta = [&](const FpVec& v, FpVec& out) {
      if (attempt < t.dim) {
        apply_left(t, attempt % t.dim, v, out);
        return;
      }
      int words = 1 + (attempt % 2);
      std::mt19937_64 wrng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt)));
      for (int w = 0; w < words; ++w) {
        FpVec cur = v;
        int l = std::uniform_int_distribution<int>(1, 3)(wrng);
        for (int s = 0; s < l; ++s) {
          FpVec next(static_cast<std::size_t>(t.dim), 0);
          int g = std::uniform_int_distribution<int>(0, t.dim - 1)(wrng);
          bool right = t.general && (wrng() & 1);
          right ? apply_right(t, g, cur, next) : apply_left(t, g, cur, next);
          cur = std::move(next);
        }
        std::uint64_t c = std::uniform_int_distribution<std::uint64_t>(1, t.p - 1)(wrng);
        for (int k = 0; k < t.dim; ++k)
          out[static_cast<std::size_t>(k)] =
              (out[static_cast<std::size_t>(k)] + c * cur[static_cast<std::size_t>(k)]) % t.p;
      }
    };

    std::vector<FpVec> theta_rows = operator_matrix_rows(t, theta);
    std::vector<FpVec> kernel = fp_kernel(t, theta_rows);
    if (kernel.empty()) continue;  // invertible, try again

    bool all_full = true;
    for (const auto& v : kernel) {
      FpRowSpace s = spin(t, v, false);
      if (s.dim() < t.dim) {
        if (auto w = as_ideal_witness(a, s)) {
          cert.verdict = SimplicityVerdict::NotSimple;
          cert.witnesses = std::move(*w);
          return cert;
        }
        all_full = false;
        break;
      }
    }
    if (!all_full) continue;

    // dual spin (Norton's criterion): transpose the rows of theta
    std::vector<FpVec> theta_t(static_cast<std::size_t>(t.dim),
                               FpVec(static_cast<std::size_t>(t.dim), 0));
    for (int r = 0; r < t.dim; ++r)
      for (int c = 0; c < t.dim; ++c)
        theta_t[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] =
            theta_rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    std::vector<FpVec> dual_kernel = fp_kernel(t, theta_t);
    if (dual_kernel.empty()) continue;
    FpRowSpace dual = spin(t, dual_kernel[0], true);
    if (dual.dim() == t.dim) {
      cert.verdict = SimplicityVerdict::SimpleCertified;
      return cert;
    }
    // annihilator of a proper dual submodule is a proper submodule
    FpRowSpace ann(t.p, t.dim);
    for (const auto& v : fp_kernel(t, dual.basis())) ann.insert(v);
    if (auto w = as_ideal_witness(a, ann)) {
      cert.verdict = SimplicityVerdict::NotSimple;
      cert.witnesses = std::move(*w);
      return cert;
    }
  }
  fail(ErrorCode::VerificationFailed,
       a.name() + ": no singular multiplication element found in " + std::to_string(trials) +
           " trials");
}

}  // namespace

SimplicityCertificate certify_simple(const StructureAlgebra& a, int trials,
                                     const std::vector<std::uint64_t>& primes,
                                     std::uint64_t seed) {
  if (!a.has_nonzero_product())
    fail(ErrorCode::DegenerateAlgebra, a.name() + ": A.A = 0");
  if (!a.field().is_rationals()) return certify_simple_fp(a, std::max(trials, 4 * a.dim()), seed);

  const std::size_t dim = static_cast<std::size_t>(a.dim());
  SimplicityCertificate cert;
  cert.method = SimplicityMethod::RandomGeneration;

  // closures from every basis element
  for (int i = 0; i < a.dim(); ++i) {
    Vec e = vec_zero(dim);
    e[static_cast<std::size_t>(i)] = a.field().one();
    Subspace s = ideal_closure(a, {e});
    if (s.dim() < dim) {
      cert.verdict = SimplicityVerdict::NotSimple;
      cert.witnesses = s.basis();
      return cert;
    }
  }
  // and from seeded random nonzero elements
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int tcase = 0; tcase < trials; ++tcase) {
    Vec v(dim);
    bool nonzero = false;
    for (auto& x : v) {
      x = Scalar(d(rng));
      if (sgn(x) != 0) nonzero = true;
    }
    if (!nonzero) v[0] = Scalar(1);
    Subspace s = ideal_closure(a, {v});
    if (s.dim() < dim) {
      cert.verdict = SimplicityVerdict::NotSimple;
      cert.witnesses = s.basis();
      return cert;
    }
  }
  // certified verdicts mod each requested prime
  for (std::uint64_t p : primes) {
    StructureAlgebra ap = reduce_algebra(a, p);
    SimplicityCertificate cp = certify_simple_fp(ap, 4 * a.dim(), seed ^ p);
    if (cp.verdict != SimplicityVerdict::SimpleCertified) {
      cert.verdict = SimplicityVerdict::NotSimple;
      cert.witnesses = std::move(cp.witnesses);
      cert.primes = {p};
      return cert;
    }
    cert.primes.push_back(p);
  }
  cert.verdict = SimplicityVerdict::SimpleEvidence;
  return cert;
}

// ---------------------------------------------------------------------------
// Centroid

Subspace centroid(const StructureAlgebra& a) {
  const int dim = a.dim();
  IntConstants ic = int_constants(a);
  IntRows sys;
  sys.cols = static_cast<std::int64_t>(dim) * dim;
  auto col = [dim](int p, int q) { return static_cast<std::int32_t>(p * dim + q); };

  std::vector<std::pair<std::int32_t, std::int64_t>> row;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto& prod = ic.prod[static_cast<std::size_t>(i) * dim + j];
      for (int k = 0; k < dim; ++k) {
        // G(b_i b_j)_k - (G(b_i) b_j)_k = 0
        row.clear();
        for (const auto& [q, c] : prod) row.push_back({col(k, q), c});
        for (const auto& [p, c] : ic.right[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
          row.push_back({col(p, i), -c});
        if (!row.empty()) {
          std::sort(row.begin(), row.end());
          IRow merged;
          for (const auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
              merged.back().second += e.second;
            else
              merged.push_back(e);
          }
          merged.erase(std::remove_if(merged.begin(), merged.end(),
                                      [](const auto& e) { return e.second == 0; }),
                       merged.end());
          if (!merged.empty()) sys.rows.push_back(std::move(merged));
        }
        // G(b_i b_j)_k - (b_i G(b_j))_k = 0
        row.clear();
        for (const auto& [q, c] : prod) row.push_back({col(k, q), c});
        for (const auto& [p, c] : ic.left[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          row.push_back({col(p, j), -c});
        if (!row.empty()) {
          std::sort(row.begin(), row.end());
          IRow merged;
          for (const auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
              merged.back().second += e.second;
            else
              merged.push_back(e);
          }
          merged.erase(std::remove_if(merged.begin(), merged.end(),
                                      [](const auto& e) { return e.second == 0; }),
                       merged.end());
          if (!merged.empty()) sys.rows.push_back(std::move(merged));
        }
      }
    }

  NullspaceResult ns = nullspace(sys, a.field(),
                                 a.field().is_rationals() ? SolvePolicy::MultiModular
                                                          : SolvePolicy::Direct);
  Subspace out(a.field(), static_cast<std::size_t>(sys.cols));
  for (const auto& v : ns.basis) out.insert(v);
  return out;
}

// ---------------------------------------------------------------------------
// Matrix-space kernel lemmas

namespace {

struct KmatBasis {
  std::vector<OctMatrix> skew, sym;
  std::vector<std::array<int, 2>> skew_idx, sym_idx;
};

KmatBasis kmat_basis(const Field& f, int n) {
  KmatBasis b;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      OctMatrix a = mat_sub(OctMatrix::unit_entry(f, n, u, v, Octonion::one(f)),
                            OctMatrix::unit_entry(f, n, v, u, Octonion::one(f)));
      b.skew.push_back(a);
      b.skew_idx.push_back({u, v});
    }
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      OctMatrix s = OctMatrix::unit_entry(f, n, u, v, Octonion::one(f));
      if (u != v) s = mat_add(s, OctMatrix::unit_entry(f, n, v, u, Octonion::one(f)));
      b.sym.push_back(s);
      b.sym_idx.push_back({u, v});
    }
  return b;
}

Vec sym_coords(const KmatBasis& b, const OctMatrix& m) {
  Vec out;
  for (const auto& [u, v] : b.sym_idx) out.push_back(m.at(u, v)[0]);
  return out;
}

Vec skew_coords(const KmatBasis& b, const OctMatrix& m) {
  Vec out;
  for (const auto& [u, v] : b.skew_idx) out.push_back(m.at(u, v)[0]);
  return out;
}

bool is_unit_line(const Subspace& s, const Vec& unit_coords) {
  if (s.dim() != 1) return false;
  return s.contains(unit_coords);
}

}  // namespace

LemmaKernelReport lemma_kernels(int n, const Field& field) {
  if (n < 2) fail(ErrorCode::BadInput, "lemma kernels need n >= 2");
  LemmaKernelReport rep;
  rep.n = n;
  KmatBasis b = kmat_basis(field, n);
  const int nskew = static_cast<int>(b.skew.size());
  const int nsym = static_cast<int>(b.sym.size());

  // (a) x in M_n^- with x o M_n^- = 0
  {
    SparseMatrix m(static_cast<std::int64_t>(nskew) * nsym, nskew);
    for (int j = 0; j < nskew; ++j)
      for (int i = 0; i < nskew; ++i) {
        Vec c = sym_coords(b, jordan_prod(b.skew[static_cast<std::size_t>(i)],
                                          b.skew[static_cast<std::size_t>(j)]));
        for (int tcoord = 0; tcoord < nsym; ++tcoord)
          m.add(static_cast<std::int64_t>(j) * nsym + tcoord, i,
                c[static_cast<std::size_t>(tcoord)]);
      }
    m.finalize();
    rep.skew_jordan_kernel_dim = nullspace(m, field, SolvePolicy::Direct).dim;
  }

  Vec unit = vec_zero(static_cast<std::size_t>(nsym));
  {
    int idx = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        if (u == v) unit[static_cast<std::size_t>(idx)] = field.one();
        ++idx;
      }
  }

  // (b) m in M_n^+ with [m, M_n^-] = 0, then with [m, M_n^+] = 0
  {
    SparseMatrix m(static_cast<std::int64_t>(nskew) * nsym, nsym);
    for (int j = 0; j < nskew; ++j)
      for (int i = 0; i < nsym; ++i) {
        Vec c = sym_coords(b, bracket(b.sym[static_cast<std::size_t>(i)],
                                      b.skew[static_cast<std::size_t>(j)]));
        for (int tcoord = 0; tcoord < nsym; ++tcoord)
          m.add(static_cast<std::int64_t>(j) * nsym + tcoord, i,
                c[static_cast<std::size_t>(tcoord)]);
      }
    m.finalize();
    NullspaceResult ns = nullspace(m, field, SolvePolicy::Direct);
    rep.sym_vs_skew_dim = ns.dim;
    Subspace s(field, static_cast<std::size_t>(nsym));
    for (const auto& v : ns.basis) s.insert(v);
    rep.sym_vs_skew_is_unit_line = is_unit_line(s, unit);
  }
  {
    SparseMatrix m(static_cast<std::int64_t>(nsym) * nskew, nsym);
    for (int j = 0; j < nsym; ++j)
      for (int i = 0; i < nsym; ++i) {
        Vec c = skew_coords(b, bracket(b.sym[static_cast<std::size_t>(i)],
                                       b.sym[static_cast<std::size_t>(j)]));
        for (int tcoord = 0; tcoord < nskew; ++tcoord)
          m.add(static_cast<std::int64_t>(j) * nskew + tcoord, i,
                c[static_cast<std::size_t>(tcoord)]);
      }
    m.finalize();
    NullspaceResult ns = nullspace(m, field, SolvePolicy::Direct);
    rep.sym_vs_sym_dim = ns.dim;
    Subspace s(field, static_cast<std::size_t>(nsym));
    for (const auto& v : ns.basis) s.insert(v);
    rep.sym_vs_sym_is_unit_line = is_unit_line(s, unit);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Identities

namespace {


void vec_add_into(const Field& F, Vec& dst, const Vec& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = F.add(dst[i], src[i]);
}

void vec_sub_into(const Field& F, Vec& dst, const Vec& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = F.sub(dst[i], src[i]);
}

// Jacobian (xy)z + (yz)x + (zx)y for basis x, y and vector z slots mixed below
Vec jacobian_bbv(const StructureAlgebra& a, int x, int y, const Vec& z) {
  const Field& F = a.field();
  Vec out = vec_zero(static_cast<std::size_t>(a.dim()));
  Vec xy = a.basis_product(x, y);
  // (xy)z
  vec_add_into(F, out, a.product(xy, z));
  // (yz)x
  vec_add_into(F, out, a.mul_basis_right(a.mul_basis_left(y, z), x));
  // (zx)y
  vec_add_into(F, out, a.mul_basis_right(a.mul_basis_right(z, x), y));
  return out;
}

IdentityResult table_symmetry(const StructureAlgebra& a, bool anti) {
  const Field& F = a.field();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) {
      Vec ij = a.basis_product(i, j);
      Vec ji = a.basis_product(j, i);
      if (anti)
        for (auto& x : ji) x = F.neg(x);
      if (!vec_eq(ij, ji)) return {false, {i, j}};
      if (anti && i == j && !vec_is_zero(ij)) return {false, {i, j}};
    }
  return {true, {}};
}

}  // namespace

IdentityResult identity_check(const StructureAlgebra& a, IdentityKind kind) {
  const Field& F = a.field();
  const int dim = a.dim();

  switch (kind) {
    case IdentityKind::Commutative:
      return table_symmetry(a, false);
    case IdentityKind::Anticommutative:
      return table_symmetry(a, true);

    case IdentityKind::Jacobi: {
      if (a.flavor() != Flavor::Anticommutative)
        fail(ErrorCode::FlavorMismatch, "Jacobi needs an anticommutative algebra");
      for (int x = 0; x < dim; ++x)
        for (int y = x + 1; y < dim; ++y)
          for (int z = y + 1; z < dim; ++z) {
            Vec ez = vec_zero(static_cast<std::size_t>(dim));
            ez[static_cast<std::size_t>(z)] = F.one();
            if (!vec_is_zero(jacobian_bbv(a, x, y, ez))) return {false, {x, y, z}};
          }
      return {true, {}};
    }

    case IdentityKind::Jordan: {
      if (a.flavor() != Flavor::Commutative)
        fail(ErrorCode::FlavorMismatch, "Jordan needs a commutative algebra");
      // linearized: sum over the three {i,j} | {k} splits of
      // ((x_i o x_j) o y) o x_k - (x_i o x_j) o (y o x_k) = 0
      for (int x1 = 0; x1 < dim; ++x1)
        for (int x2 = x1; x2 < dim; ++x2)
          for (int x3 = x2; x3 < dim; ++x3) {
            const int xs[3] = {x1, x2, x3};
            for (int y = 0; y < dim; ++y) {
              Vec total = vec_zero(static_cast<std::size_t>(dim));
              for (int split = 0; split < 3; ++split) {
                int xi = xs[split == 0 ? 1 : 0];
                int xj = xs[split == 2 ? 1 : 2];
                int xk = xs[split];
                Vec pij = a.basis_product(xi, xj);
                Vec lhs = a.mul_basis_right(a.mul_basis_right(pij, y), xk);
                Vec rhs = a.product(pij, a.basis_product(y, xk));
                vec_add_into(F, total, lhs);
                vec_sub_into(F, total, rhs);
              }
              if (!vec_is_zero(total)) return {false, {x1, x2, x3, y}};
            }
          }
      return {true, {}};
    }

    case IdentityKind::Malcev: {
      if (a.flavor() != Flavor::Anticommutative)
        fail(ErrorCode::FlavorMismatch, "Malcev needs an anticommutative algebra");
      // linearized in the repeated slot:
      // J(x,y,wz) + J(w,y,xz) = J(x,y,z)w + J(w,y,z)x
      for (int x = 0; x < dim; ++x)
        for (int w = x; w < dim; ++w)
          for (int y = 0; y < dim; ++y)
            for (int z = 0; z < dim; ++z) {
              Vec wz = a.basis_product(w, z);
              Vec xz = a.basis_product(x, z);
              Vec ez = vec_zero(static_cast<std::size_t>(dim));
              ez[static_cast<std::size_t>(z)] = F.one();
              Vec lhs = jacobian_bbv(a, x, y, wz);
              vec_add_into(F, lhs, jacobian_bbv(a, w, y, xz));
              Vec rhs = a.mul_basis_right(jacobian_bbv(a, x, y, ez), w);
              vec_add_into(F, rhs, a.mul_basis_right(jacobian_bbv(a, w, y, ez), x));
              vec_sub_into(F, lhs, rhs);
              if (!vec_is_zero(lhs)) return {false, {x, w, y, z}};
            }
      return {true, {}};
    }
  }
  fail(ErrorCode::BadInput, "unknown identity kind");
}

}  // namespace octlab
