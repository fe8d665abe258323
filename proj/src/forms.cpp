#include "octlab/forms.hpp"

#include <algorithm>
#include <random>

namespace octlab {

namespace {

// upper-triangle index for r <= s over dim columns
inline std::int32_t ut_index(int dim, int r, int s) {
  return static_cast<std::int32_t>(r * dim - r * (r - 1) / 2 + (s - r));
}

}  // namespace

BilinearFormSolution assoc_form_space(const StructureAlgebra& a) {
  const int dim = a.dim();
  IntConstants ic = int_constants(a);
  IntRows sys;
  sys.cols = static_cast<std::int64_t>(dim) * (dim + 1) / 2;

  IRow row;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        // G(b_i b_j, b_k) - G(b_i, b_j b_k) = 0
        for (const auto& [m, c] : ic.prod[static_cast<std::size_t>(i) * dim + j])
          row.push_back({ut_index(dim, std::min<int>(m, k), std::max<int>(m, k)), c});
        for (const auto& [m, c] : ic.prod[static_cast<std::size_t>(j) * dim + k])
          row.push_back({ut_index(dim, std::min<int>(i, m), std::max<int>(i, m)), -c});
        if (row.empty()) continue;
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
        row.clear();
      }

  NullspaceResult ns = nullspace(sys, a.field(),
                                 a.field().is_rationals() ? SolvePolicy::MultiModular
                                                          : SolvePolicy::Direct);
  BilinearFormSolution out;
  out.dim = ns.dim;
  out.certification = ns.certification;
  for (const auto& v : ns.basis) {
    Vec g(static_cast<std::size_t>(dim) * dim, a.field().zero());
    for (int r = 0; r < dim; ++r)
      for (int s = r; s < dim; ++s) {
        const Scalar& x = v[static_cast<std::size_t>(ut_index(dim, r, s))];
        g[static_cast<std::size_t>(r) * dim + s] = x;
        g[static_cast<std::size_t>(s) * dim + r] = x;
      }
    SparseMatrix gm(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int s = 0; s < dim; ++s)
        gm.add(r, s, g[static_cast<std::size_t>(r) * dim + s]);
    gm.finalize();
    std::int64_t rk = rank(gm, a.field());
    out.basis.push_back(std::move(g));
    out.ranks.push_back(rk);
    out.nondegenerate.push_back(rk == dim);
  }
  return out;
}

TraceFormGram trace_form_gram(int n, Sign sign, const Field& field) {
  StructureAlgebra a = build_herm(n, sign, field);
  const int dim = a.dim();
  std::vector<OctMatrix> reps;
  reps.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) reps.push_back(herm_rep(field, n, sign, i));

  TraceFormGram out;
  out.gram.assign(static_cast<std::size_t>(dim) * dim, field.zero());
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Scalar v = trace_form(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]);
      out.gram[static_cast<std::size_t>(i) * dim + j] = v;
      out.gram[static_cast<std::size_t>(j) * dim + i] = v;
    }
  // symmetry holds by construction above; recheck against the unsymmetrized values
  out.symmetric = true;
  for (int i = 0; i < dim && out.symmetric; ++i)
    for (int j = 0; j < i; ++j) {
      Scalar v = trace_form(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]);
      if (!field.eq(v, out.gram[static_cast<std::size_t>(i) * dim + j])) {
        out.symmetric = false;
        break;
      }
    }
  // associativity on all basis triples through the structure constants
  out.associative = true;
  for (int i = 0; i < dim && out.associative; ++i)
    for (int j = 0; j < dim && out.associative; ++j)
      for (int k = 0; k < dim; ++k) {
        Scalar lhs = field.zero();
        for (const auto& [m, c] : a.table(i, j))
          lhs = field.add(lhs, field.mul(c, out.gram[static_cast<std::size_t>(m) * dim + k]));
        Scalar rhs = field.zero();
        for (const auto& [m, c] : a.table(j, k))
          rhs = field.add(rhs, field.mul(c, out.gram[static_cast<std::size_t>(i) * dim + m]));
        if (!field.eq(lhs, rhs)) {
          out.associative = false;
          break;
        }
      }
  SparseMatrix gm(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int s = 0; s < dim; ++s) gm.add(r, s, out.gram[static_cast<std::size_t>(r) * dim + s]);
  gm.finalize();
  out.rank = rank(gm, field);
  return out;
}

namespace {

Scalar rand_small(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<long> d(-4, 4);
  return f.from_long(d(rng));
}

OctMatrix rand_scalar_mat(std::mt19937_64& rng, const Field& f, int n, bool symmetric) {
  OctMatrix m(f, n);
  for (int u = 0; u < n; ++u)
    for (int v = symmetric ? u : u + 1; v < n; ++v) {
      Scalar c = rand_small(rng, f);
      m.at(u, v) = Octonion::scalar(f, c);
      if (u != v) m.at(v, u) = Octonion::scalar(f, symmetric ? c : f.neg(c));
    }
  return m;
}

OctMatrix tensor_oct(const OctMatrix& kmat, const Octonion& a) {
  OctMatrix out(kmat.field(), kmat.order());
  for (int u = 0; u < kmat.order(); ++u)
    for (int v = 0; v < kmat.order(); ++v)
      if (!kmat.field().is_zero(kmat.at(u, v)[0]))
        out.at(u, v) = oct_scale(kmat.at(u, v)[0], a);
  return out;
}

Scalar kmat_trace_prod(const Field& f, const OctMatrix& x, const OctMatrix& y) {
  // Tr(xy) for scalar matrices
  Octonion t = mat_trace(mat_mul(x, y));
  return t[0];
}

}  // namespace

bool verify_block_values(int n, Sign sign, const Field& field, int tuples,
                         std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::BadInput, "block values need n >= 2");
  std::mt19937_64 rng(seed);
  const Scalar two = field.from_long(2);
  for (int t = 0; t < tuples; ++t) {
    OctMatrix m = rand_scalar_mat(rng, field, n, true);
    OctMatrix s = rand_scalar_mat(rng, field, n, true);
    OctMatrix x = rand_scalar_mat(rng, field, n, false);
    OctMatrix y = rand_scalar_mat(rng, field, n, false);
    Octonion a(field), b(field);
    for (int i = 1; i < 8; ++i) {
      a[i] = rand_small(rng, field);
      b[i] = rand_small(rng, field);
    }
    Scalar nab = oct_norm_polar(a, b);
    Octonion one = Octonion::one(field);
    bool ok;
    if (sign == Sign::Plus) {
      // (m(x)1, s(x)1) -> 2Tr(ms); (m(x)1, x(x)a) -> 0; (x(x)a, y(x)b) -> N(a,b)Tr(xy)
      ok = field.eq(trace_form(tensor_oct(m, one), tensor_oct(s, one)),
                    field.mul(two, kmat_trace_prod(field, m, s))) &&
           field.is_zero(trace_form(tensor_oct(m, one), tensor_oct(x, a))) &&
           field.eq(trace_form(tensor_oct(x, a), tensor_oct(y, b)),
                    field.mul(nab, kmat_trace_prod(field, x, y)));
    } else {
      // (x(x)1, y(x)1) -> 2Tr(xy); (x(x)1, m(x)a) -> 0; (m(x)a, s(x)b) -> N(a,b)Tr(ms)
      ok = field.eq(trace_form(tensor_oct(x, one), tensor_oct(y, one)),
                    field.mul(two, kmat_trace_prod(field, x, y))) &&
           field.is_zero(trace_form(tensor_oct(x, one), tensor_oct(m, a))) &&
           field.eq(trace_form(tensor_oct(m, a), tensor_oct(s, b)),
                    field.mul(nab, kmat_trace_prod(field, m, s)));
    }
    if (!ok) return false;
  }
  return true;
}

Scalar form_match(const StructureAlgebra& a, const BilinearFormSolution& solution,
                  const Vec& gram) {
  if (solution.dim != 1)
    fail(ErrorCode::BadInput, "form match needs a one-dimensional solution space");
  const Field& F = a.field();
  const Vec& sol = solution.basis[0];
  if (sol.size() != gram.size()) fail(ErrorCode::DimensionMismatch, "gram size");
  std::size_t idx = gram.size();
  for (std::size_t i = 0; i < gram.size(); ++i)
    if (!F.is_zero(gram[i])) {
      idx = i;
      break;
    }
  if (idx == gram.size())
    fail(ErrorCode::NotProportional, "reference form is zero");
  Scalar lambda = F.div(sol[idx], gram[idx]);
  for (std::size_t i = 0; i < gram.size(); ++i)
    if (!F.eq(sol[i], F.mul(lambda, gram[i])))
      fail(ErrorCode::NotProportional, a.name() + ": solution form not a multiple of the trace form");
  return lambda;
}

KillingReport killing_restriction_check(int n, const Field& field) {
  if (n < 3) fail(ErrorCode::BadInput, "Killing restriction needs n >= 3");
  StructureAlgebra so = build_auxiliary(AuxKind::SOn, n, field);
  const int d = so.dim();
  // Killing form Tr(ad x ad y) from the structure constants
  Vec killing(static_cast<std::size_t>(d) * d, field.zero());
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Scalar acc = field.zero();
      for (int k = 0; k < d; ++k)
        for (const auto& [m, cik] : so.table(i, k))
          for (const auto& [k2, cjm] : so.table(j, m))
            if (k2 == k) acc = field.add(acc, field.mul(cik, cjm));
      killing[static_cast<std::size_t>(i) * d + j] = acc;
      killing[static_cast<std::size_t>(j) * d + i] = acc;
    }

  TraceFormGram gram = trace_form_gram(n, Sign::Minus, field);
  const int dim = herm_dim(n, Sign::Minus);
  // skew-matrix block comes first in the canonical basis
  Vec restricted(static_cast<std::size_t>(d) * d, field.zero());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      restricted[static_cast<std::size_t>(i) * d + j] =
          gram.gram[static_cast<std::size_t>(i) * dim + j];

  std::size_t idx = killing.size();
  for (std::size_t i = 0; i < killing.size(); ++i)
    if (!field.is_zero(killing[i])) {
      idx = i;
      break;
    }
  if (idx == killing.size()) fail(ErrorCode::NotProportional, "Killing form vanished");
  KillingReport rep;
  rep.factor = field.div(restricted[idx], killing[idx]);
  for (std::size_t i = 0; i < killing.size(); ++i)
    if (!field.eq(restricted[i], field.mul(rep.factor, killing[i])))
      fail(ErrorCode::NotProportional, "restriction is not a Killing multiple");
  rep.proportional = true;
  return rep;
}

}  // namespace octlab
