#include "octlab/deltader.hpp"

#include <algorithm>

namespace octlab {

namespace {

void push_merged(IntRows& sys, IRow& row) {
  if (row.empty()) return;
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

// delta as an exact integer pair; for prime fields the residue over 1
std::pair<std::int64_t, std::int64_t> delta_parts(const Field& f, const Scalar& delta) {
  Scalar d = f.reduce(delta);
  if (!d.get_num().fits_slong_p() || !d.get_den().fits_slong_p())
    fail(ErrorCode::ResourceBound, "delta exceeds int64 range");
  return {d.get_num().get_si(), d.get_den().get_si()};
}

}  // namespace

DeltaDerSystem::DeltaDerSystem(const StructureAlgebra& algebra, const Scalar& delta)
    : algebra_(algebra), delta_(algebra.field().reduce(delta)) {
  const int dim = algebra.dim();
  IntConstants ic = int_constants(algebra);
  auto [dp, dq] = delta_parts(algebra.field(), delta_);
  rows_.cols = static_cast<std::int64_t>(dim) * dim;
  auto col = [dim](int p, int q) { return static_cast<std::int32_t>(p * dim + q); };

  const bool skip_equal = algebra.flavor() == Flavor::Anticommutative;
  const bool ordered = algebra.flavor() == Flavor::General;
  IRow row;
  for (int i = 0; i < dim; ++i) {
    const int jlo = ordered ? 0 : (skip_equal ? i + 1 : i);
    for (int j = jlo; j < dim; ++j) {
      const auto& prod = ic.prod[static_cast<std::size_t>(i) * dim + j];
      for (int k = 0; k < dim; ++k) {
        // dq*s*D(b_i b_j) - dp*s*(D(b_i) b_j) - dp*s*(b_i D(b_j)) at coord k
        for (const auto& [q, c] : prod) row.push_back({col(k, q), dq * c});
        for (const auto& [p, c] : ic.right[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
          row.push_back({col(p, i), -dp * c});
        for (const auto& [p, c] : ic.left[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          row.push_back({col(p, j), -dp * c});
        push_merged(rows_, row);
      }
    }
  }
}

SparseMatrix DeltaDerSystem::matrix() const {
  SparseMatrix m(static_cast<std::int64_t>(rows_.rows.size()), rows_.cols);
  for (std::size_t r = 0; r < rows_.rows.size(); ++r)
    for (const auto& [c, v] : rows_.rows[r])
      m.add(static_cast<std::int64_t>(r), c, Scalar(static_cast<long>(v)));
  m.finalize();
  return m;
}

Vec apply_map(const Vec& map, const Vec& v, const Field& f) {
  const std::size_t dim = v.size();
  Vec out = vec_zero(dim);
  for (std::size_t q = 0; q < dim; ++q) {
    if (f.is_zero(v[q])) continue;
    for (std::size_t p = 0; p < dim; ++p) {
      const Scalar& m = map[p * dim + q];
      if (!f.is_zero(m)) out[p] = f.add(out[p], f.mul(m, v[q]));
    }
  }
  return out;
}

bool verify_delta_derivation(const StructureAlgebra& a, const Vec& map, const Scalar& delta) {
  const Field& F = a.field();
  const int dim = a.dim();
  const Scalar d = F.reduce(delta);
  auto column = [&](int q) {
    Vec c(static_cast<std::size_t>(dim));
    for (int p = 0; p < dim; ++p)
      c[static_cast<std::size_t>(p)] = map[static_cast<std::size_t>(p) * dim + q];
    return c;
  };
  const bool skip_equal = a.flavor() == Flavor::Anticommutative;
  const bool ordered = a.flavor() == Flavor::General;
  for (int i = 0; i < dim; ++i) {
    Vec di = column(i);
    const int jlo = ordered ? 0 : (skip_equal ? i + 1 : i);
    for (int j = jlo; j < dim; ++j) {
      Vec lhs = apply_map(map, a.basis_product(i, j), F);
      Vec rhs = a.mul_basis_right(di, j);
      Vec rhs2 = a.mul_basis_left(i, column(j));
      for (int k = 0; k < dim; ++k) {
        Scalar want = F.mul(d, F.add(rhs[static_cast<std::size_t>(k)],
                                     rhs2[static_cast<std::size_t>(k)]));
        if (!F.eq(lhs[static_cast<std::size_t>(k)], want)) return false;
      }
    }
  }
  return true;
}

DerivationSpace delta_der_space(const StructureAlgebra& a, const Scalar& delta) {
  DeltaDerSystem sys(a, delta);
  SolvePolicy policy =
      a.field().is_rationals() ? SolvePolicy::MultiModular : SolvePolicy::Direct;
  NullspaceResult ns = nullspace(sys.rows(), a.field(), policy);
  DerivationSpace out;
  out.delta = sys.delta();
  out.dim = ns.dim;
  out.basis = std::move(ns.basis);
  out.certification = ns.certification;
  out.primes_used = std::move(ns.primes_used);
  for (const auto& m : out.basis)
    if (!verify_delta_derivation(a, m, out.delta))
      fail(ErrorCode::VerificationFailed,
           a.name() + ": solver map fails the derivation relation");
  return out;
}

std::int64_t derivation_dimension(const StructureAlgebra& a) {
  return delta_der_space(a, Scalar(1)).dim;
}

// ---------------------------------------------------------------------------

KnownDerivations known_derivations(int n, Sign sign, const Field& field) {
  StructureAlgebra a = build_herm(n, sign, field);
  const int dim = a.dim();
  std::vector<OctMatrix> reps;
  reps.reserve(static_cast<std::size_t>(dim));
  for (int t = 0; t < dim; ++t) reps.push_back(herm_rep(field, n, sign, t));

  KnownDerivations out{{}, RowSpace(field, static_cast<std::size_t>(dim) * dim)};

  auto add_map = [&](const std::vector<Vec>& columns, const std::string& what) {
    Vec m(static_cast<std::size_t>(dim) * dim, field.zero());
    for (int q = 0; q < dim; ++q)
      for (int p = 0; p < dim; ++p)
        m[static_cast<std::size_t>(p) * dim + q] = columns[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)];
    if (!verify_delta_derivation(a, m, field.one()))
      fail(ErrorCode::VerificationFailed, a.name() + ": " + what + " is not a derivation");
    out.span.insert(m);
    out.maps.push_back(std::move(m));
  };

  // inner maps ad(g (x) 1) over a skew matrix basis
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      OctMatrix g = mat_sub(OctMatrix::unit_entry(field, n, u, v, Octonion::one(field)),
                            OctMatrix::unit_entry(field, n, v, u, Octonion::one(field)));
      std::vector<Vec> cols;
      cols.reserve(static_cast<std::size_t>(dim));
      for (int t = 0; t < dim; ++t) {
        OctMatrix y = mat_sub(mat_mul(g, reps[static_cast<std::size_t>(t)]),
                              mat_mul(reps[static_cast<std::size_t>(t)], g));
        cols.push_back(herm_decompose(y, sign));  // throws if not J-compatible
      }
      add_map(cols, "ad(A" + std::to_string(u + 1) + std::to_string(v + 1) + "*1)");
    }

  // entrywise extensions of a computed octonion derivation basis
  StructureAlgebra octs = build_auxiliary(AuxKind::Octonions, 0, field);
  DerivationSpace der_oct = delta_der_space(octs, field.one());
  for (std::size_t di = 0; di < der_oct.basis.size(); ++di) {
    const Vec& dmap = der_oct.basis[di];
    auto apply_oct = [&](const Octonion& o) {
      Octonion r(field);
      for (int q = 0; q < 8; ++q) {
        if (field.is_zero(o[q])) continue;
        for (int p = 0; p < 8; ++p) {
          const Scalar& c = dmap[static_cast<std::size_t>(p) * 8 + static_cast<std::size_t>(q)];
          if (!field.is_zero(c)) r[p] = field.add(r[p], field.mul(c, o[q]));
        }
      }
      return r;
    };
    std::vector<Vec> cols;
    cols.reserve(static_cast<std::size_t>(dim));
    for (int t = 0; t < dim; ++t) {
      OctMatrix y(field, n);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) y.at(u, v) = apply_oct(reps[static_cast<std::size_t>(t)].at(u, v));
      cols.push_back(herm_decompose(y, sign));
    }
    add_map(cols, "entrywise octonion derivation " + std::to_string(di));
  }

  const std::size_t expected =
      static_cast<std::size_t>(14 + n * (n - 1) / 2);
  if (!(sign == Sign::Plus && n == 1) && out.span.dim() != expected)
    fail(ErrorCode::VerificationFailed,
         a.name() + ": constructed derivation span has dim " +
             std::to_string(out.span.dim()) + ", expected " + std::to_string(expected));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Scalar> default_delta_scan() {
  return {Scalar(0), Scalar(1), Scalar(1, 2), Scalar(-1), Scalar(2), Scalar(3), Scalar(-1, 2)};
}

DeltaScan delta_scan(const StructureAlgebra& a, const std::vector<Scalar>& deltas) {
  for (std::size_t i = 0; i < deltas.size(); ++i)
    for (std::size_t j = i + 1; j < deltas.size(); ++j)
      if (cmp(deltas[i], deltas[j]) == 0)
        fail(ErrorCode::BadInput, "scan deltas must be pairwise distinct");
  DeltaScan scan;
  const Field& F = a.field();
  const int dim = a.dim();
  Vec id(static_cast<std::size_t>(dim) * dim, F.zero());
  for (int p = 0; p < dim; ++p) id[static_cast<std::size_t>(p) * dim + p] = F.one();

  bool saw_one = false, saw_half = false, half_is_id = false, others_zero = true;
  std::int64_t dim_one = 0;
  for (const auto& d : deltas) {
    DerivationSpace s = delta_der_space(a, d);
    Scalar dc = F.reduce(d);
    scan.dims[dc] = s.dim;
    if (F.eq(dc, F.one())) {
      saw_one = true;
      dim_one = s.dim;
    } else if (F.eq(dc, F.half())) {
      saw_half = true;
      half_is_id = s.dim == 1 && vec_eq(s.basis[0], id);
    } else if (s.dim != 0) {
      others_zero = false;
    }
  }
  if (saw_one && saw_half && half_is_id && others_zero)
    scan.delta_algebra_dim = dim_one + 1;
  return scan;
}

// ---------------------------------------------------------------------------

Subspace half_der_elements(const StructureAlgebra& a) {
  if (a.flavor() != Flavor::Commutative)
    fail(ErrorCode::FlavorMismatch, "half-derivation elements need a commutative algebra");
  if (!a.unit()) fail(ErrorCode::NoUnit, a.name() + " has no unit");
  const int dim = a.dim();
  IntConstants ic = int_constants(a);
  IntRows sys;
  sys.cols = dim;
  IRow row;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const auto& prod = ic.prod[static_cast<std::size_t>(i) * dim + j];
      for (int k = 0; k < dim; ++k) {
        // 2 ((b_i b_j) a)_k - ((b_i a) b_j)_k - ((b_j a) b_i)_k, scaled by s^2
        for (const auto& [mq, c1] : prod)
          for (const auto& [q, c2] : ic.left[static_cast<std::size_t>(mq)][static_cast<std::size_t>(k)])
            row.push_back({q, 2 * c1 * c2});
        for (const auto& [mm, c2] : ic.right[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
          for (const auto& [q, c1] : ic.left[static_cast<std::size_t>(i)][static_cast<std::size_t>(mm)])
            row.push_back({q, -c1 * c2});
        for (const auto& [mm, c2] : ic.right[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          for (const auto& [q, c1] : ic.left[static_cast<std::size_t>(j)][static_cast<std::size_t>(mm)])
            row.push_back({q, -c1 * c2});
        push_merged(sys, row);
      }
    }
  NullspaceResult ns = nullspace(sys, a.field(),
                                 a.field().is_rationals() ? SolvePolicy::MultiModular
                                                          : SolvePolicy::Direct);
  Subspace out(a.field(), static_cast<std::size_t>(dim));
  for (const auto& v : ns.basis) out.insert(v);
  return out;
}

// ---------------------------------------------------------------------------

XdmReport lemma_xdm_space(int n, const Scalar& delta, const Field& field) {
  if (n < 2) fail(ErrorCode::BadInput, "lemma needs n >= 2");
  Scalar d = field.reduce(delta);
  if (field.is_zero(d) || field.eq(d, field.one()))
    fail(ErrorCode::BadInput, "delta must avoid 0 and 1");

  // bases of M_n^- and M_n^+ as scalar octonion matrices
  std::vector<OctMatrix> skew, sym;
  std::vector<std::array<int, 2>> sym_idx;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      skew.push_back(mat_sub(OctMatrix::unit_entry(field, n, u, v, Octonion::one(field)),
                             OctMatrix::unit_entry(field, n, v, u, Octonion::one(field))));
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      OctMatrix s = OctMatrix::unit_entry(field, n, u, v, Octonion::one(field));
      if (u != v) s = mat_add(s, OctMatrix::unit_entry(field, n, v, u, Octonion::one(field)));
      sym.push_back(s);
      sym_idx.push_back({u, v});
    }
  const int ns = static_cast<int>(sym.size());
  auto coords = [&](const OctMatrix& m) {
    Vec out;
    for (const auto& [u, v] : sym_idx) out.push_back(m.at(u, v)[0]);
    return out;
  };

  SparseMatrix sysm(static_cast<std::int64_t>(skew.size()) * ns * ns,
                    static_cast<std::int64_t>(ns) * ns);
  std::int64_t r = 0;
  for (std::size_t xi = 0; xi < skew.size(); ++xi)
    for (int mi = 0; mi < ns; ++mi) {
      Vec vxm = coords(bracket(skew[xi], sym[static_cast<std::size_t>(mi)]));
      for (int k = 0; k < ns; ++k) {
        // D([x,m])_k - delta [x, D(m)]_k = 0
        for (int q = 0; q < ns; ++q) {
          if (sgn(vxm[static_cast<std::size_t>(q)]) != 0)
            sysm.add(r, static_cast<std::int64_t>(k) * ns + q, vxm[static_cast<std::size_t>(q)]);
          Vec wxq = coords(bracket(skew[xi], sym[static_cast<std::size_t>(q)]));
          if (sgn(wxq[static_cast<std::size_t>(k)]) != 0)
            sysm.add(r, static_cast<std::int64_t>(q) * ns + mi,
                     field.neg(field.mul(d, wxq[static_cast<std::size_t>(k)])));
        }
        ++r;
      }
    }
  sysm.finalize();
  NullspaceResult nsr = nullspace(sysm, field, SolvePolicy::Direct);

  XdmReport rep;
  rep.dim = nsr.dim;
  rep.image_in_unit_line = true;
  // E coordinates: 1 on the diagonal positions
  std::vector<bool> diag(static_cast<std::size_t>(ns), false);
  for (int i = 0; i < ns; ++i) diag[static_cast<std::size_t>(i)] = sym_idx[static_cast<std::size_t>(i)][0] == sym_idx[static_cast<std::size_t>(i)][1];
  for (const auto& m : nsr.basis) {
    for (int q = 0; q < ns && rep.image_in_unit_line; ++q) {
      // column q must be a multiple of E's coordinates
      Scalar ref = field.zero();
      bool have_ref = false;
      for (int p = 0; p < ns; ++p) {
        const Scalar& x = m[static_cast<std::size_t>(p) * ns + q];
        if (!diag[static_cast<std::size_t>(p)]) {
          if (!field.is_zero(x)) rep.image_in_unit_line = false;
        } else if (!have_ref) {
          ref = x;
          have_ref = true;
        } else if (!field.eq(ref, x)) {
          rep.image_in_unit_line = false;
        }
      }
    }
    if (!rep.image_in_unit_line) break;
  }
  return rep;
}

// ---------------------------------------------------------------------------

GlCrossChecks gl_cross_checks(int n, const Field& field) {
  if (n < 2) fail(ErrorCode::BadInput, "cross-checks need n >= 2");
  GlCrossChecks out;
  StructureAlgebra gl = build_auxiliary(AuxKind::GLn, n, field);
  DerivationSpace dm1 = delta_der_space(gl, Scalar(-1));
  out.gl_minus_one = dm1.dim;
  out.gl_half = delta_der_space(gl, field.half()).dim;

  // xi: kill sl_n, E -> E; columns over the E_uv basis
  if (dm1.dim == 1) {
    const int dim = gl.dim();
    Vec xi(static_cast<std::size_t>(dim) * dim, field.zero());
    Scalar inv_n = field.inv(field.from_long(n));
    for (int u = 0; u < n; ++u) {
      int q = u * n + u;  // E_uu column
      for (int w = 0; w < n; ++w) xi[static_cast<std::size_t>(w * n + w) * dim + q] = inv_n;
    }
    RowSpace span(field, static_cast<std::size_t>(dim) * dim);
    for (const auto& b : dm1.basis) span.insert(b);
    out.gl_minus_one_is_xi_line = span.contains(xi);
  }

  if (n == 2) {
    out.sl2_minus_one = delta_der_space(build_auxiliary(AuxKind::SLn, 2, field), Scalar(-1)).dim;
    out.gl2_minus_one = out.gl_minus_one;
  }
  return out;
}

}  // namespace octlab
