#include "octlab/algebra.hpp"

#include <array>
#include <functional>
#include <random>
#include <sstream>

namespace octlab {

const char* sign_name(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

StructureAlgebra::StructureAlgebra(std::string name, Field field, Flavor flavor,
                                   std::vector<std::string> labels,
                                   std::vector<Terms> table, std::optional<Vec> unit)
    : name_(std::move(name)),
      field_(field),
      flavor_(flavor),
      dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      table_(std::move(table)),
      unit_(std::move(unit)) {
  if (table_.size() != static_cast<std::size_t>(dim_) * dim_)
    fail(ErrorCode::DimensionMismatch, "structure constant table size");
  verify_flavor();
  verify_unit();
}

void StructureAlgebra::verify_flavor() const {
  if (flavor_ == Flavor::General) return;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      const Terms& ij = table(i, j);
      const Terms& ji = table(j, i);
      if (flavor_ == Flavor::Anticommutative && i == j && !ij.empty())
        fail(ErrorCode::FlavorMismatch, name_ + ": nonzero square in anticommutative table");
      if (ij.size() != ji.size())
        fail(ErrorCode::FlavorMismatch, name_ + ": table not (anti)symmetric");
      for (std::size_t t = 0; t < ij.size(); ++t) {
        bool ok = ij[t].first == ji[t].first &&
                  (flavor_ == Flavor::Commutative
                       ? field_.eq(ij[t].second, ji[t].second)
                       : field_.eq(ij[t].second, field_.neg(ji[t].second)));
        if (!ok) fail(ErrorCode::FlavorMismatch, name_ + ": table not (anti)symmetric");
      }
    }
}

void StructureAlgebra::verify_unit() const {
  if (!unit_) return;
  for (int i = 0; i < dim_; ++i) {
    Vec e = vec_zero(static_cast<std::size_t>(dim_));
    e[static_cast<std::size_t>(i)] = field_.one();
    if (!vec_eq(product(*unit_, e), e) || !vec_eq(product(e, *unit_), e))
      fail(ErrorCode::VerificationFailed, name_ + ": unit does not act as identity");
  }
}

Vec StructureAlgebra::product(const Vec& v, const Vec& w) const {
  if (v.size() != static_cast<std::size_t>(dim_) || w.size() != static_cast<std::size_t>(dim_))
    fail(ErrorCode::DimensionMismatch, "element size mismatch");
  Vec out = vec_zero(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    if (field_.is_zero(v[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; j < dim_; ++j) {
      if (field_.is_zero(w[static_cast<std::size_t>(j)])) continue;
      Scalar vw = field_.mul(v[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]);
      for (const auto& [k, c] : table(i, j))
        out[static_cast<std::size_t>(k)] =
            field_.add(out[static_cast<std::size_t>(k)], field_.mul(vw, c));
    }
  }
  return out;
}

Vec StructureAlgebra::mul_basis_right(const Vec& v, int j) const {
  Vec out = vec_zero(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    const Scalar& vi = v[static_cast<std::size_t>(i)];
    if (field_.is_zero(vi)) continue;
    for (const auto& [k, c] : table(i, j))
      out[static_cast<std::size_t>(k)] =
          field_.add(out[static_cast<std::size_t>(k)], field_.mul(vi, c));
  }
  return out;
}

Vec StructureAlgebra::mul_basis_left(int i, const Vec& v) const {
  Vec out = vec_zero(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) {
    const Scalar& vj = v[static_cast<std::size_t>(j)];
    if (field_.is_zero(vj)) continue;
    for (const auto& [k, c] : table(i, j))
      out[static_cast<std::size_t>(k)] =
          field_.add(out[static_cast<std::size_t>(k)], field_.mul(vj, c));
  }
  return out;
}

Vec StructureAlgebra::basis_product(int i, int j) const {
  Vec out = vec_zero(static_cast<std::size_t>(dim_));
  for (const auto& [k, c] : table(i, j)) out[static_cast<std::size_t>(k)] = c;
  return out;
}

bool StructureAlgebra::has_nonzero_product() const {
  for (const auto& t : table_)
    if (!t.empty()) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Canonical Hermitian / skew-Hermitian bases

int herm_dim(int n, Sign sign) {
  return sign == Sign::Plus ? 4 * n * n - 3 * n : 4 * n * n + 3 * n;
}

namespace {

struct BasisShape {
  // (u, v, k): matrix unit pair plus octonion basis index (0 = real unit)
  std::vector<std::array<int, 3>> items;
};

BasisShape herm_shape(int n, Sign sign) {
  BasisShape s;
  if (sign == Sign::Plus) {
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) s.items.push_back({u, v, 0});
    for (int k = 1; k <= 7; ++k)
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) s.items.push_back({u, v, k});
  } else {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) s.items.push_back({u, v, 0});
    for (int k = 1; k <= 7; ++k)
      for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v) s.items.push_back({u, v, k});
  }
  return s;
}

}  // namespace

OctMatrix herm_rep(const Field& f, int n, Sign sign, int index) {
  BasisShape shape = herm_shape(n, sign);
  auto [u, v, k] = shape.items.at(static_cast<std::size_t>(index));
  OctMatrix m(f, n);
  Octonion b = Octonion::unit(f, k);
  m.at(u, v) = b;
  if (u != v) {
    // J-fixed needs conj at the mirror entry, J-negated needs -conj
    Octonion mirror = oct_conj(b);
    m.at(v, u) = sign == Sign::Plus ? mirror : oct_neg(mirror);
  }
  return m;
}

std::string herm_label(int n, Sign sign, int index) {
  BasisShape shape = herm_shape(n, sign);
  auto [u, v, k] = shape.items.at(static_cast<std::size_t>(index));
  bool symmetric = (sign == Sign::Plus) == (k == 0);
  std::ostringstream os;
  os << (symmetric ? "S" : "A") << u + 1 << v + 1 << "*";
  if (k == 0)
    os << "1";
  else
    os << "e" << k;
  return os.str();
}

Vec herm_decompose(const OctMatrix& x, Sign sign) {
  const Field& F = x.field();
  const int n = x.order();
  OctMatrix j = involution_J(x);
  OctMatrix expect = sign == Sign::Plus ? x : mat_neg(x);
  if (j != expect)
    fail(ErrorCode::VerificationFailed, "matrix not in the requested symmetry space");
  BasisShape shape = herm_shape(n, sign);
  Vec out;
  out.reserve(shape.items.size());
  for (const auto& [u, v, k] : shape.items) out.push_back(x.at(u, v)[k]);
  // sanity: every entry component is accounted for
  OctMatrix rec(F, n);
  for (std::size_t i = 0; i < shape.items.size(); ++i) {
    if (F.is_zero(out[i])) continue;
    const auto& [u, v, k] = shape.items[i];
    Octonion b = oct_scale(out[i], Octonion::unit(F, k));
    rec.at(u, v) = oct_add(rec.at(u, v), b);
    if (u != v) {
      Octonion mirror = oct_conj(b);
      rec.at(v, u) = oct_add(rec.at(v, u), sign == Sign::Plus ? mirror : oct_neg(mirror));
    }
  }
  if (rec != x) fail(ErrorCode::VerificationFailed, "decomposition did not reconstruct");
  return out;
}

OctMatrix herm_reconstruct(const Field& f, int n, Sign sign, const Vec& coords) {
  BasisShape shape = herm_shape(n, sign);
  if (coords.size() != shape.items.size())
    fail(ErrorCode::DimensionMismatch, "coordinate count");
  OctMatrix rec(f, n);
  for (std::size_t i = 0; i < shape.items.size(); ++i) {
    if (f.is_zero(coords[i])) continue;
    const auto& [u, v, k] = shape.items[i];
    Octonion b = oct_scale(coords[i], Octonion::unit(f, k));
    rec.at(u, v) = oct_add(rec.at(u, v), b);
    if (u != v) {
      Octonion mirror = oct_conj(b);
      rec.at(v, u) = oct_add(rec.at(v, u), sign == Sign::Plus ? mirror : oct_neg(mirror));
    }
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Builders

StructureAlgebra build_herm(int n, Sign sign, const Field& field) {
  if (n < 1) fail(ErrorCode::BadInput, "order must be >= 1");
  const int dim = herm_dim(n, sign);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(dim));
  std::vector<OctMatrix> reps;
  reps.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    labels.push_back(herm_label(n, sign, i));
    reps.push_back(herm_rep(field, n, sign, i));
  }
  std::vector<StructureAlgebra::Terms> table(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      OctMatrix p = sign == Sign::Plus ? jordan_prod(reps[static_cast<std::size_t>(i)],
                                                     reps[static_cast<std::size_t>(j)])
                                       : bracket(reps[static_cast<std::size_t>(i)],
                                                 reps[static_cast<std::size_t>(j)]);
      Vec coords = herm_decompose(p, sign);
      StructureAlgebra::Terms terms;
      for (int k = 0; k < dim; ++k)
        if (!field.is_zero(coords[static_cast<std::size_t>(k)]))
          terms.push_back({k, coords[static_cast<std::size_t>(k)]});
      table[static_cast<std::size_t>(i) * dim + j] = std::move(terms);
    }
  std::optional<Vec> unit;
  if (sign == Sign::Plus) {
    Vec u = vec_zero(static_cast<std::size_t>(dim));
    int idx = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        if (a == b) u[static_cast<std::size_t>(idx)] = field.one();
        ++idx;
      }
    unit = u;
  }
  std::ostringstream name;
  name << "sym" << (sign == Sign::Plus ? "+" : "-") << "(M" << n << "(O),J)";
  return StructureAlgebra(name.str(), field,
                          sign == Sign::Plus ? Flavor::Commutative : Flavor::Anticommutative,
                          std::move(labels), std::move(table), std::move(unit));
}

StructureAlgebra build_herm_plus(int n, const Field& field) {
  return build_herm(n, Sign::Plus, field);
}

StructureAlgebra build_herm_minus(int n, const Field& field) {
  return build_herm(n, Sign::Minus, field);
}

namespace {

/// Generic builder: basis of octonion matrices plus a product and a
/// coordinate map.
StructureAlgebra build_from_reps(
    const std::string& name, const Field& field, Flavor flavor,
    std::vector<std::string> labels, const std::vector<OctMatrix>& reps,
    const std::function<OctMatrix(const OctMatrix&, const OctMatrix&)>& prod,
    const std::function<Vec(const OctMatrix&)>& coords, std::optional<Vec> unit) {
  const int dim = static_cast<int>(reps.size());
  std::vector<StructureAlgebra::Terms> table(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Vec c = coords(prod(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]));
      StructureAlgebra::Terms terms;
      for (int k = 0; k < dim; ++k)
        if (!field.is_zero(c[static_cast<std::size_t>(k)])) terms.push_back({k, c[static_cast<std::size_t>(k)]});
      table[static_cast<std::size_t>(i) * dim + j] = std::move(terms);
    }
  return StructureAlgebra(name, field, flavor, std::move(labels), std::move(table),
                          std::move(unit));
}

Vec kmat_coords_full(const OctMatrix& m) {  // all n^2 scalar entries, row-major
  const int n = m.order();
  Vec out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const Octonion& e = m.at(u, v);
      if (!e.is_scalar()) fail(ErrorCode::NonScalarValue, "expected scalar matrix");
      out.push_back(e[0]);
    }
  return out;
}

OctMatrix scalar_unit_mat(const Field& f, int n, int u, int v) {
  return OctMatrix::unit_entry(f, n, u, v, Octonion::one(f));
}

}  // namespace

StructureAlgebra build_auxiliary(AuxKind kind, int n, const Field& field) {
  switch (kind) {
    case AuxKind::Octonions: {
      std::vector<std::string> labels = {"1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"};
      std::vector<StructureAlgebra::Terms> table(64);
      const FanoTable& T = FanoTable::instance();
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          Scalar c = T.sign(i, j) > 0 ? field.one() : field.neg(field.one());
          table[static_cast<std::size_t>(i) * 8 + j] = {{T.index(i, j), c}};
        }
      Vec unit = vec_zero(8);
      unit[0] = field.one();
      return StructureAlgebra("O", field, Flavor::General, std::move(labels),
                              std::move(table), unit);
    }
    case AuxKind::ImaginaryOctonions: {
      std::vector<std::string> labels;
      for (int i = 1; i <= 7; ++i) labels.push_back("e" + std::to_string(i));
      std::vector<StructureAlgebra::Terms> table(49);
      const FanoTable& T = FanoTable::instance();
      for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j) {
          if (i == j) continue;  // [e_i, e_i] = 0
          // [e_i, e_j] = 2 e_i e_j for distinct anticommuting units
          Scalar two = field.from_long(2);
          Scalar c = T.sign(i, j) > 0 ? two : field.neg(two);
          table[static_cast<std::size_t>(i - 1) * 7 + (j - 1)] = {{T.index(i, j) - 1, c}};
        }
      return StructureAlgebra("O-", field, Flavor::Anticommutative, std::move(labels),
                              std::move(table), std::nullopt);
    }
    case AuxKind::GLn: {
      if (n < 2) fail(ErrorCode::BadInput, "gl_n needs n >= 2");
      std::vector<std::string> labels;
      std::vector<OctMatrix> reps;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          labels.push_back("E" + std::to_string(u + 1) + std::to_string(v + 1));
          reps.push_back(scalar_unit_mat(field, n, u, v));
        }
      return build_from_reps("gl" + std::to_string(n), field, Flavor::Anticommutative,
                             std::move(labels), reps, bracket, kmat_coords_full,
                             std::nullopt);
    }
    case AuxKind::MatrixJordan: {
      if (n < 2) fail(ErrorCode::BadInput, "matrix Jordan algebra needs n >= 2");
      std::vector<std::string> labels;
      std::vector<OctMatrix> reps;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          labels.push_back("E" + std::to_string(u + 1) + std::to_string(v + 1));
          reps.push_back(scalar_unit_mat(field, n, u, v));
        }
      Vec unit = vec_zero(static_cast<std::size_t>(n) * n);
      for (int u = 0; u < n; ++u)
        unit[static_cast<std::size_t>(u) * n + u] = field.one();
      return build_from_reps("M" + std::to_string(n) + "(K)+", field, Flavor::Commutative,
                             std::move(labels), reps, jordan_prod, kmat_coords_full, unit);
    }
    case AuxKind::SLn: {
      if (n < 2) fail(ErrorCode::BadInput, "sl_n needs n >= 2");
      std::vector<std::string> labels;
      std::vector<OctMatrix> reps;
      std::vector<std::array<int, 2>> offdiag;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v) {
            labels.push_back("E" + std::to_string(u + 1) + std::to_string(v + 1));
            reps.push_back(scalar_unit_mat(field, n, u, v));
            offdiag.push_back({u, v});
          }
      for (int u = 0; u + 1 < n; ++u) {
        labels.push_back("H" + std::to_string(u + 1));
        OctMatrix h = mat_sub(scalar_unit_mat(field, n, u, u),
                              scalar_unit_mat(field, n, u + 1, u + 1));
        reps.push_back(h);
      }
      // coordinates: off-diagonal entries read directly, diagonal resolved
      // against the H_u ladder (entries sum to zero)
      auto coords = [n, offdiag](const OctMatrix& m) {
        Vec out;
        for (const auto& [u, v] : offdiag) {
          if (!m.at(u, v).is_scalar()) fail(ErrorCode::NonScalarValue, "sl coords");
          out.push_back(m.at(u, v)[0]);
        }
        Scalar acc(0);
        for (int u = 0; u + 1 < n; ++u) {
          acc += m.at(u, u)[0];
          out.push_back(acc);
        }
        return out;
      };
      return build_from_reps("sl" + std::to_string(n), field, Flavor::Anticommutative,
                             std::move(labels), reps, bracket, coords, std::nullopt);
    }
    case AuxKind::SOn: {
      if (n < 2) fail(ErrorCode::BadInput, "so_n needs n >= 2");
      std::vector<std::string> labels;
      std::vector<OctMatrix> reps;
      std::vector<std::array<int, 2>> pairs;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          labels.push_back("A" + std::to_string(u + 1) + std::to_string(v + 1));
          OctMatrix a = mat_sub(scalar_unit_mat(field, n, u, v), scalar_unit_mat(field, n, v, u));
          reps.push_back(a);
          pairs.push_back({u, v});
        }
      auto coords = [pairs](const OctMatrix& m) {
        Vec out;
        for (const auto& [u, v] : pairs) out.push_back(m.at(u, v)[0]);
        return out;
      };
      return build_from_reps("so" + std::to_string(n), field, Flavor::Anticommutative,
                             std::move(labels), reps, bracket, coords, std::nullopt);
    }
  }
  fail(ErrorCode::BadInput, "unknown auxiliary kind");
}

StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
  if (a.field() != b.field()) fail(ErrorCode::FieldMismatch, "direct sum fields differ");
  const int da = a.dim(), db = b.dim(), dim = da + db;
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("L:" + l);
  for (const auto& l : b.labels()) labels.push_back("R:" + l);
  std::vector<StructureAlgebra::Terms> table(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      table[static_cast<std::size_t>(i) * dim + j] = a.table(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      StructureAlgebra::Terms t = b.table(i, j);
      for (auto& [k, c] : t) k += da;
      table[static_cast<std::size_t>(i + da) * dim + (j + da)] = std::move(t);
    }
  Flavor flavor = a.flavor() == b.flavor() ? a.flavor() : Flavor::General;
  std::optional<Vec> unit;
  if (a.unit() && b.unit()) {
    Vec u = vec_zero(static_cast<std::size_t>(dim));
    for (int i = 0; i < da; ++i) u[static_cast<std::size_t>(i)] = (*a.unit())[static_cast<std::size_t>(i)];
    for (int i = 0; i < db; ++i) u[static_cast<std::size_t>(i + da)] = (*b.unit())[static_cast<std::size_t>(i)];
    unit = u;
  }
  return StructureAlgebra(a.name() + "(+)" + b.name(), a.field(), flavor, std::move(labels),
                          std::move(table), std::move(unit));
}

StructureAlgebra reduce_algebra(const StructureAlgebra& a, std::uint64_t p) {
  Field fp = field_prime(p);
  const int dim = a.dim();
  std::vector<StructureAlgebra::Terms> table(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      StructureAlgebra::Terms t;
      for (const auto& [k, c] : a.table(i, j)) {
        Scalar r = fp.reduce(c);
        if (!fp.is_zero(r)) t.push_back({k, r});
      }
      table[static_cast<std::size_t>(i) * dim + j] = std::move(t);
    }
  std::optional<Vec> unit;
  if (a.unit()) {
    Vec u;
    for (const auto& c : *a.unit()) u.push_back(fp.reduce(c));
    unit = u;
  }
  return StructureAlgebra(a.name() + " mod " + std::to_string(p), fp, a.flavor(),
                          a.labels(), std::move(table), std::move(unit));
}

// ---------------------------------------------------------------------------

namespace {

Scalar rand_scalar(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<long> d(-4, 4);
  return f.from_long(d(rng));
}

OctMatrix rand_kmat(std::mt19937_64& rng, const Field& f, int n, bool symmetric) {
  OctMatrix m(f, n);
  for (int u = 0; u < n; ++u)
    for (int v = symmetric ? u : u + 1; v < n; ++v) {
      Scalar c = rand_scalar(rng, f);
      m.at(u, v) = Octonion::scalar(f, c);
      if (u != v) m.at(v, u) = symmetric ? Octonion::scalar(f, c) : Octonion::scalar(f, f.neg(c));
    }
  return m;
}

Octonion rand_imaginary(std::mt19937_64& rng, const Field& f) {
  Octonion a(f);
  for (int i = 1; i < 8; ++i) a[i] = rand_scalar(rng, f);
  return a;
}

OctMatrix tensor(const OctMatrix& kmat, const Octonion& a) {
  OctMatrix out(kmat.field(), kmat.order());
  for (int u = 0; u < kmat.order(); ++u)
    for (int v = 0; v < kmat.order(); ++v) {
      const Octonion& e = kmat.at(u, v);
      if (!e.is_scalar()) fail(ErrorCode::NonScalarValue, "tensor base not scalar");
      if (!kmat.field().is_zero(e[0])) out.at(u, v) = oct_scale(e[0], a);
    }
  return out;
}

}  // namespace

ProductFormulaReport verify_product_formulas(int n, const Field& field, int tuples,
                                             std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::BadInput, "product formulas need n >= 2");
  std::mt19937_64 rng(seed);
  ProductFormulaReport rep;
  rep.tuples = tuples;
  rep.corrected_mixed_jordan_ok = true;
  rep.mixed_bracket_ok = true;
  rep.special_b_equals_a_ok = true;
  rep.subalgebra_rules_ok = true;
  const Scalar half = field.half();
  const Scalar quarter = field.mul(half, half);

  for (int t = 0; t < tuples; ++t) {
    OctMatrix x = rand_kmat(rng, field, n, false);
    OctMatrix y = rand_kmat(rng, field, n, false);
    OctMatrix m = rand_kmat(rng, field, n, true);
    OctMatrix s = rand_kmat(rng, field, n, true);
    Octonion a = rand_imaginary(rng, field);
    Octonion b = rand_imaginary(rng, field);
    Scalar nab = oct_norm_polar(a, b);
    Octonion comm_ab = oct_sub(oct_mul(a, b), oct_mul(b, a));
    Octonion one = Octonion::one(field);

    // (x(x)a) o (y(x)b) = 1/2 N(a,b) (x o y)(x)1 + 1/4 [x,y](x)[a,b]
    {
      OctMatrix lhs = jordan_prod(tensor(x, a), tensor(y, b));
      OctMatrix rhs = mat_add(
          tensor(scalar_mul(field.mul(half, nab), jordan_prod(x, y)), one),
          scalar_mul(quarter, tensor(bracket(x, y), comm_ab)));
      if (lhs != rhs) {
        rep.corrected_mixed_jordan_ok = false;
        fail(ErrorCode::FormulaMismatch, "mixed Jordan rule failed at tuple " + std::to_string(t));
      }
      // the same rule with coefficients 1 and 1/2 instead (recorded, not asserted)
      OctMatrix alt = mat_add(tensor(scalar_mul(nab, jordan_prod(x, y)), one),
                              scalar_mul(half, tensor(bracket(x, y), comm_ab)));
      if (lhs != alt) rep.printed_mixed_jordan_matches = false;
    }

    // [m(x)a, s(x)b] = 1/2 N(a,b) [m,s](x)1 + (m o s)(x)[a,b]
    {
      OctMatrix lhs = bracket(tensor(m, a), tensor(s, b));
      OctMatrix rhs = mat_add(tensor(scalar_mul(field.mul(half, nab), bracket(m, s)), one),
                              tensor(jordan_prod(m, s), comm_ab));
      if (lhs != rhs) {
        rep.mixed_bracket_ok = false;
        fail(ErrorCode::FormulaMismatch, "mixed bracket rule failed at tuple " + std::to_string(t));
      }
    }

    // b = a specializations
    {
      Scalar na = oct_norm(a);
      OctMatrix lhs1 = jordan_prod(tensor(x, a), tensor(y, a));
      OctMatrix rhs1 = tensor(scalar_mul(field.neg(na), jordan_prod(x, y)), one);
      OctMatrix lhs2 = bracket(tensor(m, a), tensor(s, a));
      OctMatrix rhs2 = tensor(scalar_mul(na, bracket(s, m)), one);
      if (lhs1 != rhs1 || lhs2 != rhs2) {
        rep.special_b_equals_a_ok = false;
        fail(ErrorCode::FormulaMismatch, "b = a specialization failed at tuple " + std::to_string(t));
      }
    }

    // displayed subalgebra product rules
    {
      bool ok = jordan_prod(tensor(m, one), tensor(s, one)) == tensor(jordan_prod(m, s), one) &&
                jordan_prod(tensor(m, one), tensor(x, a)) == tensor(jordan_prod(m, x), a) &&
                bracket(tensor(x, one), tensor(y, one)) == tensor(bracket(x, y), one) &&
                bracket(tensor(x, one), tensor(m, a)) == tensor(bracket(x, m), a);
      if (!ok) {
        rep.subalgebra_rules_ok = false;
        fail(ErrorCode::FormulaMismatch, "subalgebra product rule failed at tuple " + std::to_string(t));
      }
    }
  }
  return rep;
}

IntConstants int_constants(const StructureAlgebra& a) {
  IntConstants ic;
  ic.dim = a.dim();
  mpz_class scale = 1;
  for (int i = 0; i < ic.dim; ++i)
    for (int j = 0; j < ic.dim; ++j)
      for (const auto& [k, c] : a.table(i, j)) {
        mpz_class den = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
        scale = scale / g * den;
      }
  if (!scale.fits_slong_p())
    fail(ErrorCode::ResourceBound, "constant denominators exceed int64 scale");
  ic.scale = scale.get_si();
  const std::size_t d = static_cast<std::size_t>(ic.dim);
  ic.prod.assign(d * d, {});
  ic.left.assign(d, std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>>(d));
  ic.right.assign(d, std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>>(d));
  mpz_class lim = (mpz_class(1) << 62);
  for (int i = 0; i < ic.dim; ++i)
    for (int j = 0; j < ic.dim; ++j)
      for (const auto& [k, c] : a.table(i, j)) {
        mpz_class num = c.get_num() * (scale / c.get_den());
        if (abs(num) >= lim) fail(ErrorCode::ResourceBound, "scaled constant overflow");
        std::int64_t sc = num.get_si();
        ic.prod[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)].push_back(
            {k, sc});
        // b_i b_j = ... + c b_k: contributes to left[i][k] at p = j and
        // right[j][k] at p = i
        ic.left[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].push_back({j, sc});
        ic.right[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].push_back({i, sc});
      }
  return ic;
}

RowSpace subalgebra_closure(const StructureAlgebra& a, const std::vector<Vec>& generators) {
  RowSpace space(a.field(), static_cast<std::size_t>(a.dim()));
  for (const auto& g : generators) space.insert(g);
  bool grew = true;
  while (grew && space.dim() < static_cast<std::size_t>(a.dim())) {
    grew = false;
    std::vector<Vec> snapshot = space.basis();
    for (const auto& v : snapshot) {
      for (const auto& w : snapshot) {
        if (space.insert(a.product(v, w))) grew = true;
        if (space.dim() == static_cast<std::size_t>(a.dim())) return space;
      }
    }
  }
  return space;
}

}  // namespace octlab
