#include "octlab/octmat.hpp"

namespace octlab {

OctMatrix::OctMatrix(const Field& f, int n) : field_(f), n_(n) {
  if (n < 1) fail(ErrorCode::DimensionMismatch, "matrix order must be >= 1");
  entries_.assign(static_cast<std::size_t>(n) * n, Octonion::zero(f));
}

OctMatrix OctMatrix::identity(const Field& f, int n) {
  OctMatrix r(f, n);
  for (int u = 0; u < n; ++u) r.at(u, u) = Octonion::one(f);
  return r;
}

OctMatrix OctMatrix::unit_entry(const Field& f, int n, int u, int v, const Octonion& k) {
  OctMatrix r(f, n);
  r.at(u, v) = k;
  return r;
}

bool OctMatrix::operator==(const OctMatrix& o) const {
  if (n_ != o.n_ || field_ != o.field_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != o.entries_[i]) return false;
  return true;
}

bool OctMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

namespace {
void check_compatible(const OctMatrix& x, const OctMatrix& y) {
  if (x.order() != y.order())
    fail(ErrorCode::DimensionMismatch, "matrix orders differ");
  if (x.field() != y.field())
    fail(ErrorCode::FieldMismatch, "matrix operands over different fields");
}
}  // namespace

OctMatrix mat_add(const OctMatrix& x, const OctMatrix& y) {
  check_compatible(x, y);
  OctMatrix r(x.field(), x.order());
  for (int u = 0; u < x.order(); ++u)
    for (int v = 0; v < x.order(); ++v) r.at(u, v) = oct_add(x.at(u, v), y.at(u, v));
  return r;
}

OctMatrix mat_sub(const OctMatrix& x, const OctMatrix& y) {
  check_compatible(x, y);
  OctMatrix r(x.field(), x.order());
  for (int u = 0; u < x.order(); ++u)
    for (int v = 0; v < x.order(); ++v) r.at(u, v) = oct_sub(x.at(u, v), y.at(u, v));
  return r;
}

OctMatrix mat_neg(const OctMatrix& x) {
  OctMatrix r(x.field(), x.order());
  for (int u = 0; u < x.order(); ++u)
    for (int v = 0; v < x.order(); ++v) r.at(u, v) = oct_neg(x.at(u, v));
  return r;
}

OctMatrix scalar_mul(const Scalar& c, const OctMatrix& x) {
  OctMatrix r(x.field(), x.order());
  for (int u = 0; u < x.order(); ++u)
    for (int v = 0; v < x.order(); ++v) r.at(u, v) = oct_scale(c, x.at(u, v));
  return r;
}

OctMatrix mat_mul(const OctMatrix& x, const OctMatrix& y) {
  check_compatible(x, y);
  const int n = x.order();
  OctMatrix r(x.field(), n);
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      const Octonion& a = x.at(u, w);
      if (a.is_zero()) continue;
      for (int v = 0; v < n; ++v) {
        const Octonion& b = y.at(w, v);
        if (b.is_zero()) continue;
        r.at(u, v) = oct_add(r.at(u, v), oct_mul(a, b));
      }
    }
  return r;
}

OctMatrix mat_conj(const OctMatrix& x) {
  OctMatrix r(x.field(), x.order());
  for (int u = 0; u < x.order(); ++u)
    for (int v = 0; v < x.order(); ++v) r.at(u, v) = oct_conj(x.at(u, v));
  return r;
}

OctMatrix involution_J(const OctMatrix& x) {
  OctMatrix r(x.field(), x.order());
  for (int u = 0; u < x.order(); ++u)
    for (int v = 0; v < x.order(); ++v) r.at(u, v) = oct_conj(x.at(v, u));
  return r;
}

OctMatrix jordan_prod(const OctMatrix& x, const OctMatrix& y) {
  const Scalar h = x.field().half();
  return scalar_mul(h, mat_add(mat_mul(x, y), mat_mul(y, x)));
}

OctMatrix bracket(const OctMatrix& x, const OctMatrix& y) {
  return mat_sub(mat_mul(x, y), mat_mul(y, x));
}

std::pair<OctMatrix, OctMatrix> herm_split(const OctMatrix& x) {
  const Scalar h = x.field().half();
  OctMatrix j = involution_J(x);
  OctMatrix plus = scalar_mul(h, mat_add(x, j));
  OctMatrix minus = scalar_mul(h, mat_sub(x, j));
  return {plus, minus};
}

Octonion mat_trace(const OctMatrix& x) {
  Octonion t = Octonion::zero(x.field());
  for (int u = 0; u < x.order(); ++u) t = oct_add(t, x.at(u, u));
  return t;
}

Scalar trace_form(const OctMatrix& x, const OctMatrix& y) {
  // Tr(XY) + Tr(conj(Y) conj(X)). With octonion entries the conjugated
  // product must be taken in reversed order: entrywise conjugation is an
  // antiautomorphism, so Tr(conj(Y) conj(X)) = conj(Tr(XY)) and the sum is
  // the octonion trace of Tr(XY). The same-order variant picks up imaginary
  // components on Hermitian pairs and does not reproduce the block values
  // 2Tr(ms) / 0 / N(a,b)Tr(xy).
  Octonion t = oct_add(mat_trace(mat_mul(x, y)),
                       mat_trace(mat_mul(mat_conj(y), mat_conj(x))));
  if (!t.is_scalar())
    fail(ErrorCode::NonScalarValue, "trace form value not scalar: " + t.to_string());
  return t[0];
}

}  // namespace octlab
