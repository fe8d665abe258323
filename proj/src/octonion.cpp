#include "octlab/octonion.hpp"

#include <sstream>

namespace octlab {

namespace {
constexpr int kTriples[7][3] = {
    {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {5, 6, 1}, {6, 7, 2}, {7, 1, 3},
};
}

FanoTable::FanoTable() {
  for (int j = 0; j < 8; ++j) {
    idx_[0][j] = j;
    sgn_[0][j] = 1;
    idx_[j][0] = j;
    sgn_[j][0] = 1;
  }
  for (int i = 1; i < 8; ++i) {
    idx_[i][i] = 0;
    sgn_[i][i] = -1;  // e_i^2 = -1
  }
  for (const auto& t : kTriples) {
    int a = t[0], b = t[1], c = t[2];
    // cyclic: ab=c, bc=a, ca=b; reversed order picks up a minus sign
    const int fw[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (const auto& p : fw) {
      idx_[p[0]][p[1]] = p[2];
      sgn_[p[0]][p[1]] = 1;
      idx_[p[1]][p[0]] = p[2];
      sgn_[p[1]][p[0]] = -1;
    }
  }
}

const FanoTable& FanoTable::instance() {
  static const FanoTable table;
  return table;
}

Octonion Octonion::one(const Field& f) { return unit(f, 0); }

Octonion Octonion::unit(const Field& f, int i) {
  Octonion r(f);
  r.coef_[i] = f.one();
  return r;
}

Octonion Octonion::scalar(const Field& f, const Scalar& v) {
  Octonion r(f);
  r.coef_[0] = f.reduce(v);
  return r;
}

bool Octonion::is_zero() const {
  for (const auto& c : coef_)
    if (sgn(c) != 0) return false;
  return true;
}

bool Octonion::is_scalar() const {
  for (int i = 1; i < 8; ++i)
    if (sgn(coef_[i]) != 0) return false;
  return true;
}

bool Octonion::is_imaginary() const { return sgn(coef_[0]) == 0; }

bool Octonion::operator==(const Octonion& o) const {
  if (field_ != o.field_) return false;
  for (int i = 0; i < 8; ++i)
    if (cmp(coef_[i], o.coef_[i]) != 0) return false;
  return true;
}

std::string Octonion::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 8; ++i) {
    if (i) os << ",";
    os << scalar_to_string(coef_[i]);
  }
  os << "]";
  return os.str();
}

namespace {
void check_same_field(const Octonion& a, const Octonion& b) {
  if (a.field() != b.field())
    fail(ErrorCode::FieldMismatch, "octonion operands over different fields");
}
}  // namespace

Octonion oct_add(const Octonion& a, const Octonion& b) {
  check_same_field(a, b);
  const Field& F = a.field();
  Octonion r(F);
  for (int i = 0; i < 8; ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Octonion oct_sub(const Octonion& a, const Octonion& b) {
  check_same_field(a, b);
  const Field& F = a.field();
  Octonion r(F);
  for (int i = 0; i < 8; ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

Octonion oct_neg(const Octonion& a) {
  const Field& F = a.field();
  Octonion r(F);
  for (int i = 0; i < 8; ++i) r[i] = F.neg(a[i]);
  return r;
}

Octonion oct_scale(const Scalar& c, const Octonion& a) {
  const Field& F = a.field();
  Octonion r(F);
  for (int i = 0; i < 8; ++i) r[i] = F.mul(c, a[i]);
  return r;
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
  check_same_field(a, b);
  const Field& F = a.field();
  const FanoTable& T = FanoTable::instance();
  Octonion r(F);
  for (int i = 0; i < 8; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < 8; ++j) {
      if (sgn(b[j]) == 0) continue;
      Scalar p = F.mul(a[i], b[j]);
      int k = T.index(i, j);
      r[k] = T.sign(i, j) > 0 ? F.add(r[k], p) : F.sub(r[k], p);
    }
  }
  return r;
}

Octonion oct_conj(const Octonion& a) {
  const Field& F = a.field();
  Octonion r(F);
  r[0] = a[0];
  for (int i = 1; i < 8; ++i) r[i] = F.neg(a[i]);
  return r;
}

Scalar oct_trace(const Octonion& a) {
  const Field& F = a.field();
  return F.add(a[0], a[0]);
}

Scalar oct_norm(const Octonion& a) {
  Octonion p = oct_mul(a, oct_conj(a));
  if (!p.is_scalar())
    fail(ErrorCode::NonScalarNorm, "a*conj(a) not scalar: " + p.to_string());
  return p[0];
}

Scalar oct_norm_polar(const Octonion& a, const Octonion& b) {
  if (!a.is_imaginary() || !b.is_imaginary())
    fail(ErrorCode::NotImaginary, "polarized norm needs imaginary arguments");
  const Field& F = a.field();
  Scalar na = oct_norm(a);
  Scalar nb = oct_norm(b);
  Scalar nab = oct_norm(oct_add(a, b));
  return F.sub(F.add(na, nb), nab);
}

}  // namespace octlab
