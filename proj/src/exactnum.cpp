#include "octlab/exactnum.hpp"

#include <cctype>

namespace octlab {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::CharacteristicForbidden: return "CharacteristicForbidden";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonScalarNorm: return "NonScalarNorm";
    case ErrorCode::NotImaginary: return "NotImaginary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonScalarValue: return "NonScalarValue";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::DegenerateAlgebra: return "DegenerateAlgebra";
    case ErrorCode::FlavorMismatch: return "FlavorMismatch";
    case ErrorCode::PrimeDividesDenominator: return "PrimeDividesDenominator";
    case ErrorCode::DimensionDisagreement: return "DimensionDisagreement";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NoUnit: return "NoUnit";
    case ErrorCode::NotProportional: return "NotProportional";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ResourceBound: return "ResourceBound";
  }
  return "Unknown";
}

bool is_prime_u64(std::uint64_t n) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  // 40 Miller-Rabin rounds: deterministic for anything we accept as a modulus
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

Field::Field(const FieldSpec& spec) : spec_(spec) {}

Field field_make(const FieldSpec& spec) {
  if (spec.kind == FieldKind::PrimeField) {
    if (!is_prime_u64(spec.modulus))
      fail(ErrorCode::NotPrime, "modulus " + std::to_string(spec.modulus) + " is composite");
    if (spec.modulus == 2)
      fail(ErrorCode::CharacteristicForbidden, "characteristic 2 (no 1/2)");
    if (spec.modulus == 3 && !spec.exploratory)
      fail(ErrorCode::CharacteristicForbidden,
           "characteristic 3 requires the exploratory flag");
  }
  return Field(spec);
}

Field field_prime(std::uint64_t p, bool exploratory) {
  return field_make({FieldKind::PrimeField, p, exploratory});
}

namespace {

mpz_class modulus_z(const FieldSpec& s) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(s.modulus), 0, 0, &s.modulus);
  return z;
}

Scalar residue(const mpz_class& num, const FieldSpec& s) {
  mpz_class p = modulus_z(s);
  mpz_class r;
  mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  return Scalar(r);
}

}  // namespace

Scalar Field::reduce(const Scalar& v) const {
  if (is_rationals()) {
    Scalar c(v);
    c.canonicalize();
    return c;
  }
  mpz_class p = modulus_z(spec_);
  mpz_class den = v.get_den();
  mpz_class dmod;
  mpz_mod(dmod.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  if (dmod == 0)
    fail(ErrorCode::PrimeDividesDenominator,
         "denominator divisible by " + std::to_string(spec_.modulus));
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), p.get_mpz_t());
  return residue(v.get_num() * dinv, spec_);
}

Scalar Field::half() const {
  if (is_rationals()) return Scalar(1, 2);
  return reduce(Scalar(1, 2));
}

Scalar Field::from_long(long v) const {
  if (is_rationals()) return Scalar(v);
  return residue(mpz_class(v), spec_);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  Scalar r = a + b;
  return is_rationals() ? r : residue(r.get_num(), spec_);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  Scalar r = a - b;
  return is_rationals() ? r : residue(r.get_num(), spec_);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  Scalar r = a * b;
  return is_rationals() ? r : residue(r.get_num(), spec_);
}

Scalar Field::neg(const Scalar& a) const {
  Scalar r = -a;
  return is_rationals() ? r : residue(r.get_num(), spec_);
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) fail(ErrorCode::BadInput, "inverse of zero");
  if (is_rationals()) return Scalar(1) / a;
  mpz_class p = modulus_z(spec_);
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), p.get_mpz_t());
  return Scalar(r);
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

std::string scalar_to_string(const Scalar& v) { return v.get_str(); }

Scalar scalar_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::BadInput, "empty scalar string");
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (slash != std::string::npos || i == 0 || i + 1 == s.size())
        fail(ErrorCode::BadInput, "malformed scalar: " + s);
      slash = i;
    } else if (c == '-') {
      if (i != 0) fail(ErrorCode::BadInput, "malformed scalar: " + s);
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorCode::BadInput, "non-rational scalar: " + s);
    }
  }
  Scalar v;
  if (v.set_str(s, 10) != 0) fail(ErrorCode::BadInput, "malformed scalar: " + s);
  if (v.get_den() == 0) fail(ErrorCode::BadInput, "zero denominator: " + s);
  v.canonicalize();
  return v;
}

Vec vec_zero(std::size_t n) { return Vec(n, Scalar(0)); }

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (cmp(a[i], b[i]) != 0) return false;
  return true;
}

}  // namespace octlab
