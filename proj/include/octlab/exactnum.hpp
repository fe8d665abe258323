#ifndef OCTLAB_EXACTNUM_HPP
#define OCTLAB_EXACTNUM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "octlab/errors.hpp"

namespace octlab {

/// Exact scalar. Over the rationals this is an arbitrary-precision fraction in
/// lowest terms with positive denominator (GMP keeps it canonical). Over a
/// prime field the value is the residue 0..p-1 with denominator 1; all
/// arithmetic then goes through Field so residues stay reduced.
using Scalar = mpq_class;

enum class FieldKind { Rationals, PrimeField };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t modulus = 0;   // PrimeField only
  bool exploratory = false;    // permits characteristic 3

  bool operator==(const FieldSpec& o) const {
    return kind == o.kind && (kind == FieldKind::Rationals || modulus == o.modulus);
  }
};

/// Arithmetic context for a FieldSpec. Values are immutable, operations pure.
class Field {
 public:
  Field() = default;  // rationals
  explicit Field(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_rationals() const { return spec_.kind == FieldKind::Rationals; }
  std::uint64_t modulus() const { return spec_.modulus; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar half() const;
  Scalar from_long(long v) const;
  /// Canonical image of an arbitrary rational in this field.
  /// PrimeField: (num mod p) * (den mod p)^-1; rejects p | den.
  Scalar reduce(const Scalar& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;

  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  bool eq(const Scalar& a, const Scalar& b) const { return cmp(a, b) == 0; }

  bool operator==(const Field& o) const { return spec_ == o.spec_; }
  bool operator!=(const Field& o) const { return !(spec_ == o.spec_); }

 private:
  FieldSpec spec_;
};

/// Throws CharacteristicForbidden / NotPrime per the field policy:
/// characteristic 2 never, characteristic 3 only with spec.exploratory.
Field field_make(const FieldSpec& spec);

inline Field field_rationals() { return field_make({FieldKind::Rationals, 0, false}); }
Field field_prime(std::uint64_t p, bool exploratory = false);

/// Canonical string form: "p/q" with q > 0 and gcd(p,q) = 1, "/1" omitted.
std::string scalar_to_string(const Scalar& v);
/// Parses the canonical form; rejects anything else (decimals in particular).
Scalar scalar_from_string(const std::string& s);

bool is_prime_u64(std::uint64_t n);

/// Coordinate vector (AlgebraElement and friends).
using Vec = std::vector<Scalar>;

Vec vec_zero(std::size_t n);
bool vec_is_zero(const Vec& v);
bool vec_eq(const Vec& a, const Vec& b);

}  // namespace octlab

#endif
