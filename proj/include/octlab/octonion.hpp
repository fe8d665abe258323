#ifndef OCTLAB_OCTONION_HPP
#define OCTLAB_OCTONION_HPP

#include <array>
#include <cstdint>
#include <string>

#include "octlab/exactnum.hpp"

namespace octlab {

/// Basis product table for the imaginary units: e_i e_j = sign(i,j) e_{index(i,j)}
/// for i,j in 1..7, i != j, together with e_i^2 = -1. Built from seven cyclic
/// triples (1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3).
class FanoTable {
 public:
  FanoTable();
  int index(int i, int j) const { return idx_[i][j]; }   // i,j in 0..7, 0 = unit
  int sign(int i, int j) const { return sgn_[i][j]; }

  static const FanoTable& instance();

 private:
  std::array<std::array<int, 8>, 8> idx_{};
  std::array<std::array<int, 8>, 8> sgn_{};
};

/// Element of the 8-dimensional octonion algebra over a fixed field,
/// stored as coefficients on the basis {1, e1, ..., e7}.
class Octonion {
 public:
  explicit Octonion(const Field& f) : field_(f) { coef_.fill(f.zero()); }
  Octonion(const Field& f, std::array<Scalar, 8> c) : field_(f), coef_(std::move(c)) {}

  static Octonion zero(const Field& f) { return Octonion(f); }
  static Octonion one(const Field& f);
  static Octonion unit(const Field& f, int i);  // basis element, 0 = 1, 1..7 = e_i
  static Octonion scalar(const Field& f, const Scalar& v);

  const Field& field() const { return field_; }
  const Scalar& operator[](int i) const { return coef_[i]; }
  Scalar& operator[](int i) { return coef_[i]; }

  bool is_zero() const;
  bool is_scalar() const;      // no e_i components
  bool is_imaginary() const;   // zero 1-component

  bool operator==(const Octonion& o) const;
  bool operator!=(const Octonion& o) const { return !(*this == o); }

  std::string to_string() const;  // 8-element array of canonical scalar strings

 private:
  Field field_;
  std::array<Scalar, 8> coef_;
};

Octonion oct_add(const Octonion& a, const Octonion& b);
Octonion oct_sub(const Octonion& a, const Octonion& b);
Octonion oct_neg(const Octonion& a);
Octonion oct_scale(const Scalar& c, const Octonion& a);
Octonion oct_mul(const Octonion& a, const Octonion& b);
Octonion oct_conj(const Octonion& a);

/// T(a) = a + conj(a), returned as the scalar 2*coef[0].
Scalar oct_trace(const Octonion& a);
/// N(a) with N(a)*1 = a*conj(a); throws NonScalarNorm if the product
/// has a surviving imaginary component.
Scalar oct_norm(const Octonion& a);
/// Polarized norm N(a,b) = N(a) + N(b) - N(a+b) for imaginary a, b.
Scalar oct_norm_polar(const Octonion& a, const Octonion& b);

}  // namespace octlab

#endif
