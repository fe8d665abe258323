#ifndef OCTLAB_OCTMAT_HPP
#define OCTLAB_OCTMAT_HPP

#include <utility>
#include <vector>

#include "octlab/octonion.hpp"

namespace octlab {

/// Square matrix with octonion entries. Entry arithmetic is nonassociative;
/// products sum entry terms left to right.
class OctMatrix {
 public:
  OctMatrix(const Field& f, int n);

  static OctMatrix identity(const Field& f, int n);
  /// k*E_uv for the plain matrix unit (u, v are 0-based).
  static OctMatrix unit_entry(const Field& f, int n, int u, int v, const Octonion& k);

  int order() const { return n_; }
  const Field& field() const { return field_; }
  const Octonion& at(int u, int v) const { return entries_[u * n_ + v]; }
  Octonion& at(int u, int v) { return entries_[u * n_ + v]; }

  bool operator==(const OctMatrix& o) const;
  bool operator!=(const OctMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

 private:
  Field field_;
  int n_;
  std::vector<Octonion> entries_;
};

OctMatrix mat_add(const OctMatrix& x, const OctMatrix& y);
OctMatrix mat_sub(const OctMatrix& x, const OctMatrix& y);
OctMatrix mat_neg(const OctMatrix& x);
OctMatrix scalar_mul(const Scalar& c, const OctMatrix& x);
OctMatrix mat_mul(const OctMatrix& x, const OctMatrix& y);

/// Entrywise conjugation (no transpose).
OctMatrix mat_conj(const OctMatrix& x);
/// J(X): transpose with entrywise conjugation.
OctMatrix involution_J(const OctMatrix& x);

/// x o y = (xy + yx)/2
OctMatrix jordan_prod(const OctMatrix& x, const OctMatrix& y);
/// [x, y] = xy - yx
OctMatrix bracket(const OctMatrix& x, const OctMatrix& y);

/// (plus, minus) with J(plus) = plus, J(minus) = -minus, plus + minus = X.
std::pair<OctMatrix, OctMatrix> herm_split(const OctMatrix& x);

/// Octonion-valued matrix trace (sum of diagonal entries).
Octonion mat_trace(const OctMatrix& x);

/// Tr(XY + conj(X) conj(Y)); asserts the value is scalar and returns its
/// 1-coefficient. Throws NonScalarValue when an imaginary part survives.
Scalar trace_form(const OctMatrix& x, const OctMatrix& y);

}  // namespace octlab

#endif
