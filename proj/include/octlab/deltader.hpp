#ifndef OCTLAB_DELTADER_HPP
#define OCTLAB_DELTADER_HPP

#include <map>
#include <vector>

#include "octlab/structure.hpp"

namespace octlab {

/// The linear system whose kernel is Der_delta(A) for a fixed rational delta:
/// dim^2 unknowns D[p][q] (row-major), one row per basis pair and output
/// coordinate encoding D(b_i b_j) - delta D(b_i) b_j - delta b_i D(b_j) = 0.
/// Rows are integer-scaled multiples of the rational constraints.
class DeltaDerSystem {
 public:
  DeltaDerSystem(const StructureAlgebra& algebra, const Scalar& delta);

  const StructureAlgebra& algebra() const { return algebra_; }
  const Scalar& delta() const { return delta_; }
  const IntRows& rows() const { return rows_; }

  /// Materialized rational form (for dumps and small-system work).
  SparseMatrix matrix() const;

 private:
  const StructureAlgebra& algebra_;
  Scalar delta_;
  IntRows rows_;
};

struct DerivationSpace {
  Scalar delta;
  std::int64_t dim = 0;
  /// dim x dim coordinate matrices, row-major vec form, canonical basis.
  std::vector<Vec> basis;
  Certification certification = Certification::ExactVerified;
  std::vector<std::uint64_t> primes_used;
};

/// Certified kernel of the delta-derivation system; every returned map is
/// exact over the algebra's field (the solver verifies the full constraint
/// set). Policy picks Direct vs MultiModular for rational fields.
DerivationSpace delta_der_space(const StructureAlgebra& a, const Scalar& delta);

/// delta_der_space(a, 1).dim
std::int64_t derivation_dimension(const StructureAlgebra& a);

/// Checks D(vw) = delta (D(v) w + v D(w)) for the map given as a dim x dim
/// row-major vec, over every basis pair, exactly.
bool verify_delta_derivation(const StructureAlgebra& a, const Vec& map, const Scalar& delta);

/// Applies a map in vec form to a coordinate vector.
Vec apply_map(const Vec& map, const Vec& v, const Field& f);

struct KnownDerivations {
  /// ad(g (x) 1) for g over a skew matrix basis, then entrywise extensions of
  /// a computed derivation basis of the octonions.
  std::vector<Vec> maps;
  RowSpace span;  // of the vectorized maps
};

/// Explicit derivations of sym+-(M_n(O), J): inner maps ad(g (x) 1) and
/// entrywise octonion derivations. Every map is verified to be a derivation.
/// Throws VerificationFailed with the offending map if a check fails.
KnownDerivations known_derivations(int n, Sign sign, const Field& field);

struct DeltaScan {
  std::map<Scalar, std::int64_t> dims;
  /// dim Der_1 + 1 when the scan saw nonzero dims only at 1 and 1/2 with
  /// Der_{1/2} = span{id}; -1 otherwise.
  std::int64_t delta_algebra_dim = -1;
};

DeltaScan delta_scan(const StructureAlgebra& a, const std::vector<Scalar>& deltas);

/// Elements a with 2(xy)a - (xa)y - (ya)x = 0 over all basis pairs (x, y);
/// requires a commutative unital algebra. For the Hermitian families this is
/// exactly the unit line, and R_a for a in this space are the half-derivations.
Subspace half_der_elements(const StructureAlgebra& a);

struct XdmReport {
  std::int64_t dim = -1;
  bool image_in_unit_line = false;
};

/// Maps D : M_n^+ -> M_n^+ with D([x, m]) = delta [x, D(m)] for all skew x,
/// symmetric m; every solution's image must lie in the unit line.
/// Requires delta outside {0, 1} and n >= 2.
XdmReport lemma_xdm_space(int n, const Scalar& delta, const Field& field);

struct GlCrossChecks {
  std::int64_t gl_minus_one = -1;   // dim Der_{-1}(gl_n)
  std::int64_t gl_half = -1;        // dim Der_{1/2}(gl_n)
  bool gl_minus_one_is_xi_line = false;  // spanned by: kill sl_n, E -> E
  // n = 2 extras (left at -1 otherwise)
  std::int64_t sl2_minus_one = -1;
  std::int64_t gl2_minus_one = -1;
};

GlCrossChecks gl_cross_checks(int n, const Field& field);

/// Default scan set {0, 1, 1/2, -1, 2, 3, -1/2}.
std::vector<Scalar> default_delta_scan();

}  // namespace octlab

#endif
