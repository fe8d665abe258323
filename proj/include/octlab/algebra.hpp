#ifndef OCTLAB_ALGEBRA_HPP
#define OCTLAB_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "octlab/linsolve.hpp"
#include "octlab/octmat.hpp"

namespace octlab {

enum class Flavor { Commutative, Anticommutative, General };
enum class Sign { Plus, Minus };

const char* sign_name(Sign s);

/// Finite-dimensional algebra given by a labeled basis and sparse structure
/// constants c_ij^k with b_i b_j = sum_k c_ij^k b_k. Immutable once built.
class StructureAlgebra {
 public:
  using Terms = std::vector<std::pair<int, Scalar>>;

  StructureAlgebra(std::string name, Field field, Flavor flavor,
                   std::vector<std::string> labels,
                   std::vector<Terms> table, std::optional<Vec> unit);

  const std::string& name() const { return name_; }
  const Field& field() const { return field_; }
  Flavor flavor() const { return flavor_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::optional<Vec>& unit() const { return unit_; }

  /// b_i b_j as sparse terms.
  const Terms& table(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * dim_ + j];
  }

  /// Bilinear product of coordinate vectors.
  Vec product(const Vec& v, const Vec& w) const;

  /// v . b_j and b_i . v through the table.
  Vec mul_basis_right(const Vec& v, int j) const;
  Vec mul_basis_left(int i, const Vec& v) const;

  /// b_i b_j as a dense coordinate vector.
  Vec basis_product(int i, int j) const;

  /// True if some product of basis elements is nonzero.
  bool has_nonzero_product() const;

 private:
  void verify_flavor() const;
  void verify_unit() const;

  std::string name_;
  Field field_;
  Flavor flavor_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<Terms> table_;
  std::optional<Vec> unit_;
};

// ---------------------------------------------------------------------------
// Canonical bases of the Hermitian / skew-Hermitian matrix spaces.
// Order: all (x)1 vectors first (matrix units row-major upper-triangular),
// then (x)e_k blocks for k = 1..7.

int herm_dim(int n, Sign sign);

/// Basis representative as an octonion matrix (0-based index into the
/// canonical basis).
OctMatrix herm_rep(const Field& f, int n, Sign sign, int index);

std::string herm_label(int n, Sign sign, int index);

/// Coordinates of X in the canonical basis; X must satisfy J(X) = +-X.
Vec herm_decompose(const OctMatrix& x, Sign sign);

/// Inverse of herm_decompose.
OctMatrix herm_reconstruct(const Field& f, int n, Sign sign, const Vec& coords);

// ---------------------------------------------------------------------------
// Builders. Constants are computed by exact octonion-matrix products of the
// basis representatives.

/// sym+(M_n(O), J) under x o y = (xy + yx)/2. Commutative, unit E(x)1,
/// dim = 4n^2 - 3n.
StructureAlgebra build_herm_plus(int n, const Field& field);

/// sym-(M_n(O), J) under [x, y] = xy - yx. Anticommutative, dim = 4n^2 + 3n.
StructureAlgebra build_herm_minus(int n, const Field& field);

StructureAlgebra build_herm(int n, Sign sign, const Field& field);

enum class AuxKind { Octonions, ImaginaryOctonions, GLn, SLn, MatrixJordan, SOn };

/// Auxiliary comparison algebras: the octonions themselves, imaginary
/// octonions under the commutator, gl_n / sl_n / so_n under the commutator,
/// and M_n(K) under the Jordan product.
StructureAlgebra build_auxiliary(AuxKind kind, int n, const Field& field);

/// Outer direct sum (block-diagonal constants); used as a non-simple control.
StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b);

/// Same algebra with constants reduced into a prime field.
StructureAlgebra reduce_algebra(const StructureAlgebra& a, std::uint64_t p);

// ---------------------------------------------------------------------------

struct ProductFormulaReport {
  int tuples = 0;
  bool corrected_mixed_jordan_ok = false;  // (x(x)a) o (y(x)b) rule with 1/2, 1/4
  bool printed_mixed_jordan_matches = true;  // same rule with 1, 1/2 coefficients
  bool mixed_bracket_ok = false;             // [m(x)a, s(x)b] rule
  bool special_b_equals_a_ok = false;        // -N(a)(x o y)(x)1 and N(a)[s,m](x)1
  bool subalgebra_rules_ok = false;          // the displayed L+-/L-- product rules
  bool all_ok() const {
    return corrected_mixed_jordan_ok && mixed_bracket_ok && special_b_equals_a_ok &&
           subalgebra_rules_ok;
  }
};

/// Randomized check of the decomposition product rules against the direct
/// octonion-matrix oracle. Throws FormulaMismatch with a counterexample if a
/// rule that must hold fails.
ProductFormulaReport verify_product_formulas(int n, const Field& field, int tuples,
                                             std::uint64_t seed);

/// Smallest subspace containing the generators and closed under the product,
/// as a reduced-echelon basis.
RowSpace subalgebra_closure(const StructureAlgebra& a, const std::vector<Vec>& generators);

/// Integer-scaled structure constants with operator-transposed access; the
/// substrate shared by the large linear-system assemblies. Entries are
/// scale * c_ij^k, exact.
struct IntConstants {
  int dim = 0;
  std::int64_t scale = 1;
  // (i*dim + j) -> [(q, s*c_ij^q)]
  std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>> prod;
  // left[i][k]  -> [(p, s*c_ip^k)] : coefficient of b_k in b_i b_p
  std::vector<std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>>> left;
  // right[j][k] -> [(p, s*c_pj^k)] : coefficient of b_k in b_p b_j
  std::vector<std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>>> right;
};

IntConstants int_constants(const StructureAlgebra& a);

}  // namespace octlab

#endif
