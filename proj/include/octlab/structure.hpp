#ifndef OCTLAB_STRUCTURE_HPP
#define OCTLAB_STRUCTURE_HPP

#include <vector>

#include "octlab/algebra.hpp"

namespace octlab {

/// Subspaces are reduced-echelon row spaces.
using Subspace = RowSpace;

/// Smallest subspace containing the generators with A.I and I.A inside it.
Subspace ideal_closure(const StructureAlgebra& a, const std::vector<Vec>& generators);

/// Checks that multiplying every ideal basis vector by every algebra basis
/// vector stays inside the subspace.
bool verify_ideal(const StructureAlgebra& a, const Subspace& ideal);

enum class SimplicityVerdict { SimpleCertified, SimpleEvidence, NotSimple };
enum class SimplicityMethod { IrreducibilityTest, RandomGeneration };

struct SimplicityCertificate {
  SimplicityVerdict verdict = SimplicityVerdict::NotSimple;
  SimplicityMethod method = SimplicityMethod::IrreducibilityTest;
  /// NotSimple: basis of a verified proper nonzero ideal.
  std::vector<Vec> witnesses;
  /// Primes with a certified verdict (rationals path).
  std::vector<std::uint64_t> primes;
};

/// Prime field: sound irreducibility test of A as a module over its
/// multiplication algebra (random singular element, kernel spin-up, dual spin
/// fallback). Rationals: full ideal closures from every basis element plus
/// `trials` seeded random elements, combined with certified verdicts at the
/// given primes, reported as SimpleEvidence. Throws DegenerateAlgebra if
/// A.A = 0.
SimplicityCertificate certify_simple(const StructureAlgebra& a, int trials,
                                     const std::vector<std::uint64_t>& primes,
                                     std::uint64_t seed);

/// All linear maps G with G(xy) = G(x)y = xG(y) on basis pairs, as the kernel
/// of the assembled system. Vectors are dim x dim matrices in row-major vec
/// form.
Subspace centroid(const StructureAlgebra& a);

struct LemmaKernelReport {
  int n = 0;
  // kernel of x in M_n^-  ->  (x o b_j)_j over a skew basis; must be 0
  std::int64_t skew_jordan_kernel_dim = -1;
  // kernel of m in M_n^+  ->  ([m, b_j])_j against a skew / symmetric basis;
  // each must be exactly the line spanned by E
  std::int64_t sym_vs_skew_dim = -1;
  std::int64_t sym_vs_sym_dim = -1;
  bool sym_vs_skew_is_unit_line = false;
  bool sym_vs_sym_is_unit_line = false;
  bool pass() const {
    return skew_jordan_kernel_dim == 0 && sym_vs_skew_dim == 1 && sym_vs_sym_dim == 1 &&
           sym_vs_skew_is_unit_line && sym_vs_sym_is_unit_line;
  }
};

/// Kernel computations behind the two matrix-space lemmas, over plain
/// K-matrices (n >= 2).
LemmaKernelReport lemma_kernels(int n, const Field& field);

enum class IdentityKind { Commutative, Anticommutative, Jacobi, Jordan, Malcev };

struct IdentityResult {
  bool holds = false;
  std::vector<int> counterexample;  // basis-index tuple, empty when holds
};

/// Exhaustive check over basis tuples. Jordan and Malcev are checked in fully
/// linearized form over basis quadruples (equivalent to the original
/// identities away from characteristics 2 and 3), so `holds` is a proof.
/// Throws FlavorMismatch when the identity does not apply to A's flavor.
IdentityResult identity_check(const StructureAlgebra& a, IdentityKind kind);

}  // namespace octlab

#endif
