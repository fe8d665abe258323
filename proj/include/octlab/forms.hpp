#ifndef OCTLAB_FORMS_HPP
#define OCTLAB_FORMS_HPP

#include "octlab/structure.hpp"

namespace octlab {

/// Solution space of the associativity constraint G(xy, z) = G(x, yz) over
/// symmetric Gram matrices.
struct BilinearFormSolution {
  std::int64_t dim = 0;
  /// Symmetric Gram matrices, dense row-major (algebra dim squared).
  std::vector<Vec> basis;
  std::vector<std::int64_t> ranks;       // rank per basis form
  std::vector<bool> nondegenerate;       // rank == algebra dim
  Certification certification = Certification::ExactVerified;
};

/// Kernel of the associativity system in the dim(dim+1)/2 upper-triangle
/// unknowns of G, expanded back to full symmetric matrices.
BilinearFormSolution assoc_form_space(const StructureAlgebra& a);

struct TraceFormGram {
  Vec gram;  // dense row-major, algebra dim squared
  bool symmetric = false;
  bool associative = false;
  std::int64_t rank = 0;
};

/// Gram matrix of (X, Y) -> Tr(XY + conj(X)conj(Y)) on the canonical basis,
/// verified symmetric and associative against the structure constants.
TraceFormGram trace_form_gram(int n, Sign sign, const Field& field);

/// Spot-check of the block values of the trace form on random decomposed
/// elements: diagonal blocks 2 Tr(..), mixed blocks 0, octonion blocks
/// N(a,b) Tr(..).
bool verify_block_values(int n, Sign sign, const Field& field, int tuples,
                         std::uint64_t seed);

/// The unique scalar with solution = lambda * gram, verified entrywise.
/// Requires solution.dim == 1; throws NotProportional on failure.
Scalar form_match(const StructureAlgebra& a, const BilinearFormSolution& solution,
                  const Vec& gram);

struct KillingReport {
  bool proportional = false;
  Scalar factor;  // restriction = factor * Killing form of so_n
};

/// Restriction of the skew-family trace form to the skew-matrix block against
/// the Killing form Tr(ad x ad y) of so_n, computed independently.
KillingReport killing_restriction_check(int n, const Field& field);

}  // namespace octlab

#endif
