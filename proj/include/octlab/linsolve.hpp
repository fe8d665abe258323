#ifndef OCTLAB_LINSOLVE_HPP
#define OCTLAB_LINSOLVE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "octlab/exactnum.hpp"

namespace octlab {

/// Exact sparse matrix in sorted coordinate form. No explicit zeros.
struct SparseEntry {
  std::int64_t row = 0;
  std::int64_t col = 0;
  Scalar value;
};

class SparseMatrix {
 public:
  SparseMatrix(std::int64_t rows, std::int64_t cols) : rows_(rows), cols_(cols) {}

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  const std::vector<SparseEntry>& entries() const { return entries_; }

  /// Accumulates into (r, c); canonical order restored by finalize().
  void add(std::int64_t r, std::int64_t c, const Scalar& v);
  /// Sorts, merges duplicates, drops zeros. Must be called before solving.
  void finalize();
  bool finalized() const { return finalized_; }

  /// Versioned sparse-triple text dump for offline cross-checking.
  void dump(std::ostream& os) const;
  static SparseMatrix load(std::istream& is);

 private:
  std::int64_t rows_, cols_;
  std::vector<SparseEntry> entries_;
  bool finalized_ = true;  // empty matrix is canonical
};

enum class SolvePolicy { Direct, MultiModular };
enum class Certification { ExactVerified, ModularConsensus };

struct NullspaceResult {
  std::int64_t dim = 0;
  std::vector<Vec> basis;  // reduced canonical form, first nonzero coordinate 1
  Certification certification = Certification::ExactVerified;
  std::vector<std::uint64_t> primes_used;
};

/// Integer row form used internally and by the large system assemblers:
/// every row is an exact integer multiple of the original rational row,
/// so kernels and ranks are unchanged.
using IRow = std::vector<std::pair<std::int32_t, std::int64_t>>;

struct IntRows {
  std::int64_t cols = 0;
  std::vector<IRow> rows;
};

/// Row-scales a rational sparse matrix to integer rows.
/// Throws ResourceBound if a scaled entry overflows int64.
IntRows to_int_rows(const SparseMatrix& m);

/// Certified kernel of M over the given field.
///   PrimeField        — sparse Gaussian elimination mod p, kernel verified
///                       against every row.
///   Rationals/Direct  — exact rational elimination.
///   Rationals/MultiModular — kernels mod >= 3 primes, consensus, CRT lift,
///                       rational reconstruction, exact re-verification; falls
///                       back to Direct on the kernel support on failure.
NullspaceResult nullspace(const SparseMatrix& m, const Field& field, SolvePolicy policy);
NullspaceResult nullspace(const IntRows& m, const Field& field, SolvePolicy policy);

/// Exact rank; over the rationals via modular ranks checked against the
/// certified nullity (rank + nullity = cols).
std::int64_t rank(const SparseMatrix& m, const Field& field);
std::int64_t rank(const IntRows& m, const Field& field);

/// Dense row-reduced subspace accumulator over a field (RREF basis).
class RowSpace {
 public:
  RowSpace(const Field& f, std::size_t ambient) : field_(f), ambient_(ambient) {}

  /// Reduces v against the basis; if a nonzero residual remains it is
  /// normalized, back-substituted and inserted. Returns true if dim grew.
  bool insert(Vec v);
  bool contains(const Vec& v) const;
  Vec reduce(Vec v) const;

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  /// RREF basis ordered by leading coordinate.
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& leads() const { return leads_; }

  bool equals(const RowSpace& other) const;

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<int> leads_;
};

/// Deterministic pool of 31-bit primes used for multi-modular work.
const std::vector<std::uint64_t>& multimodular_prime_pool();

/// Rational reconstruction of x mod m (|num|*den bounded by sqrt(m/2)).
std::optional<Scalar> rational_reconstruct(const mpz_class& x, const mpz_class& m);

/// Cooperative wall-clock budget for long solves; checked at safe points.
/// Throws Error(ResourceBound) on expiry. budget_ms <= 0 means unlimited.
class TimeBudget {
 public:
  explicit TimeBudget(std::int64_t budget_ms = 0);
  void check() const;
  std::int64_t elapsed_ms() const;

 private:
  std::int64_t budget_ms_;
  std::int64_t start_ms_;
};

/// Scoped override used by the multi-modular solver; null = no budget.
void set_solver_budget(const TimeBudget* budget);

class SolverBudgetGuard {
 public:
  explicit SolverBudgetGuard(const TimeBudget* b) { set_solver_budget(b); }
  ~SolverBudgetGuard() { set_solver_budget(nullptr); }
};

/// Worker threads for independent per-prime eliminations (default 1).
void set_solver_workers(int workers);
int solver_workers();

}  // namespace octlab

#endif
