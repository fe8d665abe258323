#include "doctest.h"

#include <random>
#include <sstream>

#include "octlab/linsolve.hpp"

using namespace octlab;

TEST_CASE("trivial kernels") {
  Field Q = field_rationals();
  SparseMatrix id5(5, 5);
  for (int i = 0; i < 5; ++i) id5.add(i, i, Scalar(1));
  id5.finalize();
  CHECK(nullspace(id5, Q, SolvePolicy::Direct).dim == 0);
  CHECK(rank(id5, Q) == 5);

  SparseMatrix row(1, 2);
  row.add(0, 0, Scalar(1));
  row.add(0, 1, Scalar(1));
  row.finalize();
  NullspaceResult ns = nullspace(row, Q, SolvePolicy::Direct);
  REQUIRE(ns.dim == 1);
  CHECK(cmp(ns.basis[0][0], Scalar(1)) == 0);
  CHECK(cmp(ns.basis[0][1], Scalar(-1)) == 0);

  SparseMatrix zero(3, 4);
  zero.finalize();
  CHECK(rank(zero, Q) == 0);
  CHECK(nullspace(zero, Q, SolvePolicy::Direct).dim == 4);
}

TEST_CASE("fractional kernel is reconstructed") {
  Field Q = field_rationals();
  // 7x - 22y = 0  ->  kernel (1, 7/22)
  SparseMatrix m(1, 2);
  m.add(0, 0, Scalar(7));
  m.add(0, 1, Scalar(-22));
  m.finalize();
  for (SolvePolicy policy : {SolvePolicy::Direct, SolvePolicy::MultiModular}) {
    NullspaceResult ns = nullspace(m, Q, policy);
    REQUIRE(ns.dim == 1);
    CHECK(cmp(ns.basis[0][0], Scalar(1)) == 0);
    CHECK(cmp(ns.basis[0][1], Scalar(7, 22)) == 0);
    CHECK(ns.certification == Certification::ExactVerified);
  }
}

namespace {

SparseMatrix random_sparse(std::mt19937_64& rng, int rows, int cols, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<long> v(-9, 9);
  std::uniform_int_distribution<long> den(1, 6);
  SparseMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (u(rng) < density) m.add(r, c, Scalar(v(rng), den(rng)));
  m.finalize();
  return m;
}

}  // namespace

TEST_CASE("direct is the oracle for multimodular on random systems") {
  std::mt19937_64 rng(41);
  Field Q = field_rationals();
  for (int t = 0; t < 25; ++t) {
    SparseMatrix m = random_sparse(rng, 18, 12, 0.3);
    NullspaceResult direct = nullspace(m, Q, SolvePolicy::Direct);
    NullspaceResult mm = nullspace(m, Q, SolvePolicy::MultiModular);
    REQUIRE(direct.dim == mm.dim);
    for (std::int64_t i = 0; i < direct.dim; ++i)
      CHECK(vec_eq(direct.basis[static_cast<std::size_t>(i)],
                   mm.basis[static_cast<std::size_t>(i)]));
    CHECK(rank(m, Q) + direct.dim == m.cols());
  }
}

TEST_CASE("rank plus nullity over prime fields") {
  std::mt19937_64 rng(43);
  Field F7 = field_prime(7);
  for (int t = 0; t < 25; ++t) {
    SparseMatrix m = random_sparse(rng, 15, 10, 0.35);
    NullspaceResult ns = nullspace(m, F7, SolvePolicy::Direct);
    CHECK(rank(m, F7) + ns.dim == m.cols());
    // kernel vectors annihilate every row mod 7
    for (const auto& v : ns.basis) {
      std::vector<Scalar> check(static_cast<std::size_t>(m.rows()), F7.zero());
      for (const auto& e : m.entries())
        check[static_cast<std::size_t>(e.row)] =
            F7.add(check[static_cast<std::size_t>(e.row)],
                   F7.mul(F7.reduce(e.value), v[static_cast<std::size_t>(e.col)]));
      for (const auto& x : check) CHECK(F7.is_zero(x));
    }
  }
}

TEST_CASE("determinism") {
  std::mt19937_64 rng(47);
  Field Q = field_rationals();
  SparseMatrix m = random_sparse(rng, 30, 20, 0.25);
  NullspaceResult a = nullspace(m, Q, SolvePolicy::MultiModular);
  NullspaceResult b = nullspace(m, Q, SolvePolicy::MultiModular);
  REQUIRE(a.dim == b.dim);
  CHECK(a.primes_used == b.primes_used);
  for (std::int64_t i = 0; i < a.dim; ++i)
    CHECK(vec_eq(a.basis[static_cast<std::size_t>(i)], b.basis[static_cast<std::size_t>(i)]));
}

TEST_CASE("kernel basis is in reduced canonical form") {
  std::mt19937_64 rng(53);
  Field Q = field_rationals();
  for (int t = 0; t < 10; ++t) {
    SparseMatrix m = random_sparse(rng, 8, 12, 0.3);
    NullspaceResult ns = nullspace(m, Q, SolvePolicy::Direct);
    std::vector<std::int64_t> leads;
    for (const auto& v : ns.basis) {
      std::int64_t lead = -1;
      for (std::size_t c = 0; c < v.size(); ++c)
        if (sgn(v[c]) != 0) {
          lead = static_cast<std::int64_t>(c);
          break;
        }
      REQUIRE(lead >= 0);
      CHECK(cmp(v[static_cast<std::size_t>(lead)], Scalar(1)) == 0);
      // other basis vectors vanish at this lead
      for (const auto& w : ns.basis)
        if (&w != &v) CHECK(sgn(w[static_cast<std::size_t>(lead)]) == 0);
      leads.push_back(lead);
    }
    for (std::size_t i = 1; i < leads.size(); ++i) CHECK(leads[i - 1] < leads[i]);
  }
}

TEST_CASE("rational reconstruction") {
  mpz_class m("1000000007");
  // 22/7 mod m
  mpz_class seven_inv;
  mpz_class seven(7);
  mpz_invert(seven_inv.get_mpz_t(), seven.get_mpz_t(), m.get_mpz_t());
  mpz_class x = (22 * seven_inv) % m;
  auto q = rational_reconstruct(x, m);
  REQUIRE(q.has_value());
  CHECK(cmp(*q, Scalar(22, 7)) == 0);
  CHECK(cmp(*rational_reconstruct(mpz_class(0), m), Scalar(0)) == 0);
}

TEST_CASE("dump and load round-trip") {
  std::mt19937_64 rng(59);
  SparseMatrix m = random_sparse(rng, 6, 9, 0.4);
  std::ostringstream os;
  m.dump(os);
  std::istringstream is(os.str());
  SparseMatrix back = SparseMatrix::load(is);
  CHECK(back.rows() == m.rows());
  CHECK(back.cols() == m.cols());
  REQUIRE(back.entries().size() == m.entries().size());
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    CHECK(back.entries()[i].row == m.entries()[i].row);
    CHECK(back.entries()[i].col == m.entries()[i].col);
    CHECK(cmp(back.entries()[i].value, m.entries()[i].value) == 0);
  }
}

TEST_CASE("row space") {
  Field Q = field_rationals();
  RowSpace s(Q, 3);
  CHECK(s.insert({Scalar(2), Scalar(0), Scalar(2)}));
  CHECK(s.insert({Scalar(0), Scalar(3), Scalar(0)}));
  CHECK(!s.insert({Scalar(2), Scalar(3), Scalar(2)}));
  CHECK(s.dim() == 2);
  CHECK(s.contains({Scalar(1), Scalar(-1), Scalar(1)}));
  CHECK(!s.contains({Scalar(0), Scalar(0), Scalar(1)}));
  // RREF basis
  CHECK(cmp(s.basis()[0][0], Scalar(1)) == 0);
  CHECK(cmp(s.basis()[0][2], Scalar(1)) == 0);
  CHECK(cmp(s.basis()[1][1], Scalar(1)) == 0);
}

TEST_CASE("time budget") {
  TimeBudget tight(1);
  for (volatile int i = 0; i < 10000000; ++i) {
  }
  CHECK_THROWS_AS(tight.check(), Error);
  TimeBudget loose(0);
  CHECK_NOTHROW(loose.check());
}
