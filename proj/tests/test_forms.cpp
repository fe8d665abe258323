#include "doctest.h"

#include <random>

#include "octlab/forms.hpp"

using namespace octlab;

namespace {

// brute-force oracle: dense elimination on the full unreduced constraint set,
// no sparse machinery, used to freeze expected solution dimensions
std::int64_t assoc_form_dim_oracle(const StructureAlgebra& a) {
  const Field& F = a.field();
  const int dim = a.dim();
  const int unknowns = dim * (dim + 1) / 2;
  auto ut = [dim](int r, int s) { return r * dim - r * (r - 1) / 2 + (s - r); };
  std::vector<Vec> rows;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        Vec row(static_cast<std::size_t>(unknowns), F.zero());
        for (const auto& [m, c] : a.table(i, j)) {
          int r = std::min(m, k), s = std::max(m, k);
          row[static_cast<std::size_t>(ut(r, s))] =
              F.add(row[static_cast<std::size_t>(ut(r, s))], c);
        }
        for (const auto& [m, c] : a.table(j, k)) {
          int r = std::min(i, m), s = std::max(i, m);
          row[static_cast<std::size_t>(ut(r, s))] =
              F.sub(row[static_cast<std::size_t>(ut(r, s))], c);
        }
        rows.push_back(std::move(row));
      }
  RowSpace rs(F, static_cast<std::size_t>(unknowns));
  for (auto& r : rows) rs.insert(std::move(r));
  return unknowns - static_cast<std::int64_t>(rs.dim());
}

}  // namespace

TEST_CASE("associative form spaces are lines on the hermitian families") {
  Field Q = field_rationals();
  StructureAlgebra p2 = build_herm_plus(2, Q);
  BilinearFormSolution s2 = assoc_form_space(p2);
  CHECK(s2.dim == 1);
  CHECK(s2.nondegenerate.at(0));
  CHECK(s2.dim == assoc_form_dim_oracle(p2));

  StructureAlgebra m1 = build_herm_minus(1, Q);
  BilinearFormSolution sm = assoc_form_space(m1);
  CHECK(sm.dim == 1);
  CHECK(sm.nondegenerate.at(0));
  CHECK(sm.dim == assoc_form_dim_oracle(m1));
}

TEST_CASE("gl2 under the commutator carries two independent forms") {
  Field Q = field_rationals();
  StructureAlgebra gl2 = build_auxiliary(AuxKind::GLn, 2, Q);
  BilinearFormSolution s = assoc_form_space(gl2);
  CHECK(s.dim == assoc_form_dim_oracle(gl2));
  CHECK(s.dim == 2);
  // Tr(xy) and Tr(x)Tr(y) are both associative on gl_2; check they lie in
  // the solution span
  const int d = 4;
  Vec trxy(16, Scalar(0)), trxtry(16, Scalar(0));
  // basis E11,E12,E21,E22: Tr(E_ab E_cd) = [b==c][d==a]
  int pairs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      auto [a, b] = pairs[i];
      auto [c, dd] = pairs[j];
      trxy[static_cast<std::size_t>(i) * d + j] = Scalar((b == c && dd == a) ? 1 : 0);
      trxtry[static_cast<std::size_t>(i) * d + j] = Scalar((a == b && c == dd) ? 1 : 0);
    }
  RowSpace span(Q, 16);
  for (const auto& g : s.basis) span.insert(g);
  CHECK(span.contains(trxy));
  CHECK(span.contains(trxtry));
}

TEST_CASE("trace form gram: block values, associativity, full rank") {
  Field Q = field_rationals();
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    for (int n = 1; n <= 3; ++n) {
      TraceFormGram g = trace_form_gram(n, sign, Q);
      CHECK(g.symmetric);
      CHECK(g.associative);
      CHECK(g.rank == herm_dim(n, sign));
    }
  }
  CHECK(verify_block_values(2, Sign::Plus, Q, 60, 5));
  CHECK(verify_block_values(2, Sign::Minus, Q, 60, 5));
  CHECK(verify_block_values(3, Sign::Plus, Q, 20, 5));
  CHECK(verify_block_values(3, Sign::Minus, Q, 20, 5));
}

TEST_CASE("solver form is an exact multiple of the trace form") {
  Field Q = field_rationals();
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    for (int n = 1; n <= 2; ++n) {
      StructureAlgebra a = build_herm(n, sign, Q);
      BilinearFormSolution s = assoc_form_space(a);
      REQUIRE(s.dim == 1);
      TraceFormGram g = trace_form_gram(n, sign, Q);
      Scalar lambda = form_match(a, s, g.gram);
      CHECK(!Q.is_zero(lambda));
      // gram against itself: factor one
      BilinearFormSolution self;
      self.dim = 1;
      self.basis = {g.gram};
      self.ranks = {g.rank};
      self.nondegenerate = {true};
      CHECK(cmp(form_match(a, self, g.gram), Scalar(1)) == 0);
    }
  }
}

TEST_CASE("bracket invariance restated") {
  Field Q = field_rationals();
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int n = 1; n <= 2; ++n) {
    StructureAlgebra m = build_herm_minus(n, Q);
    TraceFormGram g = trace_form_gram(n, Sign::Minus, Q);
    auto form = [&](const Vec& x, const Vec& y) {
      Scalar acc = Q.zero();
      for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
          acc = Q.add(acc, Q.mul(Q.mul(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)]),
                                 g.gram[static_cast<std::size_t>(i) * m.dim() + j]));
      return acc;
    };
    for (int t = 0; t < 30; ++t) {
      Vec x(static_cast<std::size_t>(m.dim())), y(static_cast<std::size_t>(m.dim())),
          z(static_cast<std::size_t>(m.dim()));
      for (auto& v : x) v = Scalar(d(rng));
      for (auto& v : y) v = Scalar(d(rng));
      for (auto& v : z) v = Scalar(d(rng));
      // G([x,y],z) + G(y,[x,z]) = 0
      Scalar lhs = Q.add(form(m.product(x, y), z), form(y, m.product(x, z)));
      CHECK(Q.is_zero(lhs));
    }
  }
}

TEST_CASE("killing restriction for so_3") {
  Field Q = field_rationals();
  KillingReport rep = killing_restriction_check(3, Q);
  CHECK(rep.proportional);
  // Killing form of so_n is (n-2) Tr(xy); the restriction is 2 Tr(xy)
  CHECK(cmp(rep.factor, Scalar(2)) == 0);
  CHECK_THROWS_AS(killing_restriction_check(2, Q), Error);
}

TEST_CASE("form match failure raises") {
  Field Q = field_rationals();
  StructureAlgebra p1 = build_herm_plus(1, Q);
  BilinearFormSolution s = assoc_form_space(p1);
  REQUIRE(s.dim == 1);
  Vec not_multiple{Scalar(0)};
  CHECK_THROWS_AS(form_match(p1, s, not_multiple), Error);
}
