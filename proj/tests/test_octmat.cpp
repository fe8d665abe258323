#include "doctest.h"

#include <random>

#include "octlab/octmat.hpp"

using namespace octlab;

namespace {

Octonion rand_oct(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<long> d(-3, 3);
  Octonion a(f);
  for (int i = 0; i < 8; ++i) a[i] = f.from_long(d(rng));
  return a;
}

OctMatrix rand_mat(std::mt19937_64& rng, const Field& f, int n) {
  OctMatrix m(f, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m.at(u, v) = rand_oct(rng, f);
  return m;
}

}  // namespace

TEST_CASE("identity and order-1 reduction") {
  Field F = field_rationals();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    OctMatrix x = rand_mat(rng, F, 3);
    CHECK(mat_mul(OctMatrix::identity(F, 3), x) == x);
    CHECK(mat_mul(x, OctMatrix::identity(F, 3)) == x);
  }
  for (int t = 0; t < 100; ++t) {
    OctMatrix a(F, 1), b(F, 1);
    a.at(0, 0) = rand_oct(rng, F);
    b.at(0, 0) = rand_oct(rng, F);
    CHECK(mat_mul(a, b).at(0, 0) == oct_mul(a.at(0, 0), b.at(0, 0)));
    CHECK(involution_J(a).at(0, 0) == oct_conj(a.at(0, 0)));
  }
}

TEST_CASE("bilinearity") {
  Field F = field_rationals();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    OctMatrix x = rand_mat(rng, F, 2), y = rand_mat(rng, F, 2), z = rand_mat(rng, F, 2);
    CHECK(mat_mul(mat_add(x, y), z) == mat_add(mat_mul(x, z), mat_mul(y, z)));
    CHECK(mat_mul(z, mat_add(x, y)) == mat_add(mat_mul(z, x), mat_mul(z, y)));
  }
}

TEST_CASE("involution J") {
  for (const Field& F : {field_rationals(), field_prime(7)}) {
    std::mt19937_64 rng(7);
    for (int n : {2, 3}) {
      for (int t = 0; t < 50; ++t) {
        OctMatrix x = rand_mat(rng, F, n), y = rand_mat(rng, F, n);
        CHECK(involution_J(involution_J(x)) == x);
        CHECK(involution_J(mat_mul(x, y)) == mat_mul(involution_J(y), involution_J(x)));
      }
    }
  }
}

TEST_CASE("hermitian split") {
  Field F = field_rationals();
  std::mt19937_64 rng(11);
  // already Hermitian -> (X, 0)
  OctMatrix h(F, 2);
  h.at(0, 0) = Octonion::scalar(F, Scalar(3));
  h.at(1, 1) = Octonion::scalar(F, Scalar(-1));
  h.at(0, 1) = rand_oct(rng, F);
  h.at(1, 0) = oct_conj(h.at(0, 1));
  auto [hp, hm] = herm_split(h);
  CHECK(hp == h);
  CHECK(hm.is_zero());
  // diagonal imaginary E(x)e1 -> pure minus part
  OctMatrix d(F, 2);
  d.at(0, 0) = Octonion::unit(F, 1);
  d.at(1, 1) = Octonion::unit(F, 1);
  auto [dp, dm] = herm_split(d);
  CHECK(dp.is_zero());
  CHECK(dm == d);
  // random split reconstructs
  for (int t = 0; t < 50; ++t) {
    OctMatrix x = rand_mat(rng, F, 3);
    auto [p, m] = herm_split(x);
    CHECK(involution_J(p) == p);
    CHECK(involution_J(m) == mat_neg(m));
    CHECK(mat_add(p, m) == x);
  }
}

TEST_CASE("closure inclusions under the split") {
  Field F = field_rationals();
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 20; ++t) {
      auto [p1, m1] = herm_split(rand_mat(rng, F, n));
      auto [p2, m2] = herm_split(rand_mat(rng, F, n));
      auto is_plus = [](const OctMatrix& x) { return involution_J(x) == x; };
      auto is_minus = [](const OctMatrix& x) { return involution_J(x) == mat_neg(x); };
      CHECK(is_plus(jordan_prod(p1, p2)));
      CHECK(is_minus(jordan_prod(p1, m2)));
      CHECK(is_plus(jordan_prod(m1, m2)));
      CHECK(is_minus(bracket(p1, p2)));
      CHECK(is_plus(bracket(p1, m2)));
      CHECK(is_minus(bracket(m1, m2)));
    }
  }
}

TEST_CASE("trace form values") {
  Field F = field_rationals();
  // E, E at n = 2: Tr(E E + E E) = 2 Tr(E) = 4
  OctMatrix e2 = OctMatrix::identity(F, 2);
  CHECK(cmp(trace_form(e2, e2), Scalar(4)) == 0);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int t = 0; t < 100; ++t) {
    // m symmetric, x skew (scalar matrices), a, b imaginary
    int n = 3;
    OctMatrix m(F, n), x(F, n), y(F, n);
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        Scalar c = F.from_long(d(rng));
        m.at(u, v) = Octonion::scalar(F, c);
        m.at(v, u) = Octonion::scalar(F, c);
      }
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        Scalar c = F.from_long(d(rng)), c2 = F.from_long(d(rng));
        x.at(u, v) = Octonion::scalar(F, c);
        x.at(v, u) = Octonion::scalar(F, F.neg(c));
        y.at(u, v) = Octonion::scalar(F, c2);
        y.at(v, u) = Octonion::scalar(F, F.neg(c2));
      }
    Octonion a(F), b(F);
    for (int i = 1; i < 8; ++i) {
      a[i] = F.from_long(d(rng));
      b[i] = F.from_long(d(rng));
    }
    auto tensor = [&](const OctMatrix& k, const Octonion& o) {
      OctMatrix out(F, n);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) out.at(u, v) = oct_scale(k.at(u, v)[0], o);
      return out;
    };
    // (m(x)1, x(x)a) -> 0
    CHECK(F.is_zero(trace_form(tensor(m, Octonion::one(F)), tensor(x, a))));
    // (x(x)a, y(x)b) -> N(a,b) Tr(xy)
    Scalar trxy = mat_trace(mat_mul(x, y))[0];
    CHECK(F.eq(trace_form(tensor(x, a), tensor(y, b)), F.mul(oct_norm_polar(a, b), trxy)));
    // symmetry of the form on split parts
    auto [p1, m1] = herm_split(rand_mat(rng, F, 2));
    auto [p2, m2] = herm_split(rand_mat(rng, F, 2));
    CHECK(F.eq(trace_form(p1, p2), trace_form(p2, p1)));
    CHECK(F.eq(trace_form(m1, m2), trace_form(m2, m1)));
  }
}

TEST_CASE("dimension mismatch") {
  Field F = field_rationals();
  CHECK_THROWS_AS(mat_mul(OctMatrix::identity(F, 2), OctMatrix::identity(F, 3)), Error);
}
