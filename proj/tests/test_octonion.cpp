#include "doctest.h"

#include <random>

#include "octlab/octonion.hpp"

using namespace octlab;

namespace {

Octonion rand_oct(std::mt19937_64& rng, const Field& f, bool imaginary = false) {
  std::uniform_int_distribution<long> d(-5, 5);
  Octonion a(f);
  for (int i = imaginary ? 1 : 0; i < 8; ++i) a[i] = f.from_long(d(rng));
  return a;
}

// Table-consistency oracle: alternativity, norm multiplicativity and
// B_i-invariance together pin the product table up to an admissible
// relabeling. Run before anything else trusts the table.
bool table_consistent(const Field& f, std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < cases; ++t) {
    Octonion a = rand_oct(rng, f);
    Octonion b = rand_oct(rng, f);
    if (oct_mul(oct_mul(a, a), b) != oct_mul(a, oct_mul(a, b))) return false;
    if (oct_mul(oct_mul(a, b), b) != oct_mul(a, oct_mul(b, b))) return false;
    if (!f.eq(oct_norm(oct_mul(a, b)), f.mul(oct_norm(a), oct_norm(b)))) return false;
  }
  // e_i B_i = B_i e_i = B_i, where B_i spans everything except 1 and e_i
  for (int i = 1; i <= 7; ++i) {
    for (int side = 0; side < 2; ++side) {
      std::array<bool, 8> hit{};
      for (int j = 1; j <= 7; ++j) {
        if (j == i) continue;
        Octonion ei = Octonion::unit(f, i), ej = Octonion::unit(f, j);
        Octonion p = side == 0 ? oct_mul(ei, ej) : oct_mul(ej, ei);
        int k = -1;
        for (int c = 0; c < 8; ++c)
          if (!f.is_zero(p[c])) {
            if (k >= 0) return false;  // image must be a single basis line
            k = c;
          }
        if (k <= 0 || k == i) return false;  // must stay inside B_i
        hit[static_cast<std::size_t>(k)] = true;
      }
      int count = 0;
      for (int c = 1; c < 8; ++c)
        if (hit[static_cast<std::size_t>(c)]) ++count;
      if (count != 6) return false;  // and fill B_i
    }
  }
  return true;
}

const bool kTableOk = table_consistent(field_rationals(), 2024, 200);

}  // namespace

TEST_CASE("fano table consistency oracle") {
  REQUIRE(kTableOk);
  CHECK(table_consistent(field_prime(7), 99, 200));
}

TEST_CASE("basis products") {
  REQUIRE(kTableOk);
  Field F = field_rationals();
  Octonion e1 = Octonion::unit(F, 1), e2 = Octonion::unit(F, 2), e4 = Octonion::unit(F, 4);
  CHECK(oct_mul(e1, e1) == oct_scale(Scalar(-1), Octonion::one(F)));
  CHECK(oct_mul(e1, e2) == e4);
  CHECK(oct_mul(e2, e4) == e1);
  CHECK(oct_mul(e4, e1) == e2);
  CHECK(oct_mul(e2, e1) == oct_neg(e4));
  // unit axiom on random elements
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    Octonion x = rand_oct(rng, F);
    CHECK(oct_mul(Octonion::one(F), x) == x);
    CHECK(oct_mul(x, Octonion::one(F)) == x);
  }
}

TEST_CASE("field mismatch is rejected") {
  Octonion a = Octonion::one(field_rationals());
  Octonion b = Octonion::one(field_prime(7));
  CHECK_THROWS_AS(oct_mul(a, b), Error);
}

TEST_CASE("conjugation") {
  REQUIRE(kTableOk);
  Field F = field_rationals();
  CHECK(oct_conj(Octonion::one(F)) == Octonion::one(F));
  CHECK(oct_conj(Octonion::unit(F, 3)) == oct_neg(Octonion::unit(F, 3)));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Octonion a = rand_oct(rng, F), b = rand_oct(rng, F);
    CHECK(oct_conj(oct_conj(a)) == a);
    // antiautomorphism
    CHECK(oct_conj(oct_mul(a, b)) == oct_mul(oct_conj(b), oct_conj(a)));
  }
}

TEST_CASE("trace, norm and the quadratic relation") {
  REQUIRE(kTableOk);
  for (const Field& F : {field_rationals(), field_prime(7)}) {
    CHECK(F.eq(oct_trace(Octonion::one(F)), F.from_long(2)));
    CHECK(F.eq(oct_norm(Octonion::one(F)), F.one()));
    for (int i = 1; i <= 7; ++i) CHECK(F.eq(oct_norm(Octonion::unit(F, i)), F.one()));
    std::mt19937_64 rng(17);
    for (int t = 0; t < 1000; ++t) {
      Octonion a = rand_oct(rng, F);
      // a^2 - T(a) a + N(a) 1 = 0
      Octonion lhs = oct_add(oct_sub(oct_mul(a, a), oct_scale(oct_trace(a), a)),
                             oct_scale(oct_norm(a), Octonion::one(F)));
      CHECK(lhs.is_zero());
    }
  }
}

TEST_CASE("polarized norm") {
  REQUIRE(kTableOk);
  for (const Field& F : {field_rationals(), field_prime(7)}) {
    for (int i = 1; i <= 7; ++i) {
      Octonion ei = Octonion::unit(F, i);
      CHECK(F.eq(oct_norm_polar(ei, ei), F.from_long(-2)));
    }
    CHECK(F.is_zero(oct_norm_polar(Octonion::unit(F, 1), Octonion::unit(F, 2))));
    std::mt19937_64 rng(23);
    for (int t = 0; t < 1000; ++t) {
      Octonion a = rand_oct(rng, F, true), b = rand_oct(rng, F, true);
      // ab + ba = N(a,b) 1
      Octonion lhs = oct_add(oct_mul(a, b), oct_mul(b, a));
      CHECK(lhs == oct_scale(oct_norm_polar(a, b), Octonion::one(F)));
    }
    CHECK_THROWS_AS(oct_norm_polar(Octonion::one(F), Octonion::unit(F, 1)), Error);
  }
}

TEST_CASE("serialization shape") {
  Field F = field_rationals();
  Octonion a(F);
  a[0] = Scalar(1, 2);
  a[3] = Scalar(-2);
  CHECK(a.to_string() == "[1/2,0,0,-2,0,0,0,0]");
}
