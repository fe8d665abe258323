#include "doctest.h"

#include <random>

#include "octlab/exactnum.hpp"

using namespace octlab;

TEST_CASE("field policy") {
  CHECK_NOTHROW(field_rationals());
  CHECK_NOTHROW(field_prime(7));
  CHECK_THROWS_AS(field_prime(2), Error);
  CHECK_THROWS_AS(field_prime(3), Error);
  CHECK_NOTHROW(field_prime(3, true));
  CHECK_THROWS_AS(field_prime(9), Error);
  try {
    field_prime(2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CharacteristicForbidden);
  }
  try {
    field_prime(15);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 20);
  for (const Field& F : {field_rationals(), field_prime(7)}) {
    for (int t = 0; t < 1000; ++t) {
      auto draw = [&] {
        if (F.is_rationals()) return F.reduce(Scalar(num(rng), den(rng)));
        return F.from_long(num(rng));
      };
      Scalar a = draw();
      Scalar b = draw();
      Scalar c = draw();
      CHECK(F.eq(F.add(a, F.add(b, c)), F.add(F.add(a, b), c)));
      CHECK(F.eq(F.mul(a, F.mul(b, c)), F.mul(F.mul(a, b), c)));
      CHECK(F.eq(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))));
      CHECK(F.eq(F.add(a, F.neg(a)), F.zero()));
      if (!F.is_zero(b)) CHECK(F.eq(F.mul(b, F.inv(b)), F.one()));
    }
  }
}

TEST_CASE("canonical form and serialization") {
  Scalar s(6, 4);
  s.canonicalize();
  CHECK(scalar_to_string(s) == "3/2");
  Scalar s2(-4, 2);
  s2.canonicalize();
  CHECK(scalar_to_string(s2) == "-2");
  CHECK(scalar_to_string(Scalar(5)) == "5");
  CHECK(cmp(scalar_from_string("3/2"), Scalar(3, 2)) == 0);
  CHECK(cmp(scalar_from_string("-7"), Scalar(-7)) == 0);
  // canonicalize is idempotent
  Field F = field_rationals();
  Scalar t = F.reduce(scalar_from_string("10/4"));
  CHECK(scalar_to_string(F.reduce(t)) == scalar_to_string(t));
  CHECK_THROWS_AS(scalar_from_string("0.5"), Error);
  CHECK_THROWS_AS(scalar_from_string(""), Error);
  CHECK_THROWS_AS(scalar_from_string("1/2/3"), Error);
  // prime field residues serialize as decimal residues
  Field F7 = field_prime(7);
  CHECK(scalar_to_string(F7.reduce(Scalar(1, 2))) == "4");
  CHECK(scalar_to_string(F7.half()) == "4");
}

TEST_CASE("prime field reduction rejects bad denominators") {
  Field F7 = field_prime(7);
  CHECK_THROWS_AS(F7.reduce(Scalar(1, 7)), Error);
  try {
    F7.reduce(Scalar(3, 14));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrimeDividesDenominator);
  }
}
