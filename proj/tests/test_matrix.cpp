#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metalie/matrix.hpp"
#include "metalie/random.hpp"

using namespace metalie;

TEST_CASE("scalar matrix inverse and determinant") {
  Rng rng(5);
  for (const FieldSpec& f :
       {FieldSpec::rationals(), FieldSpec::prime_field(5)}) {
    Context ctx(4, f);
    for (int k = 0; k < 25; ++k) {
      LinearMap m = random_invertible_map(rng, ctx, 6);
      CHECK(m.invertible());
      CHECK((m * m.inverse()).matrix().is_identity());
      CHECK((m.inverse() * m).matrix().is_identity());
    }
  }
  ScalarMatrix singular(3, FieldSpec::rationals());
  CHECK(singular.determinant().is_zero());
  CHECK_THROWS_AS(singular.inverse(), DomainError);
}

TEST_CASE("bareiss determinant matches cofactor expansion on small cases") {
  Context ctx(4, FieldSpec::rationals());
  Rng rng(9);
  // 2x2 blocks embedded in the identity have determinant ad - bc.
  for (int k = 0; k < 20; ++k) {
    PolyMatrix m = PolyMatrix::identity(ctx);
    Poly a = random_poly(rng, ctx, 2, 0, 2);
    Poly b = random_poly(rng, ctx, 2, 0, 2);
    Poly c = random_poly(rng, ctx, 2, 0, 2);
    Poly d = random_poly(rng, ctx, 2, 0, 2);
    m.set(1, 1, a);
    m.set(1, 2, b);
    m.set(2, 1, c);
    m.set(2, 2, d);
    CHECK(m.determinant() == a * d - b * c);
  }
}

TEST_CASE("determinant is alternating and multiplicative on permutations") {
  Context ctx(4, FieldSpec::prime_field(7));
  PolyMatrix m = PolyMatrix::identity(ctx);
  // A permutation matrix for a transposition has determinant -1.
  m.set(1, 1, Poly::zero(ctx));
  m.set(2, 2, Poly::zero(ctx));
  m.set(1, 2, Poly::constant(ctx, 1));
  m.set(2, 1, Poly::constant(ctx, 1));
  CHECK(m.determinant() == Poly::constant(ctx, -1));
}

TEST_CASE("adjugate identity A adj(A) = det(A) I") {
  Context ctx(4, FieldSpec::rationals());
  Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    PolyMatrix m = PolyMatrix::identity(ctx);
    // Sparse perturbations keep the degree growth in check.
    for (int t = 0; t < 4; ++t) {
      int i = rng.range(1, 4), j = rng.range(1, 4);
      m.set(i, j, m.at(i, j) + random_poly(rng, ctx, 1, 0, 2));
    }
    Poly det = m.determinant();
    PolyMatrix prod = m * m.adjugate();
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        CHECK(prod.at(i, j) == (i == j ? det : Poly::zero(ctx)));
  }
}

TEST_CASE("determinant needs no division by content over prime fields") {
  Context ctx(5, FieldSpec::prime_field(2));
  Rng rng(21);
  for (int k = 0; k < 6; ++k) {
    PolyMatrix m = PolyMatrix::identity(ctx);
    for (int t = 0; t < 5; ++t) {
      int i = rng.range(1, 5), j = rng.range(1, 5);
      m.set(i, j, m.at(i, j) + random_poly(rng, ctx, 1, 1, 2));
    }
    Poly det = m.determinant();
    PolyMatrix prod = m * m.adjugate();
    for (int i = 1; i <= 5; ++i) CHECK(prod.at(i, i) == det);
  }
}
