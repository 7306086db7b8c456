#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metalie/poly.hpp"
#include "metalie/random.hpp"

using namespace metalie;

namespace {
Context q4() { return Context(4, FieldSpec::rationals()); }
Poly y(const Context& ctx, int i) { return Poly::variable(ctx, i); }
}  // namespace

TEST_CASE("field specs") {
  CHECK(FieldSpec::rationals().characteristic() == 0);
  CHECK(FieldSpec::prime_field(5).characteristic() == 5);
  CHECK_THROWS_AS(FieldSpec::prime_field(6), DomainError);
  CHECK_THROWS_AS(FieldSpec::prime_field(1), DomainError);
  CHECK(FieldSpec::parse("q") == FieldSpec::rationals());
  CHECK(FieldSpec::parse("gf:7") == FieldSpec::prime_field(7));
  CHECK_THROWS_AS(FieldSpec::parse("gf:9"), DomainError);
}

TEST_CASE("rational scalars stay reduced") {
  FieldSpec q = FieldSpec::rationals();
  Scalar a = Scalar::of_fraction(q, 2, 4);
  CHECK(a.str() == "1/2");
  CHECK((a + a).str() == "1");
  CHECK((a - a).is_zero());
  CHECK((a * Scalar::of_int(q, -6)).str() == "-3");
  CHECK(a.inverse().str() == "2");
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), DomainError);
}

TEST_CASE("prime field scalars are canonical representatives") {
  FieldSpec f = FieldSpec::prime_field(7);
  Scalar a = Scalar::of_int(f, -1);
  CHECK(a.str() == "6");
  CHECK((a + Scalar::one(f)).is_zero());
  CHECK((Scalar::of_int(f, 3) * Scalar::of_int(f, 5)).str() == "1");
  CHECK(Scalar::of_int(f, 3).inverse().str() == "5");
  CHECK(Scalar::of_fraction(f, 1, 3) == Scalar::of_int(f, 5));
}

TEST_CASE("difference of squares") {
  Context ctx = q4();
  Poly p = (y(ctx, 1) + y(ctx, 2)) * (y(ctx, 1) - y(ctx, 2));
  CHECK(p == y(ctx, 1) * y(ctx, 1) - y(ctx, 2) * y(ctx, 2));
  CHECK(p.str() == "y1^2 - y2^2");
}

TEST_CASE("additive identity") {
  Context ctx = q4();
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    Poly p = random_poly(rng, ctx, 4, 0, 5);
    CHECK(p + Poly::zero(ctx) == p);
  }
}

TEST_CASE("freshman's dream over GF(2)") {
  Context ctx(4, FieldSpec::prime_field(2));
  Poly s = y(ctx, 1) + y(ctx, 4);
  // Expanding by hand: y1^2 + 2 y1 y4 + y4^2, and the cross term dies mod 2.
  CHECK(s * s == y(ctx, 1).pow(2) + y(ctx, 4).pow(2));
}

TEST_CASE("substitution: binomial expansion and identity") {
  Context ctx = q4();
  Poly p = y(ctx, 1).pow(2);
  std::vector<Poly> images = {y(ctx, 1) + y(ctx, 4), y(ctx, 2), y(ctx, 3),
                              y(ctx, 4)};
  Poly expected = y(ctx, 1).pow(2) +
                  (y(ctx, 1) * y(ctx, 4)).scaled(Scalar::of_int(ctx.field, 2)) +
                  y(ctx, 4).pow(2);
  CHECK(p.substitute(images) == expected);

  Rng rng(11);
  std::vector<Poly> id = {y(ctx, 1), y(ctx, 2), y(ctx, 3), y(ctx, 4)};
  for (int k = 0; k < 20; ++k) {
    Poly r = random_poly(rng, ctx, 4, 0, 5);
    CHECK(r.substitute(id) == r);
  }
}

TEST_CASE("substitution against hand expansion on shifted variables") {
  // y1*y2 under y3 -> y3 + y4 is untouched; y2*y3 picks up a cross term.
  Context ctx = q4();
  std::vector<Poly> images = {y(ctx, 1), y(ctx, 2), y(ctx, 3) + y(ctx, 4),
                              y(ctx, 4)};
  CHECK((y(ctx, 1) * y(ctx, 2)).substitute(images) == y(ctx, 1) * y(ctx, 2));
  CHECK((y(ctx, 2) * y(ctx, 3)).substitute(images) ==
        y(ctx, 2) * y(ctx, 3) + y(ctx, 2) * y(ctx, 4));
  CHECK(y(ctx, 3).pow(2).substitute(images) ==
        y(ctx, 3).pow(2) +
            (y(ctx, 3) * y(ctx, 4)).scaled(Scalar::of_int(ctx.field, 2)) +
            y(ctx, 4).pow(2));
}

TEST_CASE("degrees with zero sentinels") {
  Context ctx = q4();
  CHECK(Poly::zero(ctx).degrees() == DegreePair{kLdegOfZero, kDegOfZero});
  Poly p = y(ctx, 1).pow(2) * y(ctx, 4) + y(ctx, 2);
  CHECK(p.degrees() == DegreePair{1, 3});
  CHECK(Poly::constant(ctx, 9).degrees() == DegreePair{0, 0});
}

TEST_CASE("split by a variable") {
  Context ctx = q4();
  Poly p = y(ctx, 1) * y(ctx, 3) + y(ctx, 2);
  auto [q, r] = p.split_by_variable(3);
  CHECK(q == y(ctx, 1));
  CHECK(r == y(ctx, 2));

  auto [q2, r2] = y(ctx, 2).pow(2).split_by_variable(1);
  CHECK(q2.is_zero());
  CHECK(r2 == y(ctx, 2).pow(2));

  // The defining decomposition p = -yn*b + p0 of the lifting argument.
  Poly b = y(ctx, 1) + y(ctx, 2) * y(ctx, 4);
  Poly p0 = y(ctx, 2).pow(3);
  Poly a = -(y(ctx, 4) * b) + p0;
  auto [qa, ra] = a.split_by_variable(4);
  CHECK(qa == -b);
  CHECK(ra == p0);
}

TEST_CASE("ring laws on random triples") {
  Rng rng(23);
  for (const Context& ctx :
       {Context(4, FieldSpec::rationals()), Context(5, FieldSpec::prime_field(3)),
        Context(6, FieldSpec::prime_field(2))}) {
    for (int k = 0; k < 40; ++k) {
      Poly a = random_poly(rng, ctx, 3, 0, 4);
      Poly b = random_poly(rng, ctx, 3, 0, 4);
      Poly c = random_poly(rng, ctx, 3, 0, 4);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  Rng rng(31);
  Context ctx(4, FieldSpec::prime_field(5));
  for (int k = 0; k < 25; ++k) {
    std::vector<Poly> images;
    for (int i = 0; i < ctx.n; ++i)
      images.push_back(random_poly(rng, ctx, 2, 0, 2));
    Poly a = random_poly(rng, ctx, 3, 0, 3);
    Poly b = random_poly(rng, ctx, 3, 0, 3);
    CHECK((a * b).substitute(images) ==
          a.substitute(images) * b.substitute(images));
    CHECK((a + b).substitute(images) ==
          a.substitute(images) + b.substitute(images));
  }
}

TEST_CASE("split round trip is the identity") {
  Rng rng(37);
  Context ctx(5, FieldSpec::rationals());
  for (int k = 0; k < 40; ++k) {
    Poly p = random_poly(rng, ctx, 4, 0, 5);
    int i = rng.range(1, ctx.n);
    auto [q, r] = p.split_by_variable(i);
    CHECK(Poly::variable(ctx, i) * q + r == p);
    CHECK(!r.contains_variable(i));
  }
}

TEST_CASE("degrees are additive under multiplication") {
  Rng rng(41);
  for (const Context& ctx : {Context(4, FieldSpec::rationals()),
                             Context(4, FieldSpec::prime_field(3))}) {
    for (int k = 0; k < 40; ++k) {
      Poly a = random_poly(rng, ctx, 3, 0, 4);
      Poly b = random_poly(rng, ctx, 3, 0, 4);
      Poly ab = a * b;
      CHECK(ab.lower_degree() == a.lower_degree() + b.lower_degree());
      CHECK(ab.degree() == a.degree() + b.degree());
    }
  }
}

TEST_CASE("exact division") {
  Rng rng(43);
  Context ctx(4, FieldSpec::rationals());
  for (int k = 0; k < 30; ++k) {
    Poly a = random_poly(rng, ctx, 3, 0, 3);
    Poly b = random_poly(rng, ctx, 3, 0, 3);
    CHECK((a * b).divide_exact(b) == a);
  }
  CHECK_THROWS_AS((y(ctx, 1) + Poly::constant(ctx, 1)).divide_exact(y(ctx, 2)),
                  DomainError);
}

TEST_CASE("mixed contexts are rejected") {
  Context a = q4();
  Context b(5, FieldSpec::rationals());
  Context c(4, FieldSpec::prime_field(3));
  CHECK_THROWS_AS(y(a, 1) + y(b, 1), DomainError);
  CHECK_THROWS_AS(y(a, 1) * y(c, 1), DomainError);
  CHECK_THROWS_AS(Poly::variable(a, 5), DomainError);
}
