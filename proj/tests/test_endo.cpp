#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metalie/endo.hpp"
#include "metalie/random.hpp"

using namespace metalie;

namespace {

Context q4() { return Context(4, FieldSpec::rationals()); }
Poly y(const Context& ctx, int i) { return Poly::variable(ctx, i); }
MagnusElement x(const Context& ctx, int i) {
  return MagnusElement::generator(ctx, i);
}
MagnusElement xy(const Context& ctx, int s, int t, const Poly& a) {
  return module_scale(bracket(x(ctx, s), x(ctx, t)), a);
}

}  // namespace

TEST_CASE("identity and generator images") {
  Context ctx = q4();
  Endomorphism id = Endomorphism::identity(ctx);
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    MagnusElement g = random_element(rng, ctx, 2, 5);
    CHECK(apply(id, g) == g);
  }
  Endomorphism phi = quadratic_map(ctx);
  for (int i = 1; i <= 4; ++i) CHECK(apply(phi, x(ctx, i)) == phi.image(i));
}

TEST_CASE("applying the quadratic map to a cubic monomial") {
  Context ctx = q4();
  Endomorphism phi = quadratic_map(ctx);
  // The induced substitution fixes y1, so [x2,x3]y1 maps to itself.
  MagnusElement g = xy(ctx, 2, 3, y(ctx, 1));
  CHECK(apply(phi, g) == g);
  CHECK(apply(phi, g) == bracket(bracket(x(ctx, 2), x(ctx, 3)), x(ctx, 1)));
}

TEST_CASE("composition laws") {
  Context ctx = q4();
  Rng rng(7);
  Endomorphism id = Endomorphism::identity(ctx);
  for (int k = 0; k < 10; ++k) {
    Endomorphism phi = random_endomorphism(rng, ctx, 3);
    CHECK(compose(phi, id) == phi);
    CHECK(compose(id, phi) == phi);
  }
  for (int k = 0; k < 8; ++k) {
    Endomorphism a = random_endomorphism(rng, ctx, 2);
    Endomorphism b = random_endomorphism(rng, ctx, 2);
    Endomorphism c = random_endomorphism(rng, ctx, 2);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("chein maps compose additively") {
  Context ctx = q4();
  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    Poly a = random_poly(rng, ctx, 2, 0, 3);
    Poly b = random_poly(rng, ctx, 2, 0, 3);
    CHECK(compose(chein_map(a), chein_map(b)) == chein_map(a + b));
  }
}

TEST_CASE("chain rule on random pairs") {
  Rng rng(13);
  for (const Context& ctx : {Context(4, FieldSpec::rationals()),
                             Context(5, FieldSpec::prime_field(3))}) {
    for (int k = 0; k < 15; ++k) {
      Endomorphism phi = random_endomorphism(rng, ctx, 3);
      Endomorphism psi = random_endomorphism(rng, ctx, 3);
      CHECK(jacobian(compose(phi, psi)) ==
            jacobian(phi) *
                jacobian(psi).substitute(phi.induced_variable_images()));
    }
  }
}

TEST_CASE("jacobian shapes") {
  Context ctx = q4();
  CHECK(jacobian(Endomorphism::identity(ctx)) == PolyMatrix::identity(ctx));

  PolyMatrix j = jacobian(quadratic_map(ctx));
  PolyMatrix expected = PolyMatrix::identity(ctx);
  expected.set(2, 1, y(ctx, 3));
  expected.set(3, 1, -y(ctx, 2));
  CHECK(j == expected);

  Poly a = y(ctx, 1) * y(ctx, 2);
  PolyMatrix jc = jacobian(chein_map(a));
  PolyMatrix ec = PolyMatrix::identity(ctx);
  ec.set(2, 1, y(ctx, 3) * a);
  ec.set(3, 1, -(y(ctx, 2) * a));
  CHECK(jc == ec);
}

TEST_CASE("automorphism recognition") {
  Context ctx = q4();
  CHECK(is_automorphism(Endomorphism::identity(ctx)));
  CHECK(is_automorphism(quadratic_map(ctx)));
  CHECK(is_automorphism(cubic_map(ctx)));

  // x1 -> x1 + [x2,x1] has Jacobian determinant 1 - y2, not a unit.
  std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
  imgs[0] = imgs[0] + bracket(x(ctx, 2), x(ctx, 1));
  Endomorphism bad = Endomorphism::of_images(ctx, imgs);
  CHECK(jacobian(bad).determinant() ==
        Poly::constant(ctx, 1) - y(ctx, 2));
  CHECK(!is_automorphism(bad));
  CHECK_THROWS_AS(invert(bad), DomainError);
}

TEST_CASE("inverting elementary maps") {
  Context ctx = q4();
  Endomorphism phi = quadratic_map(ctx);
  Endomorphism inv = invert(phi);
  CHECK(inv == chein_map(Poly::constant(ctx, -1)));
  CHECK(compose(phi, inv).is_identity());
}

TEST_CASE("inverting exponentials and chein maps") {
  Context ctx = q4();
  Rng rng(17);
  for (int k = 0; k < 6; ++k) {
    MagnusElement m = random_derived_element(rng, ctx, 2, 2, 4);
    Endomorphism e = exponential_map(m);
    CHECK(invert(e) == exponential_map(-m));
    Poly a = random_poly(rng, ctx, 2, 0, 3);
    CHECK(invert(chein_map(a)) == chein_map(-a));
  }
}

TEST_CASE("inverse of a product with a twisted linear part") {
  Context ctx(5, FieldSpec::prime_field(7));
  Rng rng(19);
  for (int k = 0; k < 10; ++k) {
    Endomorphism phi =
        linear_endomorphism(ctx, random_invertible_map(rng, ctx, 5));
    phi = compose(phi, exponential_map(random_derived_element(rng, ctx, 1, 2, 4)));
    phi = compose(chein_map(random_poly(rng, ctx, 1, 0, 2)), phi);
    REQUIRE(is_automorphism(phi));
    Endomorphism inv = invert(phi);
    CHECK(compose(phi, inv).is_identity());
    CHECK(compose(inv, phi).is_identity());
  }
}

TEST_CASE("conjugation and commutator conventions") {
  Context ctx = q4();
  Rng rng(23);
  Endomorphism id = Endomorphism::identity(ctx);
  for (int k = 0; k < 6; ++k) {
    Endomorphism phi = chein_map(random_poly(rng, ctx, 2, 0, 2));
    CHECK(conjugate(phi, id) == phi);
    CHECK(commutator(phi, phi).is_identity());
  }
}

TEST_CASE("the mixed-monomial commutator instance") {
  Context ctx = q4();
  const Scalar one = Scalar::one(ctx.field);
  // phi moves x4 by [x2,x3]y1, psi moves x1 by -[x2,x4]; their commutator is
  // the chein map of y1 y2.
  Endomorphism phi = elementary_map(ctx, 4, one, xy(ctx, 2, 3, y(ctx, 1)));
  Endomorphism psi = elementary_map(
      ctx, 1, one, -xy(ctx, 2, 4, Poly::constant(ctx, 1)));
  CHECK(commutator(phi, psi) == chein_map(y(ctx, 1) * y(ctx, 2)));
}

TEST_CASE("exponential additivity and the zero case") {
  Context ctx = q4();
  CHECK(exponential_map(MagnusElement::zero(ctx)).is_identity());
  Rng rng(29);
  for (int k = 0; k < 8; ++k) {
    MagnusElement m1 = random_derived_element(rng, ctx, 1, 2, 4);
    MagnusElement m2 = random_derived_element(rng, ctx, 1, 2, 4);
    CHECK(compose(exponential_map(m1), exponential_map(m2)) ==
          exponential_map(m1 + m2));
  }
}

TEST_CASE("double-row maps compose additively") {
  Context ctx = q4();
  Rng rng(31);
  for (int k = 0; k < 8; ++k) {
    Poly a1 = random_poly(rng, ctx, 2, 0, 3);
    Poly a2 = random_poly(rng, ctx, 2, 0, 3);
    CHECK(compose(d_map(a1), d_map(a2)) == d_map(a1 + a2));
  }
}

TEST_CASE("one-row maps at the same row compose additively") {
  Context ctx = q4();
  Rng rng(37);
  for (int k = 0; k < 8; ++k) {
    Poly a = random_poly(rng, ctx, 2, 0, 3);
    Poly b = random_poly(rng, ctx, 2, 0, 3);
    std::vector<MagnusElement> i1 = Endomorphism::identity(ctx).images();
    i1[0] = i1[0] + xy(ctx, 2, 3, a) + xy(ctx, 2, 4, b);
    std::vector<MagnusElement> i2 = Endomorphism::identity(ctx).images();
    i2[0] = i2[0] + xy(ctx, 3, 4, b);
    std::vector<MagnusElement> sum = Endomorphism::identity(ctx).images();
    sum[0] = sum[0] + xy(ctx, 2, 3, a) + xy(ctx, 2, 4, b) + xy(ctx, 3, 4, b);
    CHECK(compose(Endomorphism::of_images(ctx, i1),
                  Endomorphism::of_images(ctx, i2)) ==
          Endomorphism::of_images(ctx, sum));
  }
}

TEST_CASE("named builders") {
  Context ctx = q4();
  Poly h = y(ctx, 3);
  CHECK(a_map(h, Poly::zero(ctx)) ==
        [&] {
          std::vector<MagnusElement> imgs =
              Endomorphism::identity(ctx).images();
          imgs[1] = imgs[1] - xy(ctx, 1, 4, h);
          return Endomorphism::of_images(ctx, imgs);
        }());
  CHECK(b_map(h, Poly::zero(ctx), Poly::zero(ctx)).is_identity());
  CHECK(is_automorphism(a_map(y(ctx, 1), y(ctx, 2))));
  CHECK(is_automorphism(b_map(y(ctx, 1), y(ctx, 2), y(ctx, 3))));
  CHECK(is_automorphism(d_map(y(ctx, 1) + y(ctx, 2))));
  CHECK(quadratic_map(ctx) == chein_map(Poly::constant(ctx, 1)));
  CHECK(cubic_map(ctx) == chein_map(y(ctx, 1)));
}

TEST_CASE("chein maps pass the one-row validity test") {
  Context ctx = q4();
  Rng rng(41);
  for (int k = 0; k < 10; ++k) {
    Poly a = random_poly(rng, ctx, 2, 0, 3);
    Endomorphism phi = chein_map(a);
    auto row = one_row_index(phi);
    if (a.is_zero()) continue;
    REQUIRE(row.has_value());
    CHECK(*row == 1);
    MagnusElement f = phi.image(1) - x(ctx, 1);
    CHECK(is_chein_valid(1, f));
  }
}

TEST_CASE("one-row detection") {
  Context ctx = q4();
  // The irreducible cubic moves row 1 and is valid.
  Endomorphism cubic = cubic_map(ctx);
  auto row = one_row_index(cubic);
  REQUIRE(row.has_value());
  CHECK(*row == 1);
  CHECK(is_chein_valid(1, cubic.image(1) - x(ctx, 1)));

  // x1 + [x2,x1] moves row 1 but is invalid: d/dx1 = -y2.
  std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
  imgs[0] = imgs[0] + bracket(x(ctx, 2), x(ctx, 1));
  Endomorphism bad = Endomorphism::of_images(ctx, imgs);
  auto brow = one_row_index(bad);
  REQUIRE(brow.has_value());
  CHECK(*brow == 1);
  CHECK(!is_chein_valid(1, bad.image(1) - x(ctx, 1)));

  // The identity reports a row with payload zero.
  auto irow = one_row_index(Endomorphism::identity(ctx));
  REQUIRE(irow.has_value());
  CHECK(is_chein_valid(*irow, MagnusElement::zero(ctx)));

  // Two moved rows: not one-row.
  std::vector<MagnusElement> imgs2 = Endomorphism::identity(ctx).images();
  imgs2[0] = imgs2[0] + xy(ctx, 2, 3, y(ctx, 2));
  imgs2[1] = imgs2[1] + xy(ctx, 3, 4, y(ctx, 3));
  CHECK(!one_row_index(Endomorphism::of_images(ctx, imgs2)).has_value());
}

TEST_CASE("elementary validity") {
  Context ctx = q4();
  // f = [x2,x3]y1 contains x1 even though d/dx1 vanishes.
  MagnusElement f = xy(ctx, 2, 3, y(ctx, 1));
  CHECK(is_chein_valid(1, f));
  CHECK(!is_elementary_valid(1, f));
  CHECK(is_elementary_valid(1, xy(ctx, 2, 3, y(ctx, 2))));
  CHECK(is_elementary_valid(1, x(ctx, 2) + xy(ctx, 2, 3, y(ctx, 4))));
  CHECK(!is_elementary_valid(1, x(ctx, 1)));
  CHECK_THROWS_AS(
      elementary_map(ctx, 1, Scalar::one(ctx.field), xy(ctx, 2, 3, y(ctx, 1))),
      DomainError);
  CHECK_THROWS_AS(elementary_map(ctx, 1, Scalar::zero(ctx.field),
                                 MagnusElement::zero(ctx)),
                  DomainError);
}

TEST_CASE("endomorphism degrees") {
  Context ctx = q4();
  CHECK(endo_degrees(quadratic_map(ctx)) == DegreePair{2, 2});
  CHECK(endo_degrees(cubic_map(ctx)) == DegreePair{3, 3});
  CHECK(endo_degrees(Endomorphism::identity(ctx)) ==
        DegreePair{kLdegOfZero, kDegOfZero});
  Rng rng(43);
  CHECK(endo_degrees(linear_endomorphism(
            ctx, random_invertible_map(rng, ctx, 4))) ==
        DegreePair{kLdegOfZero, kDegOfZero});
}

TEST_CASE("automorphism agreement between the test and inversion") {
  Rng rng(47);
  Context ctx(4, FieldSpec::prime_field(5));
  for (int k = 0; k < 12; ++k) {
    Endomorphism phi = random_endomorphism(rng, ctx, 3);
    bool aut = is_automorphism(phi);
    bool inverted = true;
    try {
      Endomorphism inv = invert(phi);
      inverted = compose(phi, inv).is_identity();
    } catch (const DomainError&) {
      inverted = false;
    }
    CHECK(aut == inverted);
  }
}
