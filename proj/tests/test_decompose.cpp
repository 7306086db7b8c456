#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metalie/decompose.hpp"
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
Monomial mono4(int a, int b, int c, int d) {
  return Monomial::of_exponents({a, b, c, d});
}

bool all_tame(const GeneratorWord& w) {
  for (const Letter& l : w.letters())
    if (!l.is_tame_kind()) return false;
  return true;
}

}  // namespace

TEST_CASE("a monomial without y1 is a single elementary letter") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  GeneratorWord w = decompose_chein_monomial(Scalar::one(ctx.field),
                                             mono4(0, 1, 0, 1), hc);
  CHECK(w.size() == 1);
  CHECK(w.letters()[0].kind() == LetterKind::elementary);
  CHECK(verify_word(w, chein_map(y(ctx, 2) * y(ctx, 4))));
}

TEST_CASE("the mixed monomial case gives a four-letter commutator word") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  GeneratorWord w = decompose_chein_monomial(Scalar::one(ctx.field),
                                             mono4(1, 1, 0, 0), hc);
  CHECK(w.size() == 4);
  CHECK(all_tame(w));
  CHECK(verify_word(w, chein_map(y(ctx, 1) * y(ctx, 2))));
}

TEST_CASE("tail-exponent branches over the rationals at n = 4") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  DecomposeStats stats;
  // i_n >= 2 splits by the Jacobi identity.
  GeneratorWord w1 = decompose_chein_monomial(Scalar::of_int(ctx.field, 2),
                                              mono4(1, 0, 0, 2), hc, &stats);
  CHECK(verify_word(w1, chein_map((y(ctx, 1) * y(ctx, 4).pow(2))
                                      .scaled(Scalar::of_int(ctx.field, 2)))));
  CHECK(all_tame(w1));
  // i_n = 1 needs the rescaling route.
  GeneratorWord w2 = decompose_chein_monomial(Scalar::one(ctx.field),
                                              mono4(2, 0, 0, 1), hc);
  CHECK(verify_word(w2, chein_map(y(ctx, 1).pow(2) * y(ctx, 4))));
  CHECK(all_tame(w2));
  CHECK(stats.max_depth >= 1);
}

TEST_CASE("pure powers decompose through the shear commutator") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  for (int s = 2; s <= 4; ++s) {
    GeneratorWord w = decompose_chein_monomial(Scalar::one(ctx.field),
                                               mono4(s, 0, 0, 0), hc);
    CHECK(all_tame(w));
    CHECK(verify_word(w, chein_map(y(ctx, 1).pow(s))));
  }
}

TEST_CASE("the n >= 5 route avoids division by 3") {
  Context ctx(5, FieldSpec::prime_field(3));
  HypothesisContext hc{ctx};
  GeneratorWord w = decompose_chein_monomial(
      Scalar::one(ctx.field), Monomial::of_exponents({2, 0, 0, 0, 1}), hc);
  CHECK(all_tame(w));
  CHECK(verify_word(w, chein_map(y(ctx, 1).pow(2) * y(ctx, 5))));
  GeneratorWord w2 = decompose_chein_monomial(
      Scalar::one(ctx.field), Monomial::of_exponents({3, 0, 0, 0, 0}), hc);
  CHECK(verify_word(w2, chein_map(y(ctx, 1).pow(3))));
}

TEST_CASE("hypothesis gating of chein monomials") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  // Lower degree below 2.
  CHECK_THROWS_AS(decompose_chein_monomial(Scalar::one(ctx.field),
                                           mono4(1, 0, 0, 0), hc),
                  HypothesisError);
  // The blocked branch at n = 4 over GF(3).
  Context g3(4, FieldSpec::prime_field(3));
  HypothesisContext hc3{g3};
  CHECK_THROWS_AS(decompose_chein_monomial(Scalar::one(g3.field),
                                           mono4(1, 0, 0, 1), hc3),
                  HypothesisError);
  CHECK_THROWS_AS(decompose_chein_monomial(Scalar::one(g3.field),
                                           mono4(2, 0, 0, 0), hc3),
                  HypothesisError);
  // Mixed monomials still work there.
  GeneratorWord w = decompose_chein_monomial(Scalar::one(g3.field),
                                             mono4(1, 2, 0, 0), hc3);
  CHECK(verify_word(w, chein_map(y(g3, 1) * y(g3, 2).pow(2))));
}

TEST_CASE("one-row decomposition: elementary payloads and obstructions") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  // f = [x2,x3](y2 + y4^2) is y1-free: tame, one letter after merging.
  MagnusElement f = xy(ctx, 2, 3, y(ctx, 2) + y(ctx, 4).pow(2));
  GeneratorWord w = decompose_one_row(1, f, Mode::tame, hc);
  CHECK(all_tame(w));
  std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
  imgs[0] = imgs[0] + f;
  CHECK(verify_word(w, Endomorphism::of_images(ctx, imgs)));

  // The irreducible cubic: blocked in tame mode, a single residue letter in
  // almost tame mode.
  MagnusElement cubic_f = xy(ctx, 2, 3, y(ctx, 1));
  CHECK_THROWS_AS(decompose_one_row(1, cubic_f, Mode::tame, hc),
                  HypothesisError);
  GeneratorWord wa = decompose_one_row(1, cubic_f, Mode::almost_tame, hc);
  CHECK(wa.size() == 1);
  CHECK(wa.letters()[0].kind() == LetterKind::cubic_residue);
  CHECK(word_evaluate(wa) == cubic_map(ctx));
}

TEST_CASE("one-row decomposition transports other rows") {
  Context ctx(5, FieldSpec::rationals());
  HypothesisContext hc{ctx};
  MagnusElement f = xy(ctx, 1, 2, y(ctx, 3) * y(ctx, 3)) +
                    xy(ctx, 2, 5, y(ctx, 3) * y(ctx, 4));
  REQUIRE(is_chein_valid(4, f));
  GeneratorWord w = decompose_one_row(4, f, Mode::tame, hc);
  std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
  imgs[3] = imgs[3] + f;
  CHECK(verify_word(w, Endomorphism::of_images(ctx, imgs)));
  CHECK(all_tame(w));
}

TEST_CASE("one-row maps mixing all three monomial classes") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  MagnusElement f =
      xy(ctx, 2, 3,
         y(ctx, 2) + y(ctx, 1).scaled(Scalar::of_int(ctx.field, 2)) +
             y(ctx, 1) * y(ctx, 4)) +
      xy(ctx, 3, 4, y(ctx, 1).scaled(Scalar::of_int(ctx.field, -1)));
  GeneratorWord w = decompose_one_row(1, f, Mode::almost_tame, hc);
  std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
  imgs[0] = imgs[0] + f;
  CHECK(verify_word(w, Endomorphism::of_images(ctx, imgs)));
  int residues = 0;
  for (const Letter& l : w.letters())
    if (!l.is_tame_kind()) {
      CHECK(l.kind() == LetterKind::cubic_residue);
      ++residues;
    }
  CHECK(residues == 2);
  CHECK_THROWS_AS(decompose_one_row(1, f, Mode::tame, hc), HypothesisError);
}

TEST_CASE("invalid one-row payloads and inadmissible contexts") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  CHECK_THROWS_AS(
      decompose_one_row(1, bracket(x(ctx, 2), x(ctx, 1)), Mode::tame, hc),
      DomainError);
  Context g3(4, FieldSpec::prime_field(3));
  HypothesisContext hc3{g3};
  CHECK_THROWS_AS(decompose_one_row(1, xy(g3, 2, 3, y(g3, 2)), Mode::tame,
                                    hc3),
                  HypothesisError);
  CHECK(hc3.almost_tame_admissible());
  CHECK(!hc3.tame_admissible());
}

TEST_CASE("D decompositions") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  CHECK(decompose_d(Poly::zero(ctx), Mode::tame, hc).empty());

  Poly a = y(ctx, 3) * y(ctx, 4);
  GeneratorWord w = decompose_d(a, Mode::tame, hc);
  CHECK(all_tame(w));
  CHECK(verify_word(w, d_map(a)));

  // ldeg 1 is almost tame only.
  CHECK_THROWS_AS(decompose_d(y(ctx, 1), Mode::tame, hc), HypothesisError);
  GeneratorWord wa = decompose_d(y(ctx, 1), Mode::almost_tame, hc);
  CHECK(verify_word(wa, d_map(y(ctx, 1))));

  // Pure K[y1,y2] monomials in tame mode.
  Poly b = y(ctx, 1) * y(ctx, 2);
  GeneratorWord wb = decompose_d(b, Mode::tame, hc);
  CHECK(all_tame(wb));
  CHECK(verify_word(wb, d_map(b)));
  Poly c = y(ctx, 2).pow(2);
  GeneratorWord wc = decompose_d(c, Mode::tame, hc);
  CHECK(verify_word(wc, d_map(c)));
}

TEST_CASE("exponential decompositions") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  CHECK(decompose_exponential(MagnusElement::zero(ctx), Mode::tame, hc)
            .empty());

  MagnusElement m = xy(ctx, 1, 2, y(ctx, 3) * y(ctx, 4));
  GeneratorWord w = decompose_exponential(m, Mode::tame, hc);
  CHECK(all_tame(w));
  CHECK(verify_word(w, exponential_map(m)));

  MagnusElement low = xy(ctx, 1, 2, y(ctx, 3));
  CHECK_THROWS_AS(decompose_exponential(low, Mode::tame, hc),
                  HypothesisError);
  GeneratorWord wa = decompose_exponential(low, Mode::almost_tame, hc);
  CHECK(verify_word(wa, exponential_map(low)));

  // A piece away from the (1,2) position exercises the transport.
  MagnusElement shifted = xy(ctx, 2, 4, y(ctx, 1) * y(ctx, 3));
  GeneratorWord ws = decompose_exponential(shifted, Mode::tame, hc);
  CHECK(verify_word(ws, exponential_map(shifted)));
}

TEST_CASE("A(h, g) reduction") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  // g = 0 is a single chein letter.
  Poly h = y(ctx, 3);
  GeneratorWord w0 = reduce_a(h, Poly::zero(ctx), hc);
  CHECK(w0.size() == 1);
  CHECK(w0.letters()[0].kind() == LetterKind::chein);
  CHECK(verify_word(w0, a_map(h, Poly::zero(ctx))));

  // Constant g: one shift then a chein letter.
  GeneratorWord w1 = reduce_a(Poly::constant(ctx, 1),
                              Poly::constant(ctx, 2), hc);
  CHECK(verify_word(w1, a_map(Poly::constant(ctx, 1), Poly::constant(ctx, 2))));

  // The diagonal path.
  GeneratorWord w2 = reduce_a(y(ctx, 3), y(ctx, 1), hc);
  CHECK(verify_word(w2, a_map(y(ctx, 3), y(ctx, 1))));

  // A tail monomial.
  GeneratorWord w3 = reduce_a(y(ctx, 2), y(ctx, 4) * y(ctx, 1), hc);
  CHECK(verify_word(w3, a_map(y(ctx, 2), y(ctx, 4) * y(ctx, 1))));

  // Everything at once, over a small prime field.
  Context g2(4, FieldSpec::prime_field(2));
  HypothesisContext hc2{g2};
  Poly g = Poly::constant(g2, 1) + y(g2, 1) + y(g2, 3) + y(g2, 4) * y(g2, 2);
  GeneratorWord w4 = reduce_a(y(g2, 2) + y(g2, 4), g, hc2);
  CHECK(verify_word(w4, a_map(y(g2, 2) + y(g2, 4), g)));
}

TEST_CASE("B(h, f, g) decomposition") {
  Context ctx = q4();
  HypothesisContext hc{ctx};
  CHECK(decompose_b(y(ctx, 1), Poly::zero(ctx), Poly::zero(ctx), hc).empty());

  Poly one = Poly::constant(ctx, 1);
  GeneratorWord w = decompose_b(one, one, one, hc);
  CHECK(verify_word(w, b_map(one, one, one)));

  Context c5(5, FieldSpec::rationals());
  HypothesisContext hc5{c5};
  GeneratorWord w5 = decompose_b(y(c5, 2), y(c5, 1), y(c5, 3), hc5);
  CHECK(verify_word(w5, b_map(y(c5, 2), y(c5, 1), y(c5, 3))));
}

TEST_CASE("the B conjugator is the unique working three-cycle") {
  // Exhaustively check the six permutations of {x1,x2,x3} against the
  // asserted A-form identity for psi2; exactly one works, the three-cycle
  // 1 -> 3, 2 -> 1, 3 -> 2 fixed in the engine.
  Context ctx = q4();
  Poly h = y(ctx, 2);
  Poly f = y(ctx, 1);
  Poly g = y(ctx, 3) + Poly::constant(ctx, 1);
  Poly hg = h * g;

  std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
  imgs[1] = imgs[1] - xy(ctx, 2, 4, h * f * g) + xy(ctx, 3, 4, h * f * f * g);
  imgs[2] = imgs[2] - xy(ctx, 2, 4, hg) + xy(ctx, 3, 4, h * f * g);
  Endomorphism psi2 = Endomorphism::of_images(ctx, imgs);

  int working = 0;
  std::vector<int> winner;
  std::vector<std::vector<int>> perms = {
      {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  for (const auto& p : perms) {
    std::vector<int> full = {p[0], p[1], p[2], 4};
    Endomorphism perm_endo = linear_endomorphism(
        ctx, LinearMap::permutation(4, ctx.field, full));
    std::vector<Poly> images;
    for (int i = 1; i <= 4; ++i)
      images.push_back(y(ctx, full[static_cast<size_t>(i - 1)]));
    Poly hg_p = hg.substitute(images);
    Poly f_p = f.substitute(images);
    if (conjugate(psi2, perm_endo) == a_map(hg_p, -f_p)) {
      ++working;
      winner = p;
    }
  }
  CHECK(working == 1);
  CHECK(winner == std::vector<int>{3, 1, 2});
}

TEST_CASE("linear factorization into elementary letters") {
  Context ctx = q4();
  CHECK(linear_to_elementary(ctx, LinearMap::identity(4, ctx.field)).empty());

  GeneratorWord sw = permutation_to_elementary(ctx, 1, 2);
  CHECK(sw.size() == 4);
  CHECK(verify_word(sw, transposition_map(ctx, 1, 2)));

  Rng rng(61);
  Context g5(4, FieldSpec::prime_field(5));
  for (int k = 0; k < 10; ++k) {
    LinearMap m = random_invertible_map(rng, g5, 6);
    GeneratorWord w = linear_to_elementary(g5, m);
    CHECK(verify_word(w, linear_endomorphism(g5, m)));
    for (const Letter& l : w.letters())
      CHECK(l.kind() == LetterKind::elementary);
  }
  ScalarMatrix singular(4, ctx.field);
  CHECK_THROWS_AS(linear_to_elementary(ctx, LinearMap(singular)), DomainError);
}

TEST_CASE("randomized certification across families") {
  Rng rng(67);
  std::vector<Context> ctxs = {Context(4, FieldSpec::rationals()),
                               Context(5, FieldSpec::prime_field(3))};
  for (const Context& ctx : ctxs) {
    HypothesisContext hc{ctx};
    for (int k = 0; k < 4; ++k) {
      Poly a = random_poly(rng, ctx, 2, 2, 4);
      CHECK(verify_word(decompose_d(a, Mode::tame, hc), d_map(a)));
      MagnusElement m = random_derived_element(rng, ctx, 1, 4, 6);
      CHECK(verify_word(decompose_exponential(m, Mode::tame, hc),
                        exponential_map(m)));
      Poly h = random_poly(rng, ctx, 2, 0, 2);
      Poly g = random_poly(rng, ctx, 2, 0, 2);
      CHECK(verify_word(reduce_a(h, g, hc), a_map(h, g)));
    }
  }
}
