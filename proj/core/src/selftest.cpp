#include "metalie/selftest.hpp"

#include <functional>
#include <sstream>

#include "metalie/decompose.hpp"
#include "metalie/parse.hpp"
#include "metalie/print.hpp"
#include "metalie/random.hpp"

namespace metalie {

namespace {

std::vector<Context> standard_contexts() {
  return {
      Context(4, FieldSpec::rationals()),
      Context(5, FieldSpec::prime_field(2)),
      Context(6, FieldSpec::prime_field(3)),
      Context(4, FieldSpec::prime_field(5)),
      Context(5, FieldSpec::rationals()),
      Context(6, FieldSpec::prime_field(5)),
      Context(5, FieldSpec::prime_field(3)),
      Context(4, FieldSpec::prime_field(2)),
  };
}

std::vector<Context> tame_contexts() {
  return {
      Context(4, FieldSpec::rationals()),
      Context(5, FieldSpec::prime_field(3)),
      Context(4, FieldSpec::prime_field(5)),
      Context(5, FieldSpec::prime_field(2)),
  };
}

std::vector<Context> almost_contexts() {
  return {
      Context(4, FieldSpec::rationals()),
      Context(4, FieldSpec::prime_field(3)),
      Context(5, FieldSpec::prime_field(2)),
      Context(5, FieldSpec::prime_field(3)),
  };
}

struct Check {
  bool ok = true;
  std::string detail;
  long count = 0;

  void fail(const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  }
  void require(bool cond, const std::string& msg) {
    ++count;
    if (!cond) fail(msg);
  }
};

template <typename F>
bool throws_hypothesis(F&& f) {
  try {
    f();
  } catch (const HypothesisError&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

template <typename F>
bool throws_domain(F&& f) {
  try {
    f();
  } catch (const DomainError&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

// 1. anticommutativity, Jacobi, metabelian identity
CriterionResult criterion_algebra_laws(std::uint64_t seed) {
  Rng rng(seed ^ 0x11);
  Check c;
  auto ctxs = standard_contexts();
  for (int k = 0; k < 500 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    MagnusElement u = random_element(rng, ctx, 2, 6);
    MagnusElement v = random_element(rng, ctx, 2, 6);
    MagnusElement w = random_element(rng, ctx, 1, 5);
    c.require((bracket(u, v) + bracket(v, u)).is_zero(),
              "anticommutativity failed");
    MagnusElement jac = bracket(bracket(u, v), w) +
                        bracket(bracket(v, w), u) +
                        bracket(bracket(w, u), v);
    c.require(jac.is_zero(), "Jacobi identity failed");
    MagnusElement m1 = random_derived_element(rng, ctx, 1, 2, 5);
    MagnusElement m2 = random_derived_element(rng, ctx, 1, 2, 5);
    c.require(bracket(m1, m2).is_zero(), "metabelian identity failed");
  }
  return {1, "algebra laws", c.ok,
          c.ok ? "500 randomized instances" : c.detail};
}

// 2. derivative column relation and lifting
CriterionResult criterion_lifting(std::uint64_t seed) {
  Rng rng(seed ^ 0x22);
  Check c;
  auto ctxs = standard_contexts();
  for (int k = 0; k < 200 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    MagnusElement f = random_derived_element(rng, ctx, 2, 2, 6);
    JacobianColumn col = fox_derivatives(f);
    c.require(col.is_derivative_of_commutator(),
              "Y * derivative column nonzero");
    c.require(lift_column(col) == f, "lift_column round trip failed");
  }
  for (int k = 0; k < 50 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    JacobianColumn col{ctx, {}};
    for (int i = 0; i < ctx.n; ++i)
      col.entries.push_back(random_poly(rng, ctx, 2, 0, 3));
    if (col.is_derivative_of_commutator())
      col.entries[0] = col.entries[0] + Poly::constant(ctx, 1);
    c.require(throws_domain([&] { (void)lift_column(col); }),
              "a non-derivative column was accepted");
  }
  return {2, "derivative lifting", c.ok,
          c.ok ? "200 round trips, 50 rejections" : c.detail};
}

// 3. right-normed basis round trip and the Jacobi rewriting identity
CriterionResult criterion_basis(std::uint64_t seed) {
  Rng rng(seed ^ 0x33);
  Check c;
  auto ctxs = standard_contexts();
  for (int k = 0; k < 200 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    MagnusElement f = random_element(rng, ctx, 2, 6);
    c.require(eval_basis(to_basis(f)) == f, "basis round trip failed");
  }
  for (int n : {4, 5}) {
    Context ctx(n, FieldSpec::rationals());
    Poly y1 = Poly::variable(ctx, 1);
    Poly y2 = Poly::variable(ctx, 2);
    Poly y3 = Poly::variable(ctx, 3);
    Poly yn = Poly::variable(ctx, n);
    auto pt = [&](int s, int t, const Poly& a) {
      return module_scale(bracket(MagnusElement::generator(ctx, s),
                                  MagnusElement::generator(ctx, t)),
                          a);
    };
    for (int i1 = 1; i1 <= 3 && c.ok; ++i1)
      for (int in = 1; in <= 3 && c.ok; ++in) {
        Poly head = y1.pow(i1);
        MagnusElement lhs = pt(2, 3, head * yn.pow(in));
        MagnusElement rhs = pt(2, n, head * y3 * yn.pow(in - 1)) +
                            pt(n, 3, head * y2 * yn.pow(in - 1));
        c.require(lhs == rhs, "Jacobi rewriting identity failed in M");
        c.require(to_basis(lhs) == to_basis(rhs),
                  "Jacobi rewriting identity failed in normal form");
      }
  }
  return {3, "basis round trip", c.ok,
          c.ok ? "200 round trips, 18 rewriting identities" : c.detail};
}

// 4. J(phi psi) = J(phi) J(psi)^phi
CriterionResult criterion_chain_rule(std::uint64_t seed) {
  Rng rng(seed ^ 0x44);
  Check c;
  auto ctxs = standard_contexts();
  for (int k = 0; k < 100 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    Endomorphism phi = random_endomorphism(rng, ctx, 3);
    Endomorphism psi = random_endomorphism(rng, ctx, 3);
    PolyMatrix lhs = jacobian(compose(phi, psi));
    PolyMatrix rhs =
        jacobian(phi) * jacobian(psi).substitute(phi.induced_variable_images());
    c.require(lhs == rhs, "chain rule failed");
  }
  return {4, "chain rule", c.ok, c.ok ? "100 random pairs" : c.detail};
}

// 5. inversion of elementary products; rejection of non-automorphisms
CriterionResult criterion_inversion(std::uint64_t seed) {
  Rng rng(seed ^ 0x55);
  Check c;
  auto ctxs = standard_contexts();
  for (int k = 0; k < 100 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    int letters = ctx.n >= 6 ? rng.range(1, 5) : rng.range(1, 8);
    Endomorphism phi = Endomorphism::identity(ctx);
    for (int l = 0; l < letters; ++l)
      phi = compose(phi, random_elementary_letter(rng, ctx, 3).endomorphism());
    c.require(is_automorphism(phi), "elementary product not recognized");
    Endomorphism inv = invert(phi);
    c.require(compose(phi, inv).is_identity() &&
                  compose(inv, phi).is_identity(),
              "inverse fails to double-compose to the identity");
  }
  for (int k = 0; k < 20 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    // x_row -> x_row + [x_other, x_row] a has a non-unit Jacobian
    // determinant.
    int row = rng.range(1, ctx.n);
    int other = row == 1 ? 2 : 1;
    Poly a = random_poly(rng, ctx, 1, 0, 2);
    std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
    imgs[static_cast<size_t>(row - 1)] =
        imgs[static_cast<size_t>(row - 1)] +
        module_scale(bracket(MagnusElement::generator(ctx, other),
                             MagnusElement::generator(ctx, row)),
                     a);
    Endomorphism bad = Endomorphism::of_images(ctx, std::move(imgs));
    c.require(!is_automorphism(bad), "non-automorphism accepted");
    c.require(throws_domain([&] { (void)invert(bad); }),
              "inverting a non-automorphism did not fail");
  }
  return {5, "inversion", c.ok,
          c.ok ? "100 inversions, 20 rejections" : c.detail};
}

// 6. every small chein monomial decomposes tamely; the blocked branch raises
CriterionResult criterion_chein_monomials(std::uint64_t seed) {
  (void)seed;
  Check c;
  auto run_all = [&](const Context& ctx) {
    HypothesisContext hc{ctx};
    std::function<void(std::vector<int>&, int, int)> enumerate =
        [&](std::vector<int>& exps, int var, int remaining) {
          if (!c.ok) return;
          if (var == ctx.n) {
            exps[static_cast<size_t>(var - 1)] = remaining;
            Monomial e = Monomial::of_exponents(exps);
            if (e.total_degree() >= 2) {
              GeneratorWord w = decompose_chein_monomial(
                  Scalar::one(ctx.field), e, hc);
              for (const Letter& l : w.letters())
                c.require(l.is_tame_kind(), "non-tame letter emitted");
              Poly a = Poly::of_monomial(ctx, e, Scalar::one(ctx.field));
              c.require(verify_word(w, chein_map(a)),
                        "word does not recompose to C(" + a.str() + ")");
            }
            return;
          }
          for (int d = 0; d <= remaining; ++d) {
            exps[static_cast<size_t>(var - 1)] = d;
            enumerate(exps, var + 1, remaining - d);
            if (!c.ok) return;
          }
          exps[static_cast<size_t>(var - 1)] = 0;
        };
    for (int deg = 2; deg <= 5 && c.ok; ++deg) {
      std::vector<int> exps(static_cast<size_t>(ctx.n), 0);
      enumerate(exps, 1, deg);
    }
  };
  run_all(Context(4, FieldSpec::rationals()));
  run_all(Context(5, FieldSpec::prime_field(3)));

  // n = 4 over GF(3): exactly the monomials that need the rescaling branch
  // must raise; the others must still certify.
  Context g3(4, FieldSpec::prime_field(3));
  HypothesisContext hc3{g3};
  auto mono = [&](int e1, int e2, int e3, int e4) {
    return Monomial::of_exponents({e1, e2, e3, e4});
  };
  for (int i1 = 1; i1 <= 4 && c.ok; ++i1)
    c.require(throws_hypothesis([&] {
                (void)decompose_chein_monomial(Scalar::one(g3.field),
                                               mono(i1, 0, 0, 1), hc3);
              }),
              "blocked branch did not raise at n=4 over GF(3)");
  for (int s = 2; s <= 5 && c.ok; ++s)
    c.require(throws_hypothesis([&] {
                (void)decompose_chein_monomial(Scalar::one(g3.field),
                                               mono(s, 0, 0, 0), hc3);
              }),
              "pure power did not raise at n=4 over GF(3)");
  if (c.ok) {
    for (const Monomial& e :
         {mono(1, 1, 0, 0), mono(2, 0, 1, 0), mono(1, 0, 0, 2),
          mono(0, 0, 0, 3), mono(2, 1, 0, 2)}) {
      GeneratorWord w =
          decompose_chein_monomial(Scalar::one(g3.field), e, hc3);
      c.require(verify_word(w, chein_map(Poly::of_monomial(
                                   g3, e, Scalar::one(g3.field)))),
                "admissible monomial failed at n=4 over GF(3)");
    }
  }
  return {6, "chein monomial decomposition", c.ok,
          c.ok ? "all monomials of degree 2..5 at n=4/Q and n=5/GF(3)"
               : c.detail};
}

// 7. exponential decompositions
CriterionResult criterion_exponential(std::uint64_t seed) {
  Rng rng(seed ^ 0x77);
  Check c;
  auto tame_ctxs = tame_contexts();
  auto almost_ctxs = almost_contexts();
  for (int k = 0; k < 50 && c.ok; ++k) {
    const Context& ctx = tame_ctxs[static_cast<size_t>(k) % tame_ctxs.size()];
    HypothesisContext hc{ctx};
    MagnusElement m = random_derived_element(rng, ctx, 1, 4, 6);
    GeneratorWord w = decompose_exponential(m, Mode::tame, hc);
    c.require(verify_word(w, exponential_map(m)),
              "tame exponential word failed");
    for (const Letter& l : w.letters())
      c.require(l.is_tame_kind(), "tame exponential emitted non-tame letter");
  }
  for (int k = 0; k < 50 && c.ok; ++k) {
    const Context& ctx =
        almost_ctxs[static_cast<size_t>(k) % almost_ctxs.size()];
    HypothesisContext hc{ctx};
    MagnusElement m = random_derived_element_exact_ldeg(rng, ctx, 1, 3, 5);
    GeneratorWord w = decompose_exponential(m, Mode::almost_tame, hc);
    c.require(verify_word(w, exponential_map(m)),
              "almost tame exponential word failed");
    HypothesisContext tame_hc{tame_ctxs[0]};
    if (ctx == tame_ctxs[0])
      c.require(throws_hypothesis([&] {
                  (void)decompose_exponential(m, Mode::tame, tame_hc);
                }),
                "tame mode accepted lower degree 3");
  }
  return {7, "exponential decomposition", c.ok,
          c.ok ? "50 tame, 50 almost tame" : c.detail};
}

// 8. D(a) decompositions
CriterionResult criterion_d_maps(std::uint64_t seed) {
  Rng rng(seed ^ 0x88);
  Check c;
  auto tame_ctxs = tame_contexts();
  auto almost_ctxs = almost_contexts();
  for (int k = 0; k < 50 && c.ok; ++k) {
    const Context& ctx = tame_ctxs[static_cast<size_t>(k) % tame_ctxs.size()];
    HypothesisContext hc{ctx};
    Poly a = random_poly(rng, ctx, 2, 2, 4);
    GeneratorWord w = decompose_d(a, Mode::tame, hc);
    c.require(verify_word(w, d_map(a)), "tame D word failed");
    for (const Letter& l : w.letters())
      c.require(l.is_tame_kind(), "tame D emitted a non-tame letter");
  }
  for (int k = 0; k < 50 && c.ok; ++k) {
    const Context& ctx =
        almost_ctxs[static_cast<size_t>(k) % almost_ctxs.size()];
    HypothesisContext hc{ctx};
    Poly a = random_poly(rng, ctx, 2, 1, 1);
    GeneratorWord w = decompose_d(a, Mode::almost_tame, hc);
    c.require(verify_word(w, d_map(a)), "almost tame D word failed");
  }
  return {8, "double-row decomposition", c.ok,
          c.ok ? "50 tame, 50 almost tame" : c.detail};
}

// 9. A(h,g) reduction and B(h,f,g)
CriterionResult criterion_a_b_maps(std::uint64_t seed) {
  Rng rng(seed ^ 0x99);
  Check c;
  std::vector<Context> ctxs = {
      Context(4, FieldSpec::rationals()),
      Context(5, FieldSpec::rationals()),
      Context(4, FieldSpec::prime_field(3)),
      Context(5, FieldSpec::prime_field(3)),
  };
  for (int k = 0; k < 50 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    HypothesisContext hc{ctx};
    Poly h = random_poly(rng, ctx, 2, 0, 3);
    Poly g = k % 7 == 0 ? Poly::zero(ctx) : random_poly(rng, ctx, 2, 0, 3);
    GeneratorWord w = reduce_a(h, g, hc);
    c.require(verify_word(w, a_map(h, g)), "A(h,g) word failed");
  }
  for (int k = 0; k < 25 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    HypothesisContext hc{ctx};
    Poly h = random_poly(rng, ctx, 1, 0, 2);
    Poly f = random_poly(rng, ctx, 1, 0, 2);
    Poly g = random_poly(rng, ctx, 1, 0, 2);
    GeneratorWord w = decompose_b(h, f, g, hc);
    c.require(verify_word(w, b_map(h, f, g)), "B(h,f,g) word failed");
  }
  return {9, "two-variable families", c.ok,
          c.ok ? "50 A-reductions, 25 B-decompositions" : c.detail};
}

// 10. one-row maps with mixed monomial classes in almost tame mode
CriterionResult criterion_one_row(std::uint64_t seed) {
  Rng rng(seed ^ 0xaa);
  Check c;
  auto ctxs = tame_contexts();  // admissible so tame sub-words exist
  for (int k = 0; k < 25 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    HypothesisContext hc{ctx};
    Poly y1 = Poly::variable(ctx, 1);
    MagnusElement f = MagnusElement::zero(ctx);
    int pairs = rng.range(1, 2);
    for (int p = 0; p < pairs; ++p) {
      int s = rng.range(2, ctx.n - 1);
      int t = rng.range(s + 1, ctx.n);
      Poly coeff = Poly::zero(ctx);
      // one y1-free monomial
      for (int tries = 0; tries < 16; ++tries) {
        Monomial m = random_monomial(rng, ctx, 0, 3);
        if (m.exponent(1) == 0) {
          coeff = coeff + Poly::of_monomial(ctx, m, rng.nonzero_scalar(ctx.field));
          break;
        }
      }
      // one higher-degree y1 monomial
      coeff = coeff + y1 * random_poly(rng, ctx, 1, 1, 2);
      // sometimes the linear obstruction
      if (rng.coin()) {
        coeff = coeff + y1.scaled(rng.nonzero_scalar(ctx.field));
      }
      f = f + module_scale(bracket(MagnusElement::generator(ctx, s),
                                   MagnusElement::generator(ctx, t)),
                           coeff);
    }
    int row = rng.range(1, ctx.n);
    if (!is_chein_valid(row, f)) {
      row = 1;
      if (!is_chein_valid(1, f)) continue;
    }
    GeneratorWord w = decompose_one_row(row, f, Mode::almost_tame, hc);
    std::vector<MagnusElement> imgs = Endomorphism::identity(ctx).images();
    imgs[static_cast<size_t>(row - 1)] =
        imgs[static_cast<size_t>(row - 1)] + f;
    c.require(verify_word(w, Endomorphism::of_images(ctx, imgs)),
              "one-row word failed");
    std::vector<std::pair<int, int>> seen;
    for (const Letter& l : w.letters()) {
      if (l.is_tame_kind()) continue;
      c.require(l.kind() == LetterKind::cubic_residue,
                "non-tame letter is not a cubic residue");
      if (l.kind() == LetterKind::cubic_residue) {
        std::pair<int, int> key{l.bracket_s(), l.bracket_t()};
        for (const auto& other : seen)
          c.require(!(other == key), "duplicate cubic residue position");
        seen.push_back(key);
      }
    }
  }
  return {10, "one-row residues", c.ok,
          c.ok ? "25 mixed one-row maps" : c.detail};
}

// 11. print/parse round trips (the CLI subprocess check lives in the
// acceptance harness)
CriterionResult criterion_round_trip(std::uint64_t seed) {
  Rng rng(seed ^ 0xbb);
  Check c;
  auto ctxs = standard_contexts();
  for (int k = 0; k < 100 && c.ok; ++k) {
    const Context& ctx = ctxs[static_cast<size_t>(k) % ctxs.size()];
    switch (k % 4) {
      case 0: {
        Poly p = random_poly(rng, ctx, 4, 0, 5);
        c.require(parse_poly(ctx, p.str()) == p, "polynomial round trip");
        break;
      }
      case 1: {
        MagnusElement e = random_element(rng, ctx, 2, 5);
        c.require(parse_element(ctx, to_text(e)) == e, "element round trip");
        break;
      }
      case 2: {
        Endomorphism phi = random_endomorphism(rng, ctx, 3);
        c.require(parse_endomorphism(ctx, to_text(phi)) == phi,
                  "endomorphism round trip");
        break;
      }
      case 3: {
        GeneratorWord w(ctx, Alphabet::almost_tame);
        w.append(random_elementary_letter(rng, ctx, 3));
        w.append(Letter::cubic_residue(ctx, 1, 2, 3,
                                       rng.nonzero_scalar(ctx.field)));
        w.append(Letter::linear(ctx, random_invertible_map(rng, ctx, 3)));
        w.append(Letter::chein(
            ctx, 2,
            module_scale(bracket(MagnusElement::generator(ctx, 1),
                                 MagnusElement::generator(ctx, 3)),
                         random_poly(rng, ctx, 2, 0, 3))));
        GeneratorWord back = parse_word(serialize_word(w));
        c.require(back == w, "word round trip");
        break;
      }
    }
  }
  return {11, "print/parse round trip", c.ok,
          c.ok ? "100 random values" : c.detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_algebra_laws(seed));
  out.push_back(criterion_lifting(seed));
  out.push_back(criterion_basis(seed));
  out.push_back(criterion_chain_rule(seed));
  out.push_back(criterion_inversion(seed));
  out.push_back(criterion_chein_monomials(seed));
  out.push_back(criterion_exponential(seed));
  out.push_back(criterion_d_maps(seed));
  out.push_back(criterion_a_b_maps(seed));
  out.push_back(criterion_one_row(seed));
  out.push_back(criterion_round_trip(seed));
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace metalie
