#include "metalie/random.hpp"

#include "metalie/errors.hpp"

namespace metalie {

int Rng::range(int lo, int hi) {
  if (hi < lo) throw DomainError("empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

Scalar Rng::scalar(const FieldSpec& f) {
  if (f.is_rationals()) {
    int num = range(-6, 6);
    int den = range(1, 4);
    return Scalar::of_fraction(f, num, den);
  }
  return Scalar::of_residue(f, next() % f.modulus());
}

Scalar Rng::nonzero_scalar(const FieldSpec& f) {
  for (;;) {
    Scalar s = scalar(f);
    if (!s.is_zero()) return s;
  }
}

Monomial random_monomial(Rng& rng, const Context& ctx, int min_deg,
                         int max_deg) {
  int d = rng.range(min_deg, max_deg);
  std::vector<int> exps(static_cast<size_t>(ctx.n), 0);
  for (int k = 0; k < d; ++k)
    exps[static_cast<size_t>(rng.range(0, ctx.n - 1))] += 1;
  return Monomial::of_exponents(std::move(exps));
}

Poly random_poly(Rng& rng, const Context& ctx, int max_terms, int min_deg,
                 int max_deg) {
  for (;;) {
    int terms = rng.range(1, max_terms);
    Poly p = Poly::zero(ctx);
    for (int t = 0; t < terms; ++t)
      p = p + Poly::of_monomial(ctx, random_monomial(rng, ctx, min_deg, max_deg),
                                rng.nonzero_scalar(ctx.field));
    if (!p.is_zero()) return p;
  }
}

MagnusElement random_derived_element(Rng& rng, const Context& ctx, int terms,
                                     int min_deg, int max_deg) {
  if (min_deg < 2) throw DomainError("derived elements have degree >= 2");
  for (;;) {
    MagnusElement m = MagnusElement::zero(ctx);
    for (int t = 0; t < terms; ++t) {
      int i = rng.range(1, ctx.n - 1);
      int j = rng.range(i + 1, ctx.n);
      Poly coeff =
          random_poly(rng, ctx, 2, min_deg - 2, max_deg - 2);
      m = m + module_scale(bracket(MagnusElement::generator(ctx, i),
                                   MagnusElement::generator(ctx, j)),
                           coeff);
    }
    if (m.is_zero()) continue;
    DegreePair d = element_degrees(m);
    if (d.ldeg >= min_deg && d.deg <= max_deg) return m;
  }
}

MagnusElement random_derived_element_exact_ldeg(Rng& rng, const Context& ctx,
                                                int terms, int ldeg,
                                                int max_deg) {
  for (;;) {
    MagnusElement m = random_derived_element(rng, ctx, terms, ldeg, max_deg);
    if (element_degrees(m).ldeg == ldeg) return m;
    // Force a term of the exact lower degree and retry the check.
    int i = rng.range(1, ctx.n - 1);
    int j = rng.range(i + 1, ctx.n);
    MagnusElement extra = module_scale(
        bracket(MagnusElement::generator(ctx, i),
                MagnusElement::generator(ctx, j)),
        Poly::of_monomial(ctx, random_monomial(rng, ctx, ldeg - 2, ldeg - 2),
                          rng.nonzero_scalar(ctx.field)));
    m = m + extra;
    if (!m.is_zero() && element_degrees(m).ldeg == ldeg &&
        element_degrees(m).deg <= max_deg)
      return m;
  }
}

MagnusElement random_element(Rng& rng, const Context& ctx, int terms,
                             int max_deg) {
  MagnusElement m = random_derived_element(rng, ctx, terms, 2, max_deg);
  for (int i = 1; i <= ctx.n; ++i)
    if (rng.coin())
      m = m + MagnusElement::generator(ctx, i).scaled(rng.scalar(ctx.field));
  return m;
}

Endomorphism random_endomorphism(Rng& rng, const Context& ctx, int max_deg) {
  std::vector<MagnusElement> images;
  images.reserve(static_cast<size_t>(ctx.n));
  for (int i = 1; i <= ctx.n; ++i) {
    MagnusElement img = MagnusElement::zero(ctx);
    for (int k = 1; k <= ctx.n; ++k) {
      Scalar c = k == i ? rng.nonzero_scalar(ctx.field) : rng.scalar(ctx.field);
      if (!c.is_zero())
        img = img + MagnusElement::generator(ctx, k).scaled(c);
    }
    if (rng.coin())
      img = img + random_derived_element(rng, ctx, 1, 2, max_deg);
    images.push_back(std::move(img));
  }
  return Endomorphism::of_images(ctx, std::move(images));
}

Letter random_elementary_letter(Rng& rng, const Context& ctx, int max_deg) {
  int row = rng.range(1, ctx.n);
  // A bracket pair avoiding the row plus a coefficient free of y_row.
  std::vector<int> others;
  for (int k = 1; k <= ctx.n; ++k)
    if (k != row) others.push_back(k);
  int s = others[static_cast<size_t>(rng.range(0, ctx.n - 2))];
  int t = s;
  while (t == s) t = others[static_cast<size_t>(rng.range(0, ctx.n - 2))];

  MagnusElement f = MagnusElement::zero(ctx);
  if (rng.coin()) {
    Poly coeff = Poly::zero(ctx);
    for (int tries = 0; tries < 8 && coeff.is_zero(); ++tries) {
      Poly cand = random_poly(rng, ctx, 2, 0, std::max(0, max_deg - 2));
      coeff = Poly::zero(ctx);
      for (const auto& [mono, c] : cand.terms())
        if (mono.exponent(row) == 0)
          coeff = coeff + Poly::of_monomial(ctx, mono, c);
    }
    if (!coeff.is_zero())
      f = f + module_scale(bracket(MagnusElement::generator(ctx, s),
                                   MagnusElement::generator(ctx, t)),
                           coeff);
  }
  if (rng.coin()) {
    int other = others[static_cast<size_t>(rng.range(0, ctx.n - 2))];
    f = f + MagnusElement::generator(ctx, other).scaled(rng.scalar(ctx.field));
  }
  return Letter::elementary(ctx, row, rng.nonzero_scalar(ctx.field),
                            std::move(f));
}

LinearMap random_invertible_map(Rng& rng, const Context& ctx, int operations) {
  ScalarMatrix m = ScalarMatrix::identity(ctx.n, ctx.field);
  for (int k = 0; k < operations; ++k) {
    int kind = rng.range(0, 2);
    if (kind == 0) {
      int i = rng.range(1, ctx.n);
      LinearMap d = LinearMap::dilation(ctx.n, ctx.field, i,
                                        rng.nonzero_scalar(ctx.field));
      m = (LinearMap(m) * d).matrix();
    } else if (kind == 1) {
      int i = rng.range(1, ctx.n);
      int j = i;
      while (j == i) j = rng.range(1, ctx.n);
      LinearMap t =
          LinearMap::transvection(ctx.n, ctx.field, i, j, rng.scalar(ctx.field));
      m = (LinearMap(m) * t).matrix();
    } else {
      int i = rng.range(1, ctx.n);
      int j = i;
      while (j == i) j = rng.range(1, ctx.n);
      m = (LinearMap(m) * LinearMap::transposition(ctx.n, ctx.field, i, j))
              .matrix();
    }
  }
  return LinearMap(std::move(m));
}

}  // namespace metalie
