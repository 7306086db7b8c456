#pragma once

#include "metalie/word.hpp"

namespace metalie {

enum class Mode { tame, almost_tame };

/// Rank/characteristic hypotheses under which the decomposition theorems
/// apply.  Tame decompositions need n >= 5, or n = 4 away from
/// characteristic 3; almost-tame decompositions need n >= 4 over any field.
struct HypothesisContext {
  Context ctx;

  bool tame_admissible() const {
    return ctx.n >= 5 || (ctx.n == 4 && ctx.field.characteristic() != 3);
  }
  bool almost_tame_admissible() const { return ctx.n >= 4; }
  bool admits(Mode m) const {
    return m == Mode::tame ? tame_admissible() : almost_tame_admissible();
  }
};

/// Recursion bookkeeping reported by the engine.
struct DecomposeStats {
  int max_depth = 0;
};

/// Tame word for C(gamma * y^exponents) with total degree >= 2.  At n = 4
/// over characteristic 3 the branch that rescales by 3 is inadmissible and
/// raises HypothesisError exactly when a monomial requires it.
GeneratorWord decompose_chein_monomial(const Scalar& gamma,
                                       const Monomial& exponents,
                                       const HypothesisContext& hc,
                                       DecomposeStats* stats = nullptr);

/// Word for the one-row map x_row -> x_row + f (f in the derived part with
/// vanishing row-th Fox derivative).  In tame mode a monomial that is exactly
/// a multiple of y_row is an irreducible cubic obstruction and raises
/// HypothesisError; in almost-tame mode it becomes a cubic_residue letter,
/// merged per bracket position.
GeneratorWord decompose_one_row(int row, const MagnusElement& f, Mode mode,
                                const HypothesisContext& hc,
                                DecomposeStats* stats = nullptr);

/// Word for D(a); tame mode needs ldeg(a) >= 2, almost-tame ldeg(a) >= 1.
GeneratorWord decompose_d(const Poly& a, Mode mode,
                          const HypothesisContext& hc,
                          DecomposeStats* stats = nullptr);

/// Word for exp(ad m); tame mode needs ldeg(m) >= 4, almost-tame >= 3.
GeneratorWord decompose_exponential(const MagnusElement& m, Mode mode,
                                    const HypothesisContext& hc,
                                    DecomposeStats* stats = nullptr);

/// Almost-tame word for A(h, g) over chein and linear letters.
GeneratorWord reduce_a(const Poly& h, const Poly& g,
                       const HypothesisContext& hc,
                       DecomposeStats* stats = nullptr);

/// Almost-tame word for B(h, f, g).
GeneratorWord decompose_b(const Poly& h, const Poly& f, const Poly& g,
                          const HypothesisContext& hc,
                          DecomposeStats* stats = nullptr);

/// Factors an invertible matrix into transvection and dilation letters.
GeneratorWord linear_to_elementary(const Context& ctx, const LinearMap& m);

/// The standard 3-transvection-plus-dilation word for a transposition.
GeneratorWord permutation_to_elementary(const Context& ctx, int s, int t);

}  // namespace metalie
