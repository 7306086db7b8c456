#pragma once

#include <cstdint>
#include <random>

#include "metalie/element.hpp"
#include "metalie/endo.hpp"
#include "metalie/word.hpp"

namespace metalie {

/// Deterministic random source: same seed, same stream, on every platform
/// (the standard distributions are implementation-defined, so sampling is
/// done by hand).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform integer in [lo, hi].
  int range(int lo, int hi);
  bool coin() { return (next() & 1) != 0; }
  Scalar scalar(const FieldSpec& f);
  Scalar nonzero_scalar(const FieldSpec& f);

private:
  std::mt19937_64 gen_;
};

/// Random monomial with total degree in [min_deg, max_deg].
Monomial random_monomial(Rng& rng, const Context& ctx, int min_deg,
                         int max_deg);

/// Random nonzero polynomial with 1..max_terms terms, each of total degree
/// in [min_deg, max_deg].
Poly random_poly(Rng& rng, const Context& ctx, int max_terms, int min_deg,
                 int max_deg);

/// Random element of the derived subalgebra whose generator-degree lies in
/// [min_deg, max_deg] (min_deg >= 2); retries until the lower degree is at
/// least min_deg.
MagnusElement random_derived_element(Rng& rng, const Context& ctx, int terms,
                                     int min_deg, int max_deg);

/// Like random_derived_element but with exact lower degree min_deg.
MagnusElement random_derived_element_exact_ldeg(Rng& rng, const Context& ctx,
                                                int terms, int ldeg,
                                                int max_deg);

/// Random element with a random linear part added.
MagnusElement random_element(Rng& rng, const Context& ctx, int terms,
                             int max_deg);

/// Random endomorphism x_i -> (random linear part) + (random derived part of
/// degree <= max_deg); not necessarily an automorphism.
Endomorphism random_endomorphism(Rng& rng, const Context& ctx, int max_deg);

/// Random valid elementary letter with payload degree <= max_deg.
Letter random_elementary_letter(Rng& rng, const Context& ctx, int max_deg);

/// Random invertible matrix (built from random row operations).
LinearMap random_invertible_map(Rng& rng, const Context& ctx, int operations);

}  // namespace metalie
