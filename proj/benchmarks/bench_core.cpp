#include <benchmark/benchmark.h>

#include "metalie/decompose.hpp"
#include "metalie/random.hpp"

using namespace metalie;

namespace {

Context bench_ctx() { return Context(5, FieldSpec::rationals()); }

void BM_PolyMultiply(benchmark::State& state) {
  Context ctx = bench_ctx();
  Rng rng(1);
  Poly a = random_poly(rng, ctx, 12, 0, 6);
  Poly b = random_poly(rng, ctx, 12, 0, 6);
  for (auto _ : state) {
    Poly p = a * b;
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PolyMultiply);

void BM_Compose(benchmark::State& state) {
  Context ctx = bench_ctx();
  Rng rng(2);
  Endomorphism phi = random_endomorphism(rng, ctx, 3);
  Endomorphism psi = random_endomorphism(rng, ctx, 3);
  for (auto _ : state) {
    Endomorphism r = compose(phi, psi);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Compose);

void BM_JacobianDeterminant(benchmark::State& state) {
  Context ctx = bench_ctx();
  Rng rng(3);
  Endomorphism phi = Endomorphism::identity(ctx);
  for (int k = 0; k < 4; ++k)
    phi = compose(phi, random_elementary_letter(rng, ctx, 3).endomorphism());
  PolyMatrix j = jacobian(phi);
  for (auto _ : state) {
    Poly det = j.determinant();
    benchmark::DoNotOptimize(det);
  }
}
BENCHMARK(BM_JacobianDeterminant);

void BM_LiftColumn(benchmark::State& state) {
  Context ctx = bench_ctx();
  Rng rng(4);
  MagnusElement f = random_derived_element(rng, ctx, 3, 2, 6);
  JacobianColumn col = fox_derivatives(f);
  for (auto _ : state) {
    MagnusElement g = lift_column(col);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_LiftColumn);

void BM_Invert(benchmark::State& state) {
  Context ctx = bench_ctx();
  Rng rng(5);
  Endomorphism phi = Endomorphism::identity(ctx);
  for (int k = 0; k < 5; ++k)
    phi = compose(phi, random_elementary_letter(rng, ctx, 3).endomorphism());
  for (auto _ : state) {
    Endomorphism inv = invert(phi);
    benchmark::DoNotOptimize(inv);
  }
}
BENCHMARK(BM_Invert);

void BM_DecomposeCheinMonomial(benchmark::State& state) {
  Context ctx(4, FieldSpec::rationals());
  HypothesisContext hc{ctx};
  Monomial e = Monomial::of_exponents({2, 0, 0, 1});
  Scalar one = Scalar::one(ctx.field);
  for (auto _ : state) {
    GeneratorWord w = decompose_chein_monomial(one, e, hc);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DecomposeCheinMonomial);

void BM_ReduceA(benchmark::State& state) {
  Context ctx(4, FieldSpec::rationals());
  HypothesisContext hc{ctx};
  Poly h = Poly::variable(ctx, 2);
  Poly g = Poly::variable(ctx, 1) + Poly::variable(ctx, 4);
  for (auto _ : state) {
    GeneratorWord w = reduce_a(h, g, hc);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_ReduceA);

}  // namespace

BENCHMARK_MAIN();
