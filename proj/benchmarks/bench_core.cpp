#include "ekn/cyclotomic.hpp"
#include "ekn/formal.hpp"
#include "ekn/lll.hpp"
#include "ekn/measures.hpp"
#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <benchmark/benchmark.h>

using namespace ekn;

namespace {

const CMContext& lem(mpfr_prec_t prec) {
    static CMContext c256 = fixture("lemniscatic", 256), c512 = fixture("lemniscatic", 512);
    return prec <= 256 ? c256 : c512;
}

void BM_ek_expansion(benchmark::State& st) {
    const CMContext& c = lem(st.range(1));
    TorsionPoint z0 = TorsionPoint::make(mpq_class(1, 4), 0), w0 = TorsionPoint::make(0, mpq_class(1, 2));
    for (auto _ : st) benchmark::DoNotOptimize(ek_expansion(c, z0, w0, st.range(0), 3, st.range(1)));
}
BENCHMARK(BM_ek_expansion)->Args({4, 256})->Args({8, 256})->Args({8, 512})->Unit(benchmark::kMillisecond);

void BM_e_star_ewald(benchmark::State& st) {
    const CMContext& c = lem(512);
    TorsionPoint z0 = TorsionPoint::make(mpq_class(1, 2), 0), w0 = TorsionPoint::make(0, mpq_class(1, 4));
    for (auto _ : st) benchmark::DoNotOptimize(e_star_ewald(2, 3, z0, w0, c.lattice));
}
BENCHMARK(BM_e_star_ewald)->Unit(benchmark::kMillisecond);

void BM_theta_series(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(theta_series(lem(256), st.range(0)));
}
BENCHMARK(BM_theta_series)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_formal_expansions(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(formal_expansions(lem(256), st.range(0)));
}
BENCHMARK(BM_formal_expansions)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_recognize(benchmark::State& st) {
    ComplexBall x = ComplexBall::from_q(mpq_class(3, 7), mpq_class(-5, 2), 512);
    for (auto _ : st) benchmark::DoNotOptimize(recognize_algebraic(x, st.range(0)));
}
BENCHMARK(BM_recognize)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_lll(benchmark::State& st) {
    int n = st.range(0);
    gmp_randclass r(gmp_randinit_default);
    r.seed(7);
    IntMatrix base(n, std::vector<mpz_class>(n + 1));
    for (int i = 0; i < n; ++i) {
        base[i][i] = 1;
        base[i][n] = r.get_z_bits(200);
    }
    for (auto _ : st) {
        IntMatrix b = base;
        lll_reduce(b);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_lll)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_restrict(benchmark::State& st) {
    MeasureSeries mu;
    for (long u = 0; u < 5; ++u)
        for (long v = 0; v < 5; ++v) {
            MeasureSeries d = dirac(5, 8, u + 5 * v, v + 3 * u, st.range(0));
            mu = u + v == 0 ? d : mu + d;
        }
    for (auto _ : st) benchmark::DoNotOptimize(restrict_to_units(mu, UnitVariable::Both));
}
BENCHMARK(BM_restrict)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_cyclotomic(benchmark::State& st) {
    CycPoint z0 = CycPoint::make(mpq_class(1, 5));
    for (auto _ : st) benchmark::DoNotOptimize(g_expand(z0, st.range(0)));
}
BENCHMARK(BM_cyclotomic)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
