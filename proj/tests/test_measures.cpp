#include "doctest.h"

#include "ekn/measures.hpp"
#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <random>

using namespace ekn;

namespace {

const CMContext& lem() {
    static CMContext c = fixture("lemniscatic", 256);
    return c;
}

bool same_mod(const Qp& a, const Qp& b, long k) {
    Qp d = a - b;
    return d.is_zero() || d.valuation() >= k;
}

mpz_class ipow(long b, int e) {
    mpz_class r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

// random polynomial of total degree ≤ deg and its Dirac decomposition on [0, deg]²
struct RandomPoly {
    BiSeries<mpq_class> f;
    std::vector<std::pair<std::pair<long, long>, mpz_class>> diracs;
};
RandomPoly random_poly(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<long> c(-3000, 3000);
    RandomPoly r{BiSeries<mpq_class>(mpq_class(0), deg + 1, deg + 1), {}};
    for (long u = 0; u <= deg; ++u)
        for (long v = 0; u + v <= deg; ++v) r.diracs.push_back({{u, v}, mpz_class(c(rng))});
    for (const auto& [uv, w] : r.diracs) {
        auto binom = [](long n, int k) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), n, k);
            return b;
        };
        for (int i = 0; i <= uv.first; ++i)
            for (int j = 0; j <= uv.second; ++j) r.f(i, j) += mpq_class(w * binom(uv.first, i) * binom(uv.second, j));
    }
    return r;
}

}  // namespace

TEST_CASE("moments of Dirac measures") {
    MeasureSeries d = dirac(5, 8, 3, 7, 8);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 8; ++j) CHECK(same_mod(moments(d, i, j).value, Qp::from_q(mpq_class(ipow(3, i) * ipow(7, j)), 5, 8), 8));
    MeasureSeries o = dirac(5, 8, 0, 0, 6);
    CHECK(moments(o, 0, 0).value.equals(Qp::from_q(1, 5, 8)));
    CHECK(moments(o, 2, 1).value.is_zero());
    CHECK(moments(o, 0, 3).omega_power == 0);
    // negative support: (1+S)^{-2} is still a measure
    MeasureSeries n = dirac(5, 8, -2, 4, 6);
    CHECK(same_mod(moments(n, 3, 1).value, Qp::from_q(-32, 5, 8), 8));
    CHECK_THROWS_AS(moments(o, 4, 3), MomentRangeError);
}

TEST_CASE("dictionary is linear") {
    std::mt19937_64 rng(3);
    RandomPoly r = random_poly(rng, 5);
    MeasureSeries ms = from_rational(r.f, 7, 10, true);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 5; ++j) {
            mpz_class s = 0;
            for (const auto& [uv, w] : r.diracs) s += w * ipow(uv.first, i) * ipow(uv.second, j);
            CHECK(same_mod(moments(ms, i, j).value, Qp::from_q(mpq_class(s), 7, 10), 10));
        }
}

TEST_CASE("restriction of a single Dirac") {
    for (long u : {0L, 1L, 4L, 5L, 6L, 10L}) {
        MeasureSeries d = dirac(5, 8, u, 2, 12);
        REQUIRE(d.polynomial);
        MeasureSeries r = restrict_to_units(d, UnitVariable::S);
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; i + j <= 12; ++j)
                CHECK(same_mod(r.series(i, j), u % 5 ? d.series(i, j) : Qp::from_q(0, 5, 8), 6));
        MeasureSeries b = restrict_to_units(d, UnitVariable::Both);
        CHECK(same_mod(moments(b, 1, 1).value, Qp::from_q(u % 5 ? 2 * u : 0, 5, 8), 6));
    }
}

TEST_CASE("restriction: idempotence and Dirac brute force on degree 6") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        RandomPoly r = random_poly(rng, 6);
        MeasureSeries ms = from_rational(r.f, 5, 8, true);
        for (UnitVariable w : {UnitVariable::S, UnitVariable::T, UnitVariable::Both}) {
            MeasureSeries once = restrict_to_units(ms, w);
            MeasureSeries twice = restrict_to_units(once, w);
            MeasureSeries brute = restrict_dirac_combination(r.diracs, 5, 8, 6, w);
            for (int i = 0; i <= 6; ++i)
                for (int j = 0; i + j <= 6; ++j) {
                    CHECK(same_mod(once.series(i, j), twice.series(i, j), 3));
                    CHECK(same_mod(once.series(i, j), brute.series(i, j), 3));
                }
        }
    }
}

TEST_CASE("restriction of Diracs over all support classes mod p^2") {
    const long p = 5;
    int bad = 0;
    for (long u = 0; u < p * p; ++u)
        for (long v = 0; v < p * p; ++v) {
            MeasureSeries r = restrict_to_units(dirac(p, 6, u, v, static_cast<int>(std::max(u + v, 3L))), UnitVariable::Both, 3);
            bool unit = u % p && v % p;
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; i + j <= 3; ++j) {
                    mpz_class want = unit ? ipow(u, i) * ipow(v, j) : mpz_class(0);
                    if (!same_mod(moments(r, i, j).value, Qp::from_q(mpq_class(want), p, 6), 3)) ++bad;
                }
        }
    CHECK(bad == 0);
}

TEST_CASE("rescaling the second variable") {
    MeasureSeries d = dirac(7, 8, 2, 3, 10);
    MeasureSeries r = rescale_second(d, 4);
    for (int j = 0; j <= 4; ++j)
        CHECK(same_mod(moments(r, 1, j).value, Qp::from_q(mpq_class(2 * ipow(12, j)), 7, 8), 7));
}

TEST_CASE("torsion of the lemniscatic formal group at 5") {
    FormalCurve fc = formal_expansions(lem(), 64);
    auto G = FormalGroup::elliptic(fc, 5, 6);
    auto R = G->torsion_ring();
    // [i](t) = i·t, so the factor is x^4 + c with v(c) = 1
    REQUIRE(R->degree() == 4);
    for (int k = 1; k < 4; ++k) CHECK(Qp::from_q(R->modulus[k], 5, 8).valuation() >= 6);
    CHECK(Qp::from_q(R->modulus[0], 5, 8).valuation() == 1);
    // [5](τ) = 0 in Z_5[τ]
    PowerSeries<Qp> five = G->multiplication(5, 48);
    PAdicExt tau = PAdicExt::gen(R), acc(R), tp = PAdicExt::from_qp(R, Qp::from_q(1, 5, 10));
    for (int k = 0; k < 48; ++k, tp *= tau) acc += tp * five.coeff(k);
    CHECK(acc.valuation() >= 4 * 6);
}

TEST_CASE("two-variable interpolation at a 2-torsion point") {
    // moment (b−1, a) of μ_{ω1/2, 0} = Ω_p^{a+b−1}·(−1)^{a+b−1}(b−1)!·e*_{a,b}/A^a
    TorsionPoint h = TorsionPoint::make(mpq_class(1, 2), 0), o = TorsionPoint::make(0, 0);
    DamerellReport rep = damerell_check("lemniscatic", h, o, 2, 3, DamerellOptions{});
    FormalCurve fc = formal_expansions(lem(), 10);
    PadicEmbedding e = PadicEmbedding::make(1, 13, 8);
    MeasureSeries mu = mu_z0w0(lem(), fc, e, h, o, 6);
    int checked = 0;
    for (const DamerellCell& c : rep.cells) {
        auto v = c.guess.in_field(1);
        REQUIRE(v);
        int a = c.a, b = c.b;
        PadicMoment m = moments(mu, b - 1, a);
        CHECK(m.omega_power == a + b - 1);
        mpq_class k = (a + b - 1) % 2 ? -1 : 1;
        for (int f = 2; f < b; ++f) k *= f;
        CHECK(same_mod(m.value, e(*v * k), 6));
        ++checked;
    }
    CHECK(checked == 9);
}

TEST_CASE("interchanging the translation points swaps the series") {
    FormalCurve fc = formal_expansions(lem(), 10);
    PadicEmbedding e = PadicEmbedding::make(1, 13, 8);
    TorsionPoint z = TorsionPoint::make(mpq_class(1, 2), 0), w = TorsionPoint::make(0, mpq_class(1, 2));
    MeasureSeries a = mu_z0w0(lem(), fc, e, z, w, 6), b = mu_z0w0(lem(), fc, e, w, z, 6);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j) CHECK(a.series(i, j).equals(b.series(j, i)));
}

TEST_CASE("fixture Hecke character") {
    HeckeCharacter chi = fixture_character(lem());
    CHECK(chi.w_f_check);
    CHECK(chi.conductor_norm() == 8);
    CHECK(chi.residues.size() == 4);
    for (const QuadElem& v : chi.values) {
        TorsionPoint z = character_point(lem(), chi, v);
        TorsionPoint d = z + TorsionPoint::make(mpq_class(-1, 4), mpq_class(1, 4));
        CHECK(d.c1.get_den() == 1);
        CHECK(d.c2.get_den() == 1);
    }
    // φ of a prime above 5 is ≡ 1 mod 𝔣
    QuadElem pi = chi.phi(QuadElem(1, 1, 2));
    CHECK(chi.in_conductor(pi - QuadElem(1, 1)));
    CHECK(pi.norm() == 5);

    // A = N(𝔣)·|Ω|²·√d_K/(2π)
    const ComplexBall& W = lem().Omega;
    ComplexBall A2 = (W * W.conj()).mul_q(8 * 2) / ComplexBall::pi(256).mul_2si(1);
    CHECK(A2.overlaps(lem().lattice.A));

    HeckeLValues h = hecke_L_rhs(lem(), chi, 0, 3, 256);
    REQUIRE(h.lhs_computed);
    CHECK(h.lhs.overlaps(h.rhs));
    HeckeLValues h1 = hecke_L_rhs(lem(), chi, 1, 4, 256);
    CHECK(h1.lhs.overlaps(h1.rhs));
    CHECK_FALSE(hecke_L_rhs(lem(), chi, 1, 1, 256).lhs_computed);
}

TEST_CASE("Yager interpolation at low precision") {
    HeckeCharacter chi = fixture_character(lem());
    FormalCurve fc = formal_expansions(lem(), 64);
    PadicEmbedding e = PadicEmbedding::make(1, 5, 6);
    YagerReport r = yager_check(lem(), fc, e, chi, 0, 1, 20);
    CHECK(r.precision >= 3);
    CHECK(r.agree_mod == r.precision);
    CHECK(r.omega_power == 0);
    CHECK(r.algebraic == QuadElem(1, 2, 2));
}
