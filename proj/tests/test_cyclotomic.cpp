#include "doctest.h"

#include "ekn/cyclotomic.hpp"

#include <algorithm>

using namespace ekn;

TEST_CASE("expansion at the origin is Bernoulli") {
    CycExpansion g = g_expand(CycPoint::make(0), 12);
    CHECK(g.delta);
    CHECK(g.coeffs[0].is_zero());
    for (int b = 2; b <= 12; ++b) {
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), b);
        CHECK(g.coeffs[b - 1] == CycElem(1, bernoulli(b) / mpq_class(fact)));
    }
    CHECK(g.e_star(2) == CycElem(1, mpq_class(-1, 12)));
    CHECK(bernoulli(12) == mpq_class(-691, 2730));
}

TEST_CASE("exact expansion agrees with the lattice sum") {
    for (mpq_class q : {mpq_class(0), mpq_class(1, 3), mpq_class(1, 4), mpq_class(2, 5), mpq_class(7, 8)}) {
        CycPoint z0 = CycPoint::make(q);
        CycExpansion g = g_expand(z0, 6);
        CHECK(g.delta == (q == 0));
        for (int b = 1; b <= 6; ++b) {
            ComplexBall direct = e_star_direct(z0, b, 20, 256);
            ComplexBall exact = g.e_star(b).embed(256);
            CHECK(direct.overlaps(exact));
            CHECK(direct.rad().exponent() < -200);
        }
    }
}

TEST_CASE("the lattice sum is insensitive to the direct range") {
    CycPoint z0 = CycPoint::make(mpq_class(1, 5));
    ComplexBall a = e_star_direct(z0, 3, 0, 200), b = e_star_direct(z0, 3, 40, 200);
    CHECK(a.overlaps(b));
}

TEST_CASE("Hurwitz sums") {
    // ζ(2) = π²/6
    ComplexBall pi = ComplexBall::pi(300);
    CHECK(hurwitz_sum(2, 1, 300).overlaps(pi.sqr().mul_q(mpq_class(1, 6))));
    // -ψ(1) = γ, -ψ(1/2) = γ + 2 log 2
    ComplexBall d = hurwitz_sum(1, mpq_class(1, 2), 300) - hurwitz_sum(1, 1, 300);
    CHECK(d.overlaps(log_pos(ComplexBall::from_si(4, 300))));
}

TEST_CASE("measure coefficients and moments") {
    for (mpq_class q : {mpq_class(1, 3), mpq_class(1, 4), mpq_class(3, 5)}) {
        CycPoint z0 = CycPoint::make(q);
        for (const auto& m : cyc_moment_checks(z0, 8)) CHECK_MESSAGE(m.ok, "b = " << m.b);
        CycMeasure mu = cyc_measure_series(z0, 10, 7);
        CHECK(mu.worst_p_denominator == 0);
    }
    // f = p: the series is not p-integral in this basis
    CycMeasure mu = cyc_measure_series(CycPoint::make(mpq_class(1, 5)), 10, 5);
    CHECK(mu.worst_p_denominator > 0);
    CHECK_THROWS_AS(cyc_moment_checks(CycPoint::make(0), 4), PreconditionError);
}

TEST_CASE("Dirichlet characters") {
    for (int f : {3, 4, 5, 8, 12}) {
        auto chars = dirichlet_characters(f);
        CHECK(static_cast<int>(chars.size()) == euler_phi(f));
        // orthogonality: Σ_n χ(n) = 0 unless χ trivial
        for (const auto& c : chars) {
            CycElem s(1, 0);
            for (int n = 0; n < f; ++n) s += c.value(n);
            bool trivial = std::all_of(c.exps.begin(), c.exps.end(), [](int e) { return e == 0; });
            CHECK(s == CycElem(1, trivial ? euler_phi(f) : 0));
        }
    }
    auto c8 = dirichlet_characters(8);
    std::vector<int> cond;
    for (const auto& c : c8) cond.push_back(c.conductor);
    std::sort(cond.begin(), cond.end());
    CHECK(cond == std::vector<int>{1, 4, 8, 8});
}

TEST_CASE("Dirichlet L-values") {
    auto c4 = dirichlet_characters(4);
    const DirichletChar& odd = c4[1];
    CHECK_FALSE(odd.is_even());
    auto r = dirichlet_L_check(odd, 1, 256);
    CHECK(r.ok);
    // L(χ_4, 1) = π/4
    CHECK(r.lhs.overlaps(ComplexBall::pi(256).mul_2si(-2)));
    CHECK_THROWS_AS(dirichlet_L_check(odd, 2, 256), PreconditionError);
    for (int f : {3, 5, 8}) {
        for (const auto& c : dirichlet_characters(f)) {
            for (int b = 1; b <= 4; ++b) {
                if (c.is_even() != (b % 2 == 0)) continue;
                auto x = dirichlet_L_check(c, b, 200);
                CHECK_MESSAGE(x.ok, c.label() << " b=" << b);
            }
        }
    }
}
