#include "doctest.h"

#include "ekn/theta.hpp"

#include <random>

using namespace ekn;

namespace {

TorsionPoint tp(long a, long b, long c, long d) { return TorsionPoint::make(mpq_class(a, b), mpq_class(c, d)); }

const CMContext& lem() {
    static CMContext c = fixture("lemniscatic", 160);
    return c;
}
const CMContext& d3() {
    static CMContext c = fixture("d3", 160);
    return c;
}

// σ from the q-product, with the quasi-period from E2: independent of the ℘ recurrence
ComplexBall sigma_q_product(const Lattice& L, const ComplexBall& z, int terms) {
    mpfr_prec_t p = z.prec();
    ComplexBall twopii = ComplexBall::pi(p).mul_2si(1) * ComplexBall::i(p);
    ComplexBall tau = L.omega2 / L.omega1;
    ComplexBall q = exp(twopii * tau);
    ComplexBall u = exp(twopii * z / L.omega1), uh = exp(twopii * z / L.omega1.mul_2si(1));
    ComplexBall E2 = ComplexBall::from_si(1, p), qn = ComplexBall::from_si(1, p);
    ComplexBall prod = ComplexBall::from_si(1, p);
    ComplexBall one = ComplexBall::from_si(1, p);
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        long s1 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s1 += d;
        E2 -= qn.mul_q(24 * s1);
        prod *= (one - qn * u) * (one - qn / u) / (one - qn).sqr();
    }
    ComplexBall pi = ComplexBall::pi(p);
    ComplexBall eta1 = pi.sqr() * E2 / (L.omega1.mul_q(3));
    return L.omega1 / twopii * exp(eta1 * z.sqr() / L.omega1.mul_2si(1)) * (uh - uh.inv()) * prod;
}

}  // namespace

TEST_CASE("pairing identities") {
    const Lattice& L = lem().lattice;
    ComplexBall g1 = L.omega1.mul_q(3) + L.omega2.mul_q(-2), g2 = L.omega1.mul_q(-1) + L.omega2.mul_q(5);
    CHECK(pairing(g1, g2, L.A).overlaps(ComplexBall::from_si(1, 160)));
    for (int n : {2, 3, 4, 5}) {
        ComplexBall v = pairing(L.omega1.mul_q(mpq_class(1, n)), L.omega2, L.A);
        CHECK(v.overlaps(exp_2pi_i_q(mpq_class(-1, n), 160)));
        CHECK(pairing(tp(1, n, 0, 1), tp(0, 1, 1, 1), 160).overlaps(v));
    }
    ComplexBall z = ComplexBall::from_q(mpq_class(3, 10), mpq_class(-7, 5), 160);
    CHECK(pairing(z, z, L.A).contains(1));
}

TEST_CASE("fixture invariants recovered from lattice sums") {
    // g2 = 60·Σ'γ^-4, g3 = 140·Σ'γ^-6
    TorsionPoint o = tp(0, 1, 0, 1);
    CHECK(e_star_ewald(0, 4, o, o, lem().lattice).mul_q(60).contains(4));
    CHECK(e_star_ewald(0, 6, o, o, lem().lattice).contains(0));
    CHECK(e_star_ewald(0, 4, o, o, d3().lattice).contains(0));
    CHECK(e_star_ewald(0, 6, o, o, d3().lattice).mul_q(140).contains(4));
    CHECK(lem().Omega.overlaps(lem().lattice.omega1 / ComplexBall::from_q(2, 2, 160)));
}

TEST_CASE("direct sums: nesting, periodicity and agreement with theta splitting") {
    const Lattice& L = lem().lattice;
    TorsionPoint z = tp(1, 2, 0, 1), w = tp(1, 4, 0, 1);
    ComplexBall r1 = K_direct(1, z, w, 3, 30, L), r2 = K_direct(1, z, w, 3, 60, L);
    CHECK(r1.overlaps(r2));
    CHECK(mag_le(r2.rad(), r1.rad()));
    CHECK(K_direct(1, z, w + tp(1, 1, 2, 1), 3, 30, L).overlaps(r1));
    CHECK_THROWS_AS(K_ewald(1, z, w, 3, L), PreconditionError);
    CHECK_THROWS_AS(K_direct(2, z, w, 2, 30, L), PreconditionError);
    ComplexBall d = K_direct(4, z, w, 4, 80, L), e = K_ewald(4, z, w, 4, L);
    CHECK(d.overlaps(e));
    CHECK(e.rad().exponent() < -140);
}

TEST_CASE("differential equation in w by finite differences") {
    // ∂_w K_a = (z̄ K_a − K_{a+1})/A
    const Lattice& L = lem().lattice;
    TorsionPoint z = tp(1, 3, 1, 5), w = tp(1, 4, 2, 7);
    int a = 4, s = 3;
    mpq_class h(1, 1000000);
    auto K = [&](const TorsionPoint& ww) { return K_ewald(a, z, ww, s, L); };
    // ω2 = iω1 here, so steps along ω1 and ω2 are the real and imaginary directions
    ComplexBall dx = (K(w + TorsionPoint::make(h, 0)) - K(w + TorsionPoint::make(-h, 0))) / L.omega1.mul_q(2 * h);
    ComplexBall dy = (K(w + TorsionPoint::make(0, h)) - K(w + TorsionPoint::make(0, -h))) / L.omega1.mul_q(2 * h);
    ComplexBall dw = (dx - ComplexBall::i(160) * dy).mul_2si(-1);
    ComplexBall rhs = (z.value(L).conj() * K(w) - K_ewald(a + 1, z, w, s, L)) / L.A;
    CHECK((dw - rhs).abs_upper().to_d() < 1e-9);
}

TEST_CASE("sigma series heads") {
    auto s = sigma_series(lem(), 9);
    CHECK(s.coeff(1) == QuadElem(1, 1));
    CHECK(s.coeff(5) == QuadElem(1, mpq_class(-1, 60)));
    CHECK(s.coeff(7) == QuadElem(1, 0));
    CHECK(s.coeff(9) == QuadElem(1, mpq_class(-1, 10080)));   // −g2²/161280
    for (int k = 0; k < 10; k += 2) CHECK(s.coeff(k).is_zero());
    auto t = sigma_series(d3(), 9);
    CHECK(t.coeff(5).is_zero());
    CHECK(t.coeff(7) == QuadElem(3, mpq_class(-1, 210)));
    CMContext flat = lem();
    flat.g2 = QuadElem(1, 0);
    auto f = sigma_series(flat, 12);
    for (int k = 0; k < 13; ++k) CHECK(f.coeff(k) == QuadElem(1, k == 1 ? 1 : 0));
}

TEST_CASE("sigma series against the q-product") {
    for (const CMContext* c : {&lem(), &d3()}) {
        ComplexBall z = c->lattice.omega1.mul_q(mpq_class(3, 10)) + c->lattice.omega2.mul_q(mpq_class(1, 7));
        ComplexBall a = theta_eval(*c, z, 160), b = sigma_q_product(c->lattice, z, 80);
        CHECK((a - b).abs_upper().to_d() < 1e-40);
        CHECK(a.rad().exponent() < -100);
    }
}

TEST_CASE("theta transformation law") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-50, 50);
    for (const CMContext* c : {&lem(), &d3()}) {
        const Lattice& L = c->lattice;
        for (int trial = 0; trial < 4; ++trial) {
            ComplexBall z = L.omega1.mul_q(mpq_class(d(rng), 100)) + L.omega2.mul_q(mpq_class(d(rng), 100));
            for (auto [m, n] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
                ComplexBall g = L.omega1.mul_q(m) + L.omega2.mul_q(n);
                long alpha = ((m + n + m * n) % 2) ? -1 : 1;
                ComplexBall f = exp((z * g.conj() + (g * g.conj()).mul_2si(-1)) / L.A).mul_q(alpha);
                CHECK(theta_eval(*c, z + g, 160).overlaps(f * theta_eval(*c, z, 160)));
            }
        }
    }
}

TEST_CASE("Kronecker theta series") {
    auto K = kronecker_theta_series(lem(), 6);
    CHECK(K.pole_z == QuadElem(1, 1));
    CHECK(K.pole_w == QuadElem(1, 1));
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
            CHECK(K.regular(i, j) == K.regular(j, i));
            if ((i + j) % 2 == 0) CHECK(K.regular(i, j).is_zero());   // Θ(−z,−w) = −Θ(z,w)
        }
    // [z^3] = (−1)^3 e*_{0,4}(0,0) = −g2/60
    CHECK(K.regular(3, 0) == QuadElem(1, mpq_class(-1, 15)));
    TorsionPoint o = tp(0, 1, 0, 1);
    CHECK(K.regular(3, 0).embed(160).overlaps(-e_star_ewald(0, 4, o, o, lem().lattice)));
}

TEST_CASE("translation formula of the Kronecker theta function") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-45, 45);
    const CMContext& c = lem();
    const Lattice& L = c.lattice;
    for (int trial = 0; trial < 5; ++trial) {
        ComplexBall z = L.omega1.mul_q(mpq_class(d(rng), 100)) + L.omega2.mul_q(mpq_class(d(rng), 100));
        ComplexBall w = L.omega1.mul_q(mpq_class(d(rng), 100)) + L.omega2.mul_q(mpq_class(d(rng), 100));
        ComplexBall g1 = L.omega1, g2 = L.omega2.mul_q(-1) + L.omega1;
        ComplexBall lhs = kronecker_theta_eval(c, z + g1, w + g2, 128);
        ComplexBall f = exp((g1 * g2.conj() + z * g2.conj() + w * g1.conj()) / L.A);
        CHECK(lhs.overlaps(f * kronecker_theta_eval(c, z, w, 128)));
    }
}

TEST_CASE("expansion at torsion points") {
    const CMContext& c = lem();
    TorsionPoint o = tp(0, 1, 0, 1);
    auto E0 = ek_expansion(c, o, o, 5, 5, 160);
    auto K = kronecker_theta_series(c, 4);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(E0.table(i, j).overlaps(K.regular(i, j).embed(160)));
    CHECK(E0.pair_pole_z.overlaps(ComplexBall::from_si(1, 160)));

    // z0 ∈ Γ: residue in z is ⟨w0, z0⟩
    auto E1 = ek_expansion(c, tp(0, 1, 1, 1), tp(1, 2, 0, 1), 4, 3, 160);
    CHECK(E1.delta_z);
    CHECK_FALSE(E1.delta_w);
    CHECK(E1.pair_pole_z.overlaps(pairing(tp(1, 2, 0, 1), tp(0, 1, 1, 1), 160)));
    CHECK(E1.pair_pole_z.overlaps(ComplexBall::from_si(-1, 160)));
    for (const auto& x : E1.mixed) CHECK(x.contains(0));

    auto E2 = ek_expansion(c, tp(1, 2, 0, 1), o, 4, 1, 160);
    CHECK(E2.e_star(0, 3).overlaps(e_star_ewald(0, 3, tp(1, 2, 0, 1), o, c.lattice)));
    CHECK(E2.e_star(0, 3).overlaps(K_direct(3, tp(1, 2, 0, 1), o, 3, 40, c.lattice)));

    CHECK_THROWS_AS(ek_expansion(c, tp(1, 2, 0, 1), tp(1, 2, 0, 1), 3, 3, 160), DiagonalPoleError);
    CHECK_THROWS_AS(ek_expansion(c, tp(1, 4, 1, 4), tp(3, 4, 3, 4), 3, 3, 160), DiagonalPoleError);
}
