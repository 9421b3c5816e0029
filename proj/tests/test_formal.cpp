#include "doctest.h"

#include "ekn/formal.hpp"
#include "ekn/theta.hpp"

using namespace ekn;

namespace {

const CMContext& lem() {
    static CMContext c = fixture("lemniscatic", 256);
    return c;
}
const CMContext& d3() {
    static CMContext c = fixture("d3", 256);
    return c;
}

PowerSeries<mpq_class> log1p_scaled(const mpq_class& c, int N) {
    std::vector<mpq_class> g;
    mpq_class ck = c;
    for (int k = 1; k <= N; ++k) {
        g.push_back(mpq_class(k % 2 ? 1 : -1, k) * c / ck);
        ck *= c;
    }
    return PowerSeries<mpq_class>(mpq_class(0), 1, g, N + 1);
}

}  // namespace

TEST_CASE("formal expansions of x, y and the logarithm") {
    FormalCurve flat = formal_expansions(QuadElem(1, 0), QuadElem(1, 0), 20);
    for (int k = 2; k <= 20; ++k) CHECK(flat.lambda.coeff(k).is_zero());
    CHECK(flat.lambda.coeff(1) == QuadElem(1, 1));

    for (const CMContext* c : {&lem(), &d3()}) {
        FormalCurve fc = formal_expansions(*c, 40);
        PowerSeries<QuadElem> r = fc.residual();
        for (int k = r.val(); k < r.order(); ++k) CHECK(r.coeff(k).is_zero());
        CHECK(r.order() >= 34);

        // λ inverts t(z) = −2℘(z)/℘'(z)
        const int M = 30;
        auto cw = weierstrass_c(c->g2, c->g3, M / 2 + 2);
        std::vector<QuadElem> pc(M + 4, QuadElem(c->d));
        pc[0] = QuadElem(c->d, 1);
        for (int k = 2; 2 * k < M + 4; ++k) pc[2 * k] = cw[k];
        PowerSeries<QuadElem> wp(QuadElem(c->d), -2, pc, M);
        PowerSeries<QuadElem> t = (wp * wp.derivative().inv()).scale(QuadElem(c->d, -2));
        PowerSeries<QuadElem> z = fc.lambda.truncate(M).compose(t.normalized());
        for (int k = 0; k < std::min(z.order(), M - 4); ++k) CHECK(z.coeff(k) == QuadElem(c->d, k == 1 ? 1 : 0));
    }

    FormalCurve fl = formal_expansions(lem(), 13);
    CHECK(fl.lambda.coeff(5) == QuadElem(1, mpq_class(-2, 5)));
    CHECK(fl.lambda.coeff(9) == QuadElem(1, mpq_class(2, 3)));
    CHECK(fl.lambda.coeff(13) == QuadElem(1, mpq_class(-20, 13)));
    FormalCurve fd = formal_expansions(d3(), 13);
    CHECK(fd.lambda.coeff(4).is_zero());
    CHECK(fd.lambda.coeff(7) == QuadElem(3, mpq_class(-3, 7)));
}

TEST_CASE("embedding and valuations") {
    PadicEmbedding e = PadicEmbedding::make(1, 13, 10);
    CHECK(e.sqrt_md.residue_mod(1) == 5);
    CHECK(valuation(QuadElem(1, 2, 3), e) == 0);
    CHECK(valuation(QuadElem(1, 2, -3), e) == 1);
    CHECK(valuation(QuadElem(1, 26, -39), e) == 2);
    CHECK(valuation(QuadElem(1, mpq_class(1, 13), 0), e) == -1);
    CHECK(valuation(QuadElem(1, 2, -3).inv(), e) == -1);
    CHECK(PadicEmbedding::make(3, 7, 6).sqrt_md.residue_mod(1) == 2);
    CHECK_THROWS_AS(PadicEmbedding::make(1, 7, 6), std::invalid_argument);
}

TEST_CASE("theta in the formal parameter is integral") {
    for (const CMContext* c : {&lem(), &d3()}) {
        FormalCurve fc = formal_expansions(*c, 43);
        PowerSeries<QuadElem> th = theta_hat(*c, fc, 41).mul_xk(-1);
        for (long p : {5L, 7L, 13L}) {
            if ((c->d == 1 && p == 7) || (c->d == 3 && p == 5)) continue;   // inert
            PadicEmbedding e = PadicEmbedding::make(c->d, p, 8);
            CHECK(scan_integrality(th, 0, 40, e).integral());
            CHECK(valuation(th.coeff(0), e) == 0);
        }
    }
}

TEST_CASE("Kronecker theta in the formal parameters") {
    FormalCurve fc = formal_expansions(lem(), 24);
    BiLaurentSeries<QuadElem> K = kronecker_theta_hat(lem(), fc, 20);
    CHECK(K.pole_z == QuadElem(1, 1));
    CHECK(K.pole_w == QuadElem(1, 1));
    PadicEmbedding e = PadicEmbedding::make(1, 13, 8);
    IntegralityScan s = scan_integrality(K.regular, 20, e);
    CHECK(s.integral());
    CHECK(s.checked == 231);
    // symmetric, and the formal group is odd
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; i + j <= 10; ++j) CHECK(K.regular(i, j) == K.regular(j, i));
}

TEST_CASE("translated theta at a 2-torsion point") {
    FormalCurve fc = formal_expansions(lem(), 14);
    TorsionPoint h = TorsionPoint::make(mpq_class(1, 2), 0), o = TorsionPoint::make(0, 0);
    TranslatedThetaHat T = translated_theta_hat(lem(), fc, h, o, 10, 13);
    CHECK(T.pole_s.is_zero());
    CHECK(T.pole_t == QuadElem(1, 1));
    CHECK(scan_integrality(T.series, 10, PadicEmbedding::make(1, 13, 8)).integral());
    CHECK(T.series(0, 1) == QuadElem(1, mpq_class(-1, 2)));
    CHECK(T.series(1, 0) == QuadElem(1, -1));
    CHECK(T.series(3, 0) == QuadElem(1, mpq_class(-2, 3)));
    CHECK_THROWS_AS(translated_theta_hat(lem(), fc, h, o, 10, 2), PreconditionError);
}

TEST_CASE("period normalisation for the multiplicative group") {
    PadicPeriod P = solve_omega_p(log1p_scaled(1, 60), 5, 6, 60);
    CHECK(P.in_Zp);
    CHECK(P.omega.equals(Qp::from_q(1, 5, 6)));
    // the valid Ω form a coset of Z_p^×: the least-residue choice is again 1
    PadicPeriod Q = solve_omega_p(log1p_scaled(7, 30), 5, 6, 30);
    CHECK(Q.omega.equals(Qp::from_q(1, 5, 6)));
    // a non-unit rescaling has no solution
    CHECK_THROWS_AS(solve_omega_p(log1p_scaled(1, 30).map([](const mpq_class& x) { return x / 5; }), 5, 4, 30),
                    OmegaNotInZp);
}

TEST_CASE("period of the lemniscatic formal group at 13") {
    FormalCurve fc = formal_expansions(lem(), 170);
    PadicEmbedding e = PadicEmbedding::make(1, 13, 8);
    CHECK_THROWS_AS(solve_omega_p(fc, e, 4, 13), OmegaNotInZp);
    CHECK(count_points(lem().g2, lem().g3, e) == 8);
    PadicPeriod P = frobenius_period(fc, e, 8, 170);
    CHECK_FALSE(P.in_Zp);
    CHECK(P.a_p == 6);
    CHECK(P.alpha.residue_mod(1) == 6);
    CHECK(alpha_from_logarithm(fc, e, 2).equals(P.alpha.with_abs_prec(2)));
    // α² − a_p α + p = 0
    Qp a = P.alpha;
    CHECK((a * a - a * Qp::from_q(6, 13, 8) + Qp::from_q(13, 13, 8)).is_zero());
}

TEST_CASE("eta and iota in Q[Omega, 1/Omega]") {
    for (const CMContext* c : {&lem(), &d3()}) {
        FormalCurve fc = formal_expansions(*c, 24);
        PowerSeries<OmegaPoly> eta = eta_symbolic(fc, 20), iota = iota_symbolic(fc, 20);
        PowerSeries<OmegaPoly> id = iota.compose(eta);
        for (int k = 0; k < std::min(id.order(), 20); ++k) CHECK(id.coeff(k) == OmegaPoly(k == 1 ? 1 : 0));
        CHECK(eta.coeff(1) == OmegaPoly::omega(-1));
        // (1+η)·d/dη = Ω·d/dz in the coordinate z = λ(t)
        PowerSeries<OmegaPoly> lam = to_omega(to_rational(fc.lambda.truncate(21)));
        PowerSeries<OmegaPoly> lhs = eta.derivative().scale(OmegaPoly::omega(1));
        PowerSeries<OmegaPoly> rhs = (eta + PowerSeries<OmegaPoly>::constant(OmegaPoly(1), eta.order())) * lam.derivative();
        PowerSeries<OmegaPoly> d = lhs - rhs;
        for (int k = 0; k < d.order(); ++k) CHECK(d.coeff(k) == OmegaPoly());
    }
}
