#include "doctest.h"

#include "ekn/ball.hpp"
#include "ekn/biseries.hpp"
#include "ekn/padic.hpp"
#include "ekn/quad.hpp"
#include "ekn/series.hpp"

#include <random>

using namespace ekn;

using QS = PowerSeries<mpq_class>;

static QS qs(std::vector<long> c, int val, int order) {
    std::vector<mpq_class> v(c.begin(), c.end());
    return QS(mpq_class(0), val, v, order);
}

TEST_CASE("ball contains exact rationals and its own operations") {
    ComplexBall x = ComplexBall::from_q(mpq_class(1, 3), 128);
    CHECK(x.contains(mpq_class(1, 3)));
    CHECK_FALSE(x.contains(mpq_class(1, 3) + mpq_class(1, 1000000)));
    ComplexBall y = (x * ComplexBall::from_si(3, 128)) - ComplexBall::from_si(1, 128);
    CHECK(y.contains(0));
    ComplexBall z = ComplexBall::from_q(2, -5, 200);
    CHECK((z * z.inv()).contains(1));
    CHECK((z / z).contains(1));
    ComplexBall pi = ComplexBall::pi(300);
    CHECK(pi.contains_zero() == false);
    CHECK(exp(ComplexBall::from_si(0, 100)).contains(1));
    // e^{2πi/4} = i exactly
    CHECK(exp_2pi_i_q(mpq_class(1, 4), 200).contains(0, 1));
    CHECK(log_pos(exp(ComplexBall::from_q(mpq_class(3, 7), 256))).contains(mpq_class(3, 7)));
    CHECK(ComplexBall::gamma_q(1, 128).contains(1));
    ComplexBall g = ComplexBall::gamma_q(mpq_class(1, 2), 256);
    CHECK(g.sqr().overlaps(ComplexBall::pi(256)));
}

TEST_CASE("series reversion") {
    QS f = qs({1, 1}, 1, 6);  // t + t²
    QS r = f.reverse();
    CHECK(r.coeff(1) == 1);
    CHECK(r.coeff(2) == -1);
    CHECK(r.coeff(3) == 2);
    CHECK(r.coeff(4) == -5);
    CHECK(r.coeff(5) == 14);
    QS id = f.compose(r);
    CHECK(id.coeff(1) == 1);
    for (int k = 2; k < 6; ++k) CHECK(id.coeff(k) == 0);
}

TEST_CASE("series reversion is an involution on random input") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<long> c{d(rng) == 0 ? 1 : 3};
        for (int k = 1; k < 9; ++k) c.push_back(d(rng));
        QS f = qs(c, 1, 10);
        QS rr = f.reverse().reverse();
        for (int k = 1; k < 10; ++k) REQUIRE(rr.coeff(k) == f.coeff(k));
    }
}

TEST_CASE("compose, exp and log") {
    // exp(log(1+t)) = 1+t
    QS lg = qs({1, 1}, 0, 12).log();
    QS e = lg.exp();
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(1) == 1);
    for (int k = 2; k < 12; ++k) CHECK(e.coeff(k) == 0);
    // 1/(1-t) at t = t²
    QS geo = qs({1, -1}, 0, 10).inv();
    QS sq = qs({1}, 2, 20);
    QS c = geo.compose(sq);
    CHECK(c.order() == 20);
    for (int k = 0; k < 20; ++k) CHECK(c.coeff(k) == (k % 2 == 0 ? 1 : 0));
    // polar part: (1/t) ∘ (t + t²) = 1/t - 1 + t - ...
    QS pole = qs({1}, -1, 4);
    QS pc = pole.compose(qs({1, 1}, 1, 6));
    CHECK(pc.coeff(-1) == 1);
    CHECK(pc.coeff(0) == -1);
    CHECK(pc.coeff(1) == 1);
}

TEST_CASE("dlog operator is d/dz after T = e^z - 1") {
    // f = (1+T)^3 → (1+T)f' = 3(1+T)^3
    QS f = qs({1, 3, 3, 1}, 0, 8);
    QS g = f.dlog_operator();
    CHECK(g.coeff(0) == 3);
    CHECK(g.coeff(1) == 9);
    CHECK(g.coeff(3) == 3);
}

TEST_CASE("series preconditions") {
    CHECK_THROWS_AS(qs({1}, 0, 4).reverse(), PreconditionError);
    CHECK_THROWS_AS(qs({2, 1}, 1, 4).log(), PreconditionError);
    CHECK_THROWS(qs({1}, 0, 4).coeff(4));
}

TEST_CASE("p-adic valuations") {
    mpz_class p = 5;
    CHECK(Qp::from_q(25, p, 10).valuation() == 2);
    CHECK(Qp::from_q(mpq_class(3, 125), p, 10).valuation() == -3);
    CHECK(Qp::from_q(0, p, 10).valuation() == kValInfinity);
    auto R = PAdicRing::cyclotomic_p(p, 10);
    PAdicExt X = PAdicExt::gen(R);   // ζ_5 - 1
    CHECK(X.valuation() == 1);
    CHECK((X * X * X * X).valuation() == 4);
    PAdicExt five = PAdicExt::from_qp(R, Qp::from_q(5, p, 10));
    CHECK(five.valuation() == 4);
    // ζ^5 = 1
    PAdicExt one = PAdicExt::from_qp(R, Qp::from_q(1, p, 10));
    PAdicExt z = X + one, z5 = z * z * z * z * z;
    CHECK((z5 - one).is_zero());
    CHECK(X.trace().equals(Qp::from_q(-5, p, 10)));
}

TEST_CASE("p-adic field laws") {
    mpz_class p = 7;
    Qp a = Qp::from_q(mpq_class(22, 9), p, 20), b = Qp::from_q(mpq_class(-5, 14), p, 20);
    CHECK(((a * b) / b).equals(a));
    CHECK(((a + b) - b).equals(a));
    CHECK((a * (a + b)).equals(a * a + a * b));
    CHECK((a * b).equals(Qp::from_q(mpq_class(-55, 63), p, 20)));
    auto roots = hensel_roots({1, 0, 1}, 5, 12);  // x² + 1 over Z_5
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) CHECK((r * r + Qp::from_q(1, 5, 12)).is_zero());
}

TEST_CASE("quadratic elements") {
    QuadElem x(1, mpq_class(1, 2), 3);  // 1/2 + 3i
    CHECK(x.norm() == mpq_class(37, 4));
    CHECK((x * x.inv()) == QuadElem(1, 1));
    CHECK(x.embed(128).contains(mpq_class(1, 2), 3));
    QuadElem rho(3, mpq_class(-1, 2), mpq_class(1, 2));  // primitive cube root of 1
    CHECK(rho * rho * rho == QuadElem(3, 1));
    CHECK(rho.is_integral());
}

TEST_CASE("bivariate series") {
    QS e = qs({0, 1}, 0, 12).exp();  // e^t
    using BS = BiSeries<mpq_class>;
    BS sum = BS::from_sum(e, 6, 5);
    BS prod = BS::from_z(e, 6, 5) * BS::from_w(e, 6, 5);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 5; ++j) CHECK(sum(i, j) == prod(i, j));
    BS one = prod * prod.inv();
    CHECK(one(0, 0) == 1);
    CHECK(one(3, 2) == 0);
    // e^{z+w} at z = 2s, w = t + t²
    BS c = sum.compose(qs({2}, 1, 6), qs({1, 1}, 1, 5));
    CHECK(c(1, 0) == 2);
    CHECK(c(0, 2) == mpq_class(3, 2));  // t²/2 + t²
}
