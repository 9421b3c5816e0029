#include "doctest.h"

#include "ekn/lll.hpp"
#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <random>

using namespace ekn;

namespace {

TorsionPoint tp(long a, long b, long c, long d) { return TorsionPoint::make(mpq_class(a, b), mpq_class(c, d)); }

mpq_class det(IntMatrix m) {
    const size_t n = m.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    mpq_class d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            mpq_class f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

mpz_class norm2(const std::vector<mpz_class>& v) {
    mpz_class s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

}  // namespace

TEST_CASE("LLL keeps the lattice and finds a short vector") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 6;
        IntMatrix B(n, std::vector<mpz_class>(n, 0));
        for (int i = 0; i < n; ++i) B[i][i] = 1 + trial % 3;
        B[0][0] = 1;   // shortest vector has norm 1
        // scramble by elementary unimodular moves
        for (int s = 0; s < 60; ++s) {
            int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
            if (i == j) continue;
            int q = small(rng);
            for (int c = 0; c < n; ++c) B[i][c] += q * B[j][c];
        }
        mpq_class d0 = det(B);
        lll_reduce(B);
        CHECK(abs(det(B)) == abs(d0));
        CHECK(norm2(B[0]) <= (mpz_class(1) << (n - 1)));
    }
    IntMatrix dep{{1, 2}, {2, 4}};
    CHECK_THROWS_AS(lll_reduce(dep), std::invalid_argument);
}

TEST_CASE("root-of-unity factor") {
    const CMContext ctx = fixture("lemniscatic", 192);
    const Lattice& L = ctx.lattice;
    TorsionPoint o = tp(0, 1, 0, 1), h1 = tp(1, 2, 0, 1), h2 = tp(0, 1, 1, 2);
    CHECK(mumford_factor(o, h1, 128).contains(1));
    CHECK(mumford_factor(h1, o, 128).contains(1));
    CHECK(mumford_factor(h1, h1, 128).contains(1));

    auto m = mumford_translation(h1, h2, 128);
    CHECK(m.n == 4);
    mpq_class e2 = m.exponent * 2 * m.n * m.n;
    CHECK(e2.get_den() == 1);   // order divides 2n²
    CHECK(m.root_factor.overlaps(mumford_factor_analytic(h1, h2, L)));
    CHECK(m.root_factor.pow(8).contains(1));
    CHECK_FALSE(m.root_factor.pow(4).contains(1));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-7, 7);
    for (int trial = 0; trial < 10; ++trial) {
        TorsionPoint z0 = tp(c(rng), 4, c(rng), 3), w0 = tp(c(rng), 3, c(rng), 4);
        ComplexBall f = mumford_factor(z0, w0, 128);
        CHECK(f.overlaps(mumford_factor_analytic(z0, w0, L)));
        CHECK((f * mumford_factor(w0, z0, 128)).contains(1));
        // in each slot: factor(z0 + γ, w0) = factor(z0, w0)·factor(γ, w0)
        TorsionPoint g = tp(c(rng), 1, c(rng), 1);
        ComplexBall r = mumford_factor(z0 + g, w0, 128) / f;
        CHECK(hypot_sq(r).overlaps(ComplexBall::from_si(1, 128)));
        CHECK(r.overlaps(mumford_factor_analytic(g, w0, L)));
        CHECK(r.sqr().overlaps(pairing(w0, g, 128)));
    }
}

TEST_CASE("recognition of seeded values") {
    auto g = recognize_algebraic(ComplexBall::from_q(mpq_class(-1, 12), 512), 4);
    REQUIRE(g.found);
    CHECK(g.degree() == 1);
    CHECK(*g.in_field(1) == QuadElem(1, mpq_class(-1, 12)));
    CHECK(certify(g, ComplexBall::from_q(mpq_class(-1, 12), 1024)));
    CHECK(g.certified);

    auto h = recognize_algebraic(ComplexBall::from_q(mpq_class(1, 2), mpq_class(1, 2), 512), 4);
    REQUIRE(h.found);
    CHECK(h.degree() == 2);
    CHECK(*h.in_field(1) == QuadElem(1, mpq_class(1, 2), mpq_class(1, 2)));

    // √−3 in Q(√−3), and a root of x³ − 2 (outside K)
    auto r = recognize_algebraic(sqrt_pos(ComplexBall::from_si(3, 512)) * ComplexBall::i(512), 6);
    CHECK(r.poly == std::vector<mpz_class>{3, 0, 1});
    CHECK(*r.in_field(3) == QuadElem(3, 0, 1));
    ComplexBall c2 = exp(log_pos(ComplexBall::from_si(2, 512)).mul_q(mpq_class(1, 3)));
    auto t = recognize_algebraic(c2, 6);
    CHECK(t.poly == std::vector<mpz_class>{-2, 0, 0, 1});
    CHECK_FALSE(t.in_field(1).has_value());

    // transcendental: nothing passes the height gate
    CHECK_FALSE(recognize_algebraic(ComplexBall::pi(512), 8).found);
    CHECK_FALSE(recognize_algebraic(ComplexBall::pi(512) * ComplexBall::i(512) + c2, 8).found);
    // a wrong guess does not survive the doubled precision
    auto w = recognize_algebraic(ComplexBall::from_q(mpq_class(1, 3), 512), 2);
    CHECK_FALSE(certify(w, ComplexBall::from_q(mpq_class(1, 3) + mpq_class(1, mpz_class(1) << 400), 1024)));
    CHECK_FALSE(w.certified);
}
