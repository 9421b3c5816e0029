#include "doctest.h"

#include "ekcli/checks.hpp"
#include "ekcli/fixtures.hpp"
#include "ekcli/serialize.hpp"

using namespace ekn;
using namespace ekcli;

namespace {

const CMContext& lem() {
    static CMContext c = fixture("lemniscatic", 256);
    return c;
}

bool same_ball(const ComplexBall& a, const ComplexBall& b) {
    return a.prec() == b.prec() && mpfr_equal_p(a.re().get(), b.re().get()) && mpfr_equal_p(a.im().get(), b.im().get()) &&
           mpfr_equal_p(a.rad().get(), b.rad().get());
}

}  // namespace

TEST_CASE("scalars round-trip") {
    for (const char* q : {"0", "-7/3", "123456789012345678901234567891/7"}) CHECK(q_str(q_from_json(to_json(mpq_class(q)))) == std::string(q));
    for (mpq_class q : {mpq_class(0), mpq_class(5, 13), mpq_class(-26), mpq_class(1, 169)}) {
        Qp x = Qp::from_q(q, 13, 8);
        CHECK(qp_from_json(to_json(x)).equals(x));
    }
    json z = to_json(Qp::from_q(0, 5, 6));
    CHECK(z["valuation"].is_null());
    CHECK(z["precision"] == 6);
    CHECK(to_json(Qp::from_q(7, 5, 3))["digits"] == json::array({2, 1, 0}));

    ComplexBall b = lem().lattice.omega1 * ComplexBall::pi(256);
    CHECK(same_ball(ball_from_json(to_json(b)), b));
    QuadElem x(3, mpq_class(1, 2), mpq_class(-3, 2));
    CHECK(quad_from_json(to_json(x)) == x);
}

TEST_CASE("EKExpansion export and import is the identity") {
    TorsionPoint h = TorsionPoint::make(mpq_class(1, 2), 0), o = TorsionPoint::make(0, mpq_class(1, 4));
    EKExpansion E = ek_expansion(lem(), h, o, 4, 3, 256);
    json j = to_json(E);
    EKExpansion F = ek_from_json(j);
    CHECK(canonical(to_json(F)) == canonical(j));
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 3; ++k) CHECK(same_ball(E.table(i, k), F.table(i, k)));
    CHECK(F.e_star(1, 3).overlaps(E.e_star(1, 3)));
}

TEST_CASE("MeasureSeries export carries p, m and provenance") {
    MeasureSeries d = restrict_to_units(dirac(5, 6, 2, 3, 6), UnitVariable::S);
    json j = to_json(d);
    CHECK(j["p"] == "5");
    CHECK(j["m"] == 6);
    CHECK(j["provenance"] == "restrict(dirac(2,3))");
    MeasureSeries e = measure_from_json(j);
    CHECK(canonical(to_json(e)) == canonical(j));
    CHECK(moments(e, 2, 1).value.equals(moments(d, 2, 1).value));

    // an elliptic measure keeps its formal group
    FormalCurve fc = formal_expansions(lem(), 12);
    MeasureSeries mu = mu_z0w0(lem(), fc, PadicEmbedding::make(1, 13, 8), TorsionPoint::make(mpq_class(1, 2), 0),
                               TorsionPoint::make(0, 0), 4);
    MeasureSeries mu2 = measure_from_json(to_json(mu));
    CHECK(mu2.group->omega_weight == 1);
    CHECK(moments(mu2, 1, 2).omega_power == 3);
    CHECK(moments(mu2, 1, 0).value.equals(moments(mu, 1, 0).value));
}

TEST_CASE("fixture files load, validate and reject tampering") {
    for (const char* curve : {"lemniscatic", "d3"}) {
        std::string text = fixture_toml(curve);
        Fixture f = load_fixture_text(text, 512);
        CHECK(f.name == curve);
        CHECK_FALSE(f.split_primes.empty());
        bool lemn = std::string(curve) == "lemniscatic";
        CHECK(f.has_character == lemn);
        CHECK(f.ctx.conductor_norm == (lemn ? 8 : 48));
        if (lemn) CHECK(f.chi.w_f_check);
    }
    std::string text = fixture_toml("lemniscatic");
    std::string bad = text;
    auto g2 = bad.find("re = '4'", bad.find("[curve.g2]"));
    REQUIRE(g2 != std::string::npos);
    bad[g2 + 6] = '5';
    CHECK_THROWS_AS(load_fixture_text(bad, 512), FixtureError);
    bad = text;
    auto pos = bad.find("center_re = '", bad.find("[periods_512.omega1]"));
    REQUIRE(pos != std::string::npos);
    pos += 16;   // a digit well inside the mantissa
    bad[pos] = bad[pos] == '1' ? '2' : '1';
    CHECK_THROWS_AS(load_fixture_text(bad, 512), FixtureError);
    CHECK_THROWS_AS(load_fixture_text("[curve]\nname = \"x\"\n", 512), FixtureError);
    CHECK_THROWS_AS(load_fixture_file("/nonexistent.toml", 512), FixtureError);
}

TEST_CASE("p-adic checks skip unsupported primes") {
    CHECK(unsupported_prime("lemniscatic", 7).value().find("supersingular") == 0);
    CHECK(unsupported_prime("d3", 5).value().find("supersingular") == 0);
    CHECK(unsupported_prime("lemniscatic", 3).has_value());
    CHECK_FALSE(unsupported_prime("lemniscatic", 13).has_value());
    VerifyOptions opt;
    opt.p = 7;
    CHECK(run_criterion(7, opt).status == Status::Skip);
    CHECK(run_criterion(8, opt).status == Status::Skip);
}

TEST_CASE("verify reports are deterministic") {
    VerifyReport a = run_suite("cyclotomic"), b = run_suite("cyclotomic", {}, 3);
    CHECK(canonical(a.to_json(false)) == canonical(b.to_json(false)));
    CHECK_FALSE(a.failed());
    CHECK(suite_criteria("all").size() == 12);
    CHECK_THROWS(suite_criteria("nonsense"));
}
