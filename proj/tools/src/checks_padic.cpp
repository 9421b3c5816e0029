// criteria 7–12: p-adic side
#include "checks_impl.hpp"

#include "ekn/measures.hpp"
#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <random>
#include <sstream>

using namespace ekn;

namespace ekcli {

namespace {

TorsionPoint tp(const mpq_class& a, const mpq_class& b) { return TorsionPoint::make(a, b); }

bool same_mod(const Qp& a, const Qp& b, long k) {
    Qp d = a - b;
    return d.is_zero() || d.valuation() >= k;
}

mpz_class ipow(long b, int e) {
    mpz_class r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

const CMContext& lem() {
    static const CMContext c = fixture("lemniscatic", 512);
    return c;
}

}  // namespace

std::optional<std::string> unsupported_prime(const std::string& curve, long p) {
    if (p < 5) return "unsupported: p < 5";
    mpz_class P = p;
    if (mpz_probab_prime_p(P.get_mpz_t(), 30) == 0) return "unsupported: " + std::to_string(p) + " is not prime";
    CMContext c = fixture(curve, 64);
    try {
        PadicEmbedding::make(c.d, p, 4);
    } catch (const std::invalid_argument&) {
        return "supersingular: " + std::to_string(p) + " is inert in K";
    }
    return std::nullopt;
}

CheckResult check_theta_integrality(const VerifyOptions& opt) {
    CheckResult r{7, "theta-hat integrality"};
    int deg = opt.degree.value_or(40);
    std::vector<long> primes = opt.p ? std::vector<long>{*opt.p} : std::vector<long>{5, 13};
    FormalCurve fc = formal_expansions(lem(), deg + 3);
    PowerSeries<QuadElem> th = theta_hat(lem(), fc, deg + 1).mul_xk(-1);
    bool ok = true;
    std::ostringstream os;
    for (long p : primes) {
        if (auto why = unsupported_prime("lemniscatic", p)) {
            r.status = Status::Skip;
            r.detail = *why;
            return r;
        }
        PadicEmbedding e = PadicEmbedding::make(1, p, 8);
        IntegralityScan s = scan_integrality(th, 0, deg, e);
        long v0 = valuation(th.coeff(0), e);
        ok = ok && s.integral() && v0 == 0;
        os << "p=" << p << ": min v = " << s.min_valuation << " over t^0..t^" << deg << ", v(const) = " << v0 << "; ";
    }
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = os.str();
    return r;
}

CheckResult check_kronecker_integrality(const VerifyOptions& opt) {
    CheckResult r{8, "Kronecker theta-hat integrality"};
    long p = opt.p.value_or(13);
    int deg = opt.degree.value_or(20);
    if (auto why = unsupported_prime("lemniscatic", p)) {
        r.status = Status::Skip;
        r.detail = *why;
        return r;
    }
    PadicEmbedding e = PadicEmbedding::make(1, p, 8);
    FormalCurve fc = formal_expansions(lem(), deg + 4);
    IntegralityScan s = scan_integrality(kronecker_theta_hat(lem(), fc, deg).regular, deg, e);
    FormalCurve fc2 = formal_expansions(lem(), 14);
    TranslatedThetaHat T = translated_theta_hat(lem(), fc2, tp(mpq_class(1, 2), 0), tp(0, 0), 10, p);
    IntegralityScan st = scan_integrality(T.series, 10, e);
    r.status = s.integral() && st.integral() ? Status::Pass : Status::Fail;
    std::ostringstream os;
    os << "p=" << p << ": regular part min v = " << s.min_valuation << " over " << s.checked
       << " coefficients (total degree <= " << deg << "); translated (w1/2, 0) min v = " << st.min_valuation
       << " over " << st.checked << " coefficients (total degree <= 10, " << T.bits_used << " bits)";
    r.detail = os.str();
    return r;
}

CheckResult check_period(const VerifyOptions&) {
    CheckResult r{9, "p-adic period"};
    const long p = 13, m = 8;
    FormalCurve fc = formal_expansions(lem(), 170);
    PadicEmbedding e = PadicEmbedding::make(1, p, m);
    std::ostringstream os;
    bool solved = false;
    try {
        PadicPeriod P = solve_omega_p(fc, e, m, 30);
        solved = P.in_Zp && P.validated_through >= 30;
        os << "solver: Omega_p = " << P.omega.str() << " validated through t^" << P.validated_through << "; ";
    } catch (const OmegaNotInZp& ex) {
        os << "solver: no Omega_p in Z_p^x (" << ex.what() << "); ";
    }
    PadicPeriod F = frobenius_period(fc, e, m, 170);
    os << "Frobenius datum a_p = " << F.a_p << ", alpha = " << F.alpha.str() << " (Dwork-validated through t^"
       << F.validated_through << "); ";

    // identities in Q[Omega, 1/Omega]: these do not need Omega_p ∈ Z_p
    FormalCurve f24 = formal_expansions(lem(), 24);
    PowerSeries<OmegaPoly> eta = eta_symbolic(f24, 20), iota = iota_symbolic(f24, 20);
    PowerSeries<OmegaPoly> id = iota.compose(eta);
    bool inv = true;
    for (int k = 0; k < std::min(id.order(), 20); ++k) inv = inv && id.coeff(k) == OmegaPoly(k == 1 ? 1 : 0);
    PowerSeries<OmegaPoly> lam = to_omega(to_rational(f24.lambda.truncate(16)));
    PowerSeries<OmegaPoly> eta15 = eta.truncate(16);
    PowerSeries<OmegaPoly> d = eta15.derivative().scale(OmegaPoly::omega(1)) -
                               (eta15 + PowerSeries<OmegaPoly>::constant(OmegaPoly(1), eta15.order())) * lam.derivative();
    bool dlog = true;
    for (int k = 0; k < std::min(d.order(), 15); ++k) dlog = dlog && d.coeff(k).is_zero();
    os << "iota o eta = id mod t^20: " << (inv ? "yes" : "no") << "; dlog correspondence mod T^15: " << (dlog ? "yes" : "no")
       << " (both exact in Q[Omega, 1/Omega])";
    r.status = solved && inv && dlog ? Status::Pass : Status::Fail;
    r.detail = os.str();
    return r;
}

CheckResult check_two_variable(const VerifyOptions&) {
    CheckResult r{10, "two-variable interpolation"};
    const long p = 13, m = 8;
    TorsionPoint h = tp(mpq_class(1, 2), 0), o = tp(0, 0);
    DamerellReport rep = damerell_check("lemniscatic", h, o, 2, 3);
    FormalCurve fc = formal_expansions(lem(), 10);
    PadicEmbedding e = PadicEmbedding::make(1, p, m);
    MeasureSeries mu = mu_z0w0(lem(), fc, e, h, o, 6);
    const std::vector<std::pair<int, int>> cells = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    int ok = 0;
    std::ostringstream os;
    for (const auto& [a, b] : cells) {
        const DamerellCell* c = nullptr;
        for (const auto& x : rep.cells)
            if (x.a == a && x.b == b) c = &x;
        auto v = c && c->certified ? c->guess.in_field(1) : std::nullopt;
        if (!v) continue;
        PadicMoment mom = moments(mu, b - 1, a);
        mpq_class k = (a + b - 1) % 2 ? -1 : 1;
        for (int f = 2; f < b; ++f) k *= f;
        if (mom.omega_power == a + b - 1 && same_mod(mom.value, e(*v * k), 6)) ++ok;
        os << "(" << a << "," << b << ") e*/A^a = " << v->str() << "; ";
    }
    r.status = ok == 6 ? Status::Pass : Status::Fail;
    r.detail = std::to_string(ok) + "/6 cells agree mod 13^6 at m = 8, z0 = w1/2, w0 = 0; " + os.str();
    return r;
}

CheckResult check_restriction(const VerifyOptions&) {
    CheckResult r{11, "restriction idempotence and Dirac brute force"};
    const long p = 5, m = 8;
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-3000, 3000);
    int bad_idem = 0, bad_brute = 0, bad_support = 0;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::pair<std::pair<long, long>, mpz_class>> diracs;
        BiSeries<mpq_class> f(mpq_class(0), 7, 7);
        for (long u = 0; u <= 6; ++u)
            for (long v = 0; u + v <= 6; ++v) {
                mpz_class w = coef(rng);
                diracs.push_back({{u, v}, w});
                for (int i = 0; i <= u; ++i)
                    for (int j = 0; j <= v; ++j) {
                        mpz_class bu, bv;
                        mpz_bin_uiui(bu.get_mpz_t(), u, i);
                        mpz_bin_uiui(bv.get_mpz_t(), v, j);
                        f(i, j) += mpq_class(w * bu * bv);
                    }
            }
        MeasureSeries ms = from_rational(f, p, m, true);
        for (UnitVariable w : {UnitVariable::S, UnitVariable::T, UnitVariable::Both}) {
            MeasureSeries once = restrict_to_units(ms, w), twice = restrict_to_units(once, w);
            MeasureSeries brute = restrict_dirac_combination(diracs, p, m, 6, w);
            for (int i = 0; i <= 6; ++i)
                for (int j = 0; i + j <= 6; ++j) {
                    bad_idem += !same_mod(once.series(i, j), twice.series(i, j), 3);
                    bad_brute += !same_mod(once.series(i, j), brute.series(i, j), 3);
                }
        }
    }
    // every support class mod p²: moments through total degree 6
    for (long u = 0; u < p * p; ++u)
        for (long v = 0; v < p * p; ++v) {
            MeasureSeries rs = restrict_to_units(dirac(p, m, u, v, static_cast<int>(std::max(u + v, 6L))), UnitVariable::Both, 6);
            bool unit = u % p && v % p;
            for (int i = 0; i <= 6; ++i)
                for (int j = 0; i + j <= 6; ++j) {
                    mpz_class want = unit ? ipow(u, i) * ipow(v, j) : mpz_class(0);
                    bad_support += !same_mod(moments(rs, i, j).value, Qp::from_q(mpq_class(want), p, m), 3);
                }
        }
    r.status = bad_idem + bad_brute + bad_support == 0 ? Status::Pass : Status::Fail;
    std::ostringstream os;
    os << "p=5 mod 5^3, degree <= 6: idempotence mismatches " << bad_idem << ", brute-force mismatches " << bad_brute
       << " (4 random series x 3 restrictions), support-class mismatches " << bad_support << " over 625 Diracs";
    r.detail = os.str();
    return r;
}

CheckResult check_yager(const VerifyOptions&) {
    CheckResult r{12, "Yager interpolation"};
    HeckeCharacter chi = fixture_character(lem());
    FormalCurve fc = formal_expansions(lem(), 64);
    PadicEmbedding e = PadicEmbedding::make(1, 5, 8);
    bool ok = chi.w_f_check;
    std::ostringstream os;
    os << "w_f = 1: " << (chi.w_f_check ? "yes" : "no") << "; ";
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 1}}) {
        YagerReport y = yager_check(lem(), fc, e, chi, a, b, 32);
        ok = ok && y.agree_mod >= 5;
        os << "(" << a << "," << b << ") lhs = " << y.lhs_moment.str() << "·Omega^" << y.omega_power
           << ", rhs = " << y.rhs_value.str() << ", agree mod 5^" << y.agree_mod << "; ";
    }
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = os.str() + "p = 5";
    return r;
}

}  // namespace ekcli
