// criteria 1–6: complex side
#include "checks_impl.hpp"

#include "ekn/cyclotomic.hpp"
#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <random>
#include <sstream>

using namespace ekn;

namespace ekcli {

namespace {

TorsionPoint tp(const mpq_class& a, const mpq_class& b) { return TorsionPoint::make(a, b); }

bool rad_below(const ComplexBall& x, double eps) { return x.rad().to_d() <= eps; }

}  // namespace

CheckResult check_bernoulli(const VerifyOptions& opt) {
    CheckResult r{1, "cyclotomic Bernoulli identity"};
    CycExpansion g = g_expand(CycPoint::make(0), 12);
    int bad = 0;
    for (int b = 2; b <= 12; ++b) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), b);
        CycElem lhs = g.e_star(b) * CycElem(1, b % 2 ? 1 : -1);
        if (!(lhs == CycElem(1, bernoulli(b) / mpq_class(f)))) ++bad;
    }
    ComplexBall e0 = e_star_direct(CycPoint::make(0), 2, 40, opt.bits);
    ComplexBall eh = e_star_direct(CycPoint::make(mpq_class(1, 2)), 2, 40, opt.bits);
    bool direct = e0.contains(mpq_class(-1, 12)) && eh.contains(mpq_class(-1, 4)) && rad_below(e0, 1e-30) &&
                  rad_below(eh, 1e-30);
    r.status = bad == 0 && direct ? Status::Pass : Status::Fail;
    r.detail = "b=2..12 exact: " + std::to_string(11 - bad) + "/11; e*_2(0) = " + e0.str(12) +
               ", e*_2(pi i) = " + eh.str(12);
    return r;
}

CheckResult check_dirichlet(const VerifyOptions&) {
    CheckResult r{2, "Dirichlet L-value identity"};
    int ok = 0, total = 0;
    double worst = 0;
    for (int f : {3, 4, 5, 8})
        for (const auto& c : dirichlet_characters(f))
            for (int b = 1; b <= 4; ++b) {
                if (c.is_even() != (b % 2 == 0)) continue;   // the identity needs χ(−1) = (−1)^b
                DirichletCheck x = dirichlet_L_check(c, b, 256);
                ++total;
                double rad = std::max(x.lhs.rad().to_d(), x.rhs.rad().to_d());
                worst = std::max(worst, rad);
                if (x.ok && rad <= 1e-20) ++ok;
            }
    r.status = ok == total ? Status::Pass : Status::Fail;
    std::ostringstream os;
    os << ok << "/" << total << " (character, b) pairs, worst radius " << worst;
    r.detail = os.str();
    return r;
}

CheckResult check_one_variable(const VerifyOptions&) {
    CheckResult r{3, "one-variable interpolation"};
    int ok = 0, total = 0;
    for (int f : {2, 3, 4})
        for (int k = 1; k < f; ++k) {
            if (std::gcd(k, f) != 1) continue;
            for (const MomentCheck& m : cyc_moment_checks(CycPoint::make(mpq_class(k, f)), 6)) {
                if (m.b < 2) continue;
                ++total;
                if (m.ok && m.lhs == m.rhs) ++ok;
            }
        }
    r.status = ok == total && total > 0 ? Status::Pass : Status::Fail;
    r.detail = std::to_string(ok) + "/" + std::to_string(total) + " exact moment identities in Q(zeta_f)";
    return r;
}

const std::vector<std::pair<TorsionPoint, TorsionPoint>>& generating_pairs() {
    static const std::vector<std::pair<TorsionPoint, TorsionPoint>> v = {
        {tp(0, 0), tp(0, 0)},
        {tp(mpq_class(1, 2), 0), tp(0, 0)},
        {tp(0, 0), tp(mpq_class(1, 2), mpq_class(1, 2))},
        {tp(mpq_class(1, 4), 0), tp(0, mpq_class(1, 2))},
        {tp(mpq_class(1, 4), mpq_class(1, 4)), tp(0, 0)},
        {tp(0, mpq_class(3, 4)), tp(mpq_class(1, 4), 0)},
    };
    return v;
}

CheckResult check_generating(const VerifyOptions& opt) {
    CheckResult r{4, "generating function vs lattice sums"};
    CMContext c = fixture("lemniscatic", opt.bits);
    int ok = 0, total = 0;
    double worst = 0;
    for (const auto& [z0, w0] : generating_pairs()) {
        EKExpansion E = ek_expansion(c, z0, w0, 6, 3, opt.bits);
        for (int a = 0; a <= 2; ++a)
            for (int b = a + 3; b <= 6; ++b) {
                ++total;
                ComplexBall e = E.e_star(a, b);
                ComplexBall ew = e_star_ewald(a, b, z0, w0, c.lattice);
                ComplexBall kd = K_direct(a + b, z0, w0, b, 30, c.lattice);
                worst = std::max({worst, e.rad().to_d(), ew.rad().to_d()});
                if (e.overlaps(ew) && e.overlaps(kd) && rad_below(e, 1e-25) && rad_below(ew, 1e-25)) ++ok;
            }
    }
    r.status = ok == total ? Status::Pass : Status::Fail;
    std::ostringstream os;
    os << ok << "/" << total << " cells over " << generating_pairs().size()
       << " pairs of order 1, 2, 4; worst radius " << worst << " (direct sums overlap, theta splitting is the tight oracle)";
    r.detail = os.str();
    return r;
}

CheckResult check_translation(const VerifyOptions&) {
    CheckResult r{5, "translation formula"};
    const mpfr_prec_t prec = 128;
    CMContext c = fixture("lemniscatic", prec + 32);
    const Lattice& L = c.lattice;
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<int> d(-45, 45), g(-2, 2);
    int ok = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto pt = [&] { return L.omega1.mul_q(mpq_class(d(rng), 100)) + L.omega2.mul_q(mpq_class(d(rng), 100)); };
        ComplexBall z = pt(), w = pt();
        ComplexBall g1 = L.omega1.mul_q(g(rng)) + L.omega2.mul_q(g(rng));
        ComplexBall g2 = L.omega1.mul_q(g(rng)) + L.omega2.mul_q(g(rng));
        ComplexBall lhs = kronecker_theta_eval(c, z + g1, w + g2, prec);
        ComplexBall f = exp((g1 * g2.conj() + z * g2.conj() + w * g1.conj()) / L.A);
        if (lhs.overlaps(f * kronecker_theta_eval(c, z, w, prec))) ++ok;
    }
    r.status = ok == 20 ? Status::Pass : Status::Fail;
    r.detail = std::to_string(ok) + "/20 random points, residual within the combined radii";
    return r;
}

const std::vector<DamerellPair>& damerell_pairs() {
    static const std::vector<DamerellPair> v = [] {
        const mpq_class h(1, 2), t(1, 3), q(1, 4);
        std::vector<std::array<mpq_class, 4>> base = {
            {0, 0, 0, 0}, {h, 0, 0, 0}, {0, 0, h, 0}, {h, 0, 0, h}, {h, h, h, 0}, {t, 0, 0, 0}, {0, 0, t, 0},
            {t, t, 0, 0}, {q, 0, 0, 0}, {0, 0, q, 0}, {q, 0, h, 0}, {q, h, 0, h}, {q, q, 0, 0}, {h, 0, q, 0}};
        std::vector<DamerellPair> out;
        for (const char* curve : {"lemniscatic", "d3"})
            for (const auto& b : base) out.push_back({curve, b[0], b[1], b[2], b[3]});
        return out;
    }();
    return v;
}

CheckResult check_damerell(const VerifyOptions&) {
    CheckResult r{6, "Damerell recognition"};
    int cert = 0, total = 0;
    std::string failures;
    for (const DamerellPair& d : damerell_pairs()) {
        DamerellReport rep = damerell_check(d.curve, tp(d.z1, d.z2), tp(d.w1, d.w2), 2, 6);
        total += static_cast<int>(rep.cells.size());
        cert += rep.certified_count();
        if (rep.certified_count() != static_cast<int>(rep.cells.size()))
            failures += " " + d.curve + ":" + rep.z0.str() + "/" + rep.w0.str();
    }
    r.status = cert == total ? Status::Pass : Status::Fail;
    r.detail = std::to_string(cert) + "/" + std::to_string(total) + " cells certified over " +
               std::to_string(damerell_pairs().size()) + " torsion pairs (n <= 4, both curves)" + failures;
    return r;
}

}  // namespace ekcli
