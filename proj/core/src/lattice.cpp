#include "ekn/lattice.hpp"
#include "ekn/series.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ekn {

CMContext fixture(const std::string& name, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    CMContext c;
    c.name = name;
    ComplexBall pi = ComplexBall::pi(wp);
    ComplexBall w1;
    if (name == "lemniscatic") {
        ComplexBall g = ComplexBall::gamma_q(mpq_class(1, 4), wp);
        w1 = g.sqr() / (sqrt_pos(pi.mul_2si(1)).mul_2si(1));
        c.lattice.omega2 = (w1 * ComplexBall::i(wp)).with_prec(prec);
        c.lattice.A = (w1.sqr() / pi).with_prec(prec);
        c.d = 1;
        c.g2 = QuadElem(1, 4);
        c.g3 = QuadElem(1, 0);
        c.e2star = QuadElem(1, 0);
        c.conductor = QuadElem(1, 2, 2);
        c.conductor_norm = 8;
    } else if (name == "d3") {
        ComplexBall g = ComplexBall::gamma_q(mpq_class(1, 3), wp);
        ComplexBall cbrt2 = exp(log_pos(ComplexBall::from_si(2, wp)).mul_q(mpq_class(1, 3)));
        w1 = g.pow(3) / (pi.mul_2si(1) * cbrt2);
        ComplexBall s3 = sqrt_pos(ComplexBall::from_si(3, wp));
        ComplexBall rho = ComplexBall::from_q(mpq_class(-1, 2), wp) + s3.mul_2si(-1) * ComplexBall::i(wp);
        c.lattice.omega2 = (w1 * rho).with_prec(prec);
        c.lattice.A = (w1.sqr() * s3.mul_2si(-1) / pi).with_prec(prec);
        c.d = 3;
        c.g2 = QuadElem(3, 0);
        c.g3 = QuadElem(3, 4);
        c.e2star = QuadElem(3, 0);
        // y'² = x³ − 1 has conductor 144 = 3·48; a_ℓ for split ℓ < 200 is consistent with 𝔣 = (4√−3) and not (2√−3)
        c.conductor = QuadElem(3, 0, 4);
        c.conductor_norm = 48;
    } else {
        throw std::invalid_argument("unknown curve '" + name + "' (known: lemniscatic, d3)");
    }
    c.lattice.omega1 = w1.with_prec(prec);
    c.Omega = (w1 / c.conductor.embed(wp)).with_prec(prec);
    return c;
}

TorsionPoint TorsionPoint::make(const mpq_class& c1, const mpq_class& c2) {
    TorsionPoint t{c1, c2, 1};
    t.c1.canonicalize();
    t.c2.canonicalize();
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), t.c1.get_den_mpz_t(), t.c2.get_den_mpz_t());
    if (!l.fits_slong_p()) throw std::invalid_argument("torsion order too large");
    t.n = l.get_si();
    return t;
}

ComplexBall TorsionPoint::value(const Lattice& L) const {
    return L.omega1.mul_q(c1) + L.omega2.mul_q(c2);
}

std::string TorsionPoint::str() const {
    std::ostringstream os;
    os << "(" << c1.get_str() << ")w1+(" << c2.get_str() << ")w2";
    return os.str();
}

ComplexBall pairing(const ComplexBall& z, const ComplexBall& w, const ComplexBall& A) {
    if (!(A.abs_lower().sgn() > 0)) throw PreconditionError("pairing: A must be positive");
    return exp((z * w.conj() - w * z.conj()) / A);
}

mpq_class pairing_exponent(const TorsionPoint& u, const TorsionPoint& v) {
    return -(u.c1 * v.c2 - u.c2 * v.c1);
}

ComplexBall pairing(const TorsionPoint& u, const TorsionPoint& v, mpfr_prec_t prec) {
    return exp_2pi_i_q(pairing_exponent(u, v), prec);
}

namespace {

struct Geometry {
    double V;      // πA
    double D;      // max |v| over the centred fundamental parallelogram
    double h1, h2; // V/|ω2|, V/|ω1|: |x| ≥ |coefficient of ω1|·h1 and likewise
    double A;
};

Geometry geometry(const Lattice& L) {
    Geometry g;
    double a1 = L.omega1.abs_upper().to_d(), a2 = L.omega2.abs_upper().to_d();
    g.A = L.A.re().to_d();
    g.V = M_PI * g.A * (1 - 1e-12);
    g.D = 0.5 * (a1 + a2) * (1 + 1e-12);
    g.h1 = g.V / a2;
    g.h2 = g.V / a1;
    return g;
}

// box |m| ≤ M1, |n| ≤ M2 covering all x = c + mω1 + nω2 with |x| ≤ R
void box_for(const Geometry& g, const mpq_class& c1, const mpq_class& c2, double R, long& M1, long& M2) {
    M1 = static_cast<long>(std::ceil(R / g.h1 + std::fabs(c1.get_d()))) + 1;
    M2 = static_cast<long>(std::ceil(R / g.h2 + std::fabs(c2.get_d()))) + 1;
}

// smallest |x| over points outside the box
double box_radius(const Geometry& g, const mpq_class& c1, const mpq_class& c2, long M1, long M2) {
    double r1 = (M1 + 1 - std::fabs(c1.get_d())) * g.h1;
    double r2 = (M2 + 1 - std::fabs(c2.get_d())) * g.h2;
    return std::min(r1, r2) * (1 - 1e-9);
}

// Σ_{x ∈ c+Γ, |x| ≥ R} C·r^P·e^{−r²/A} over shells [R+k, R+k+1).
Real gaussian_shell_tail(const Geometry& g, const ComplexBall& C, int P, double R, mpfr_prec_t target) {
    if (R <= g.D) throw std::logic_error("shell tail: radius too small");
    mpfr_prec_t lp = 64;
    ComplexBall Ainv = ComplexBall::from_q(mpq_class(g.A * (1 - 1e-12)), lp).inv();
    Real total(64), prev(64);
    for (long k = 0;; ++k) {
        double r = R + k;
        // points whose parallelogram lies in [r − D, r + 1 + D]
        mpq_class cnt = mpq_class((r + 1 + g.D) * (r + 1 + g.D) - (r - g.D) * (r - g.D)) / mpq_class(g.V / M_PI) * mpq_class(1.000001);
        ComplexBall rb = ComplexBall::from_q(mpq_class(r), lp);
        ComplexBall t = C * (P >= 0 ? rb.pow(P) : ComplexBall::from_q(mpq_class(R), lp).pow(P)) * exp(-(rb.sqr() * Ainv));
        Real term = mag_mul(t.abs_upper(), Real::from_q(cnt, 64, MPFR_RNDU));
        total = mag_add(total, term);
        if (k > 0 && !term.is_zero() && term.exponent() < -static_cast<long>(target) - 20) {
            Real half = mag_div(prev, Real::from_si(2));
            if (mag_le(term, half)) return mag_add(total, term);
        }
        prev = term;
    }
}

}  // namespace

ComplexBall K_direct(int a, const TorsionPoint& z, const TorsionPoint& w, int s, double R, const Lattice& L) {
    int k = 2 * s - a;
    if (a < 0 || k <= 2) throw PreconditionError("K_direct: needs a ≥ 0 and 2s − a > 2 (outside the convergent range)");
    Geometry g = geometry(L);
    double Rt = R * (1 - 1e-9);
    double u0 = Rt - 2 * g.D;
    if (u0 <= 0) throw PreconditionError("K_direct: R too small for the tail bound");
    mpfr_prec_t wp = L.A.prec() + 16;
    long M1, M2;
    box_for(g, z.c1, z.c2, R, M1, M2);
    ComplexBall sum(wp);
    ComplexBall w1 = L.omega1.with_prec(wp), w2 = L.omega2.with_prec(wp);
    for (long m = -M1; m <= M1; ++m)
        for (long n = -M2; n <= M2; ++n) {
            mpq_class x1 = z.c1 + m, x2 = z.c2 + n;
            if (x1 == 0 && x2 == 0) continue;
            ComplexBall x = w1.mul_q(x1) + w2.mul_q(x2);
            double xr = x.abs_upper().to_d();
            if (xr > R) continue;
            ComplexBall xc = x.conj();
            ComplexBall t = xc.pow(a) * (x * xc).pow(-s);
            // ⟨γ,w⟩ = e^{−2πi(m w2 − n w1)}
            mpq_class e = -(mpq_class(m) * w.c2 - mpq_class(n) * w.c1);
            sum += t * exp_2pi_i_q(e, wp);
        }
    // Σ_{|x| ≥ R} |x|^{−k} ≤ (2/A)(u0^{2−k}/(k−2) + D·u0^{1−k}/(k−1)), u0 = R − 2D
    ComplexBall U = ComplexBall::from_q(mpq_class(u0 * (1 - 1e-12)), 64);
    ComplexBall Db = ComplexBall::from_q(mpq_class(g.D), 64);
    ComplexBall tail = (U.pow(2 - k).mul_q(mpq_class(1, k - 2)) + Db * U.pow(1 - k).mul_q(mpq_class(1, k - 1))) *
                       ComplexBall::from_q(mpq_class(2.0 / (g.A * (1 - 1e-12))), 64);
    sum.add_error(tail.abs_upper());
    return sum.with_prec(L.A.prec());
}

ComplexBall K_ewald(int nn, const TorsionPoint& z, const TorsionPoint& w, int s, const Lattice& L) {
    if (nn < 1 || s < 1 || s > nn) throw PreconditionError("K_ewald: needs 1 ≤ s ≤ a");
    mpfr_prec_t prec = L.A.prec(), wp = prec + 32;
    Geometry g = geometry(L);
    int mm = nn + 1 - s;
    int mx = std::max(s, mm);
    // radius where r^n e^{−r²/A} drops below 2^{−wp}
    double R = std::max(2 * g.D + 1, std::sqrt(g.A * mx) + 1);
    while (R * R / g.A - nn * std::log(R) < wp * M_LN2 + 40) R += 0.5;
    long M1, M2, N1, N2;
    box_for(g, z.c1, z.c2, R, M1, M2);
    box_for(g, w.c1, w.c2, R, N1, N2);
    M1 = std::max(M1, N1);
    M2 = std::max(M2, N2);
    double Rbox = std::min(box_radius(g, z.c1, z.c2, M1, M2), box_radius(g, w.c1, w.c2, M1, M2));

    ComplexBall A = L.A.with_prec(wp), Ainv = A.inv();
    ComplexBall w1 = L.omega1.with_prec(wp), w2 = L.omega2.with_prec(wp);
    mpz_class fs, fm;
    mpz_fac_ui(fs.get_mpz_t(), s - 1);
    mpz_fac_ui(fm.get_mpz_t(), mm - 1);
    // e^{−y} Σ_{k<m} y^k/k!
    auto qpoly = [&](const ComplexBall& y, int m) {
        ComplexBall acc = ComplexBall::from_si(0, wp), yk = ComplexBall::from_si(1, wp);
        mpz_class f = 1;
        for (int k = 0; k < m; ++k) {
            if (k) { yk *= y; f *= k; }
            acc += yk.mul_q(mpq_class(1) / mpq_class(f));
        }
        return acc * exp(-y);
    };
    ComplexBall pzw_inv = pairing(z, w, wp).conj();
    ComplexBall recip_pref = Ainv.pow(nn + 1) * A.pow(2 * mm).mul_q(mpq_class(fm) / mpq_class(fs));
    ComplexBall real_sum(wp), recip_sum(wp);
    for (long m = -M1; m <= M1; ++m)
        for (long n = -M2; n <= M2; ++n) {
            TorsionPoint gam = TorsionPoint::make(m, n);
            mpq_class x1 = z.c1 + m, x2 = z.c2 + n;
            if (!(x1 == 0 && x2 == 0)) {
                ComplexBall x = w1.mul_q(x1) + w2.mul_q(x2);
                ComplexBall xc = x.conj(), r2 = (x * xc).real_part();
                ComplexBall t = xc.pow(nn) * r2.pow(-s) * qpoly(r2 * Ainv, s);
                real_sum += t * pairing(gam, w, wp);
            }
            mpq_class u1 = w.c1 - m, u2 = w.c2 - n;
            if (!(u1 == 0 && u2 == 0)) {
                ComplexBall u = w1.mul_q(u1) + w2.mul_q(u2);
                ComplexBall uc = u.conj(), r2 = (u * uc).real_part();
                ComplexBall t = uc.pow(nn) * r2.pow(-mm) * qpoly(r2 * Ainv, mm);
                recip_sum += t * pairing(z, gam, wp);
            }
        }
    ComplexBall total = real_sum + recip_sum * recip_pref * pzw_inv;
    // both tails: C·r^{n−2}e^{−r²/A}, C = max(s, m)/(s−1)!·A^{1−s}
    ComplexBall Cst = L.A.with_prec(64).pow(1 - s).mul_q(mpq_class(mx) / mpq_class(fs));
    Real tail = gaussian_shell_tail(g, Cst, nn - 2, Rbox, wp);
    total.add_error(mag_mul(tail, Real::from_si(2)));
    return total.with_prec(prec);
}

}  // namespace ekn
