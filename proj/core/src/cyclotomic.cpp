#include "ekn/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ekn {

mpq_class bernoulli(int n) {
    static std::mutex mu;
    static std::vector<mpq_class> B{1};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(B.size()) <= n) {
        int m = static_cast<int>(B.size());
        // Σ_{k≤m} C(m+1, k) B_k = 0
        mpq_class s = 0;
        mpz_class c = 1;
        for (int k = 0; k < m; ++k) {
            s += c * B[k];
            c = c * (m + 1 - k) / (k + 1);
        }
        B.push_back(-s / c);
    }
    return B[n];
}

CycPoint CycPoint::make(const mpq_class& q) {
    CycPoint r;
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class red;
    mpz_fdiv_r(red.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    r.frac = mpq_class(red, den);
    r.frac.canonicalize();
    if (!r.frac.get_den().fits_sint_p() || r.frac.get_den() > 100000)
        throw PreconditionError("CycPoint: order too large");
    r.order = static_cast<int>(r.frac.get_den().get_si());
    return r;
}

CycElem CycExpansion::e_star(int b) const {
    if (b < 1 || b > static_cast<int>(coeffs.size())) throw std::out_of_range("e_star: index beyond expansion");
    return (b % 2 == 1) ? coeffs[b - 1] : -coeffs[b - 1];
}

CycExpansion g_expand(const CycPoint& z0, int N) {
    if (N < 1) throw PreconditionError("g_expand: N must be positive");
    int f = z0.order;
    CycElem zero(f);
    int ord = N + 2;
    std::vector<CycElem> e;
    mpz_class fact = 1;
    for (int k = 0; k < ord; ++k) {
        if (k) fact *= k;
        e.push_back(CycElem(f, mpq_class(1) / mpq_class(fact)));
    }
    PowerSeries<CycElem> E(zero, 0, e, ord);
    CycElem t0 = CycElem::zeta_pow(f, z0.frac.get_num().get_si());
    PowerSeries<CycElem> num = E.scale(t0);
    PowerSeries<CycElem> den = num - PowerSeries<CycElem>::constant(CycElem(f, 1), ord);
    PowerSeries<CycElem> g = num * den.normalized().inv() - PowerSeries<CycElem>::constant(CycElem(f, mpq_class(1, 2)), ord);
    CycExpansion out;
    out.f = f;
    out.delta = !g.coeff(-1).is_zero();
    for (int k = 0; k < N; ++k) out.coeffs.push_back(g.coeff(k));
    return out;
}

namespace {

// log2 of the Euler-Maclaurin remainder bound for m correction terms at a
double em_log2_bound(int b, double a, int m) {
    double s = 2.0 - 2.0 * m * std::log2(2 * M_PI) - (b + 2 * m - 1) * std::log2(a);
    for (int i = 0; i < 2 * m - 1; ++i) s += std::log2(b + i);
    return s;
}

// Σ_{k≥0} (k + a)^-b with a large; the b = 1 integral term is -log a.
ComplexBall em_tail(int b, const mpq_class& a, int m, mpfr_prec_t prec) {
    ComplexBall A = ComplexBall::from_q(a, prec);
    ComplexBall Ainv = A.inv();
    ComplexBall s = (b == 1) ? -log_pos(A) : A.pow(1 - b).mul_q(mpq_class(1, b - 1));
    ComplexBall Ab = Ainv.pow(b);
    s += Ab.mul_2si(-1);
    // Σ B_{2j}/(2j)! · (b)_{2j-1} · a^{-b-2j+1}
    ComplexBall term = Ab * A;   // a^{-b+1}, stepped by a^-2
    ComplexBall Ainv2 = Ainv.sqr();
    mpq_class rising = 1;        // (b)_{2j-1}
    mpz_class fact = 1;          // (2j)!
    for (int j = 1; j <= m; ++j) {
        term *= Ainv2;
        rising *= (j == 1) ? mpq_class(b) : mpq_class((b + 2 * j - 3) * (b + 2 * j - 2));
        fact *= (2 * j - 1) * (2 * j);
        s += term.mul_q(bernoulli(2 * j) * rising / mpq_class(fact));
    }
    // |R_m| ≤ 4 (2π)^{-2m} (b)_{2m-1} a^{-b-2m+1}
    ComplexBall twopi = ComplexBall::pi(64).mul_2si(1);
    ComplexBall bound = twopi.pow(-2 * m).mul_q(4 * rising) * ComplexBall::from_q(a, 64).pow(-(b + 2 * m - 1));
    s.add_error(bound.abs_upper());
    return s;
}

}  // namespace

ComplexBall hurwitz_sum(int b, const mpq_class& a, mpfr_prec_t prec) {
    if (b < 1) throw PreconditionError("hurwitz_sum: b must be positive");
    if (a <= 0) throw PreconditionError("hurwitz_sum: a must be positive");
    mpfr_prec_t wp = prec + 32;
    double target = -static_cast<double>(prec) - 8;
    // shift a until some m reaches the target
    long K = 0;
    int m = 0;
    for (;;) {
        double aa = a.get_d() + K;
        int best = -1;
        for (int mm = 1; mm < 4 * static_cast<int>(aa) + 4; ++mm)
            if (em_log2_bound(b, aa, mm) < target) { best = mm; break; }
        if (best > 0) { m = best; break; }
        K = std::max(2 * K, 16L);
    }
    ComplexBall s(wp);
    for (long k = 0; k < K; ++k) s += ComplexBall::from_q(a + k, wp).inv().pow(b);
    s += em_tail(b, a + K, m, wp);
    return s.with_prec(prec);
}

ComplexBall e_star_direct(const CycPoint& z0, int b, int R, mpfr_prec_t prec) {
    if (b < 1) throw PreconditionError("e_star_direct: b must be positive");
    if (R < 0) throw PreconditionError("e_star_direct: R must be nonnegative");
    mpfr_prec_t wp = prec + 32;
    const mpq_class& q = z0.frac;
    ComplexBall s(wp);
    for (long n = -R; n <= R; ++n) {
        mpq_class x = q + n;
        if (x == 0) continue;
        s += ComplexBall::from_q(x, wp).inv().pow(b);
    }
    ComplexBall hi = hurwitz_sum(b, q + R + 1, wp);
    ComplexBall lo = hurwitz_sum(b, mpq_class(R + 1) - q, wp);
    s += (b % 2 == 0) ? hi + lo : hi - lo;
    ComplexBall twopii = ComplexBall::pi(wp).mul_2si(1) * ComplexBall::i(wp);
    return (s * twopii.pow(-b)).with_prec(prec);
}

CycMeasure cyc_measure_series(const CycPoint& z0, int N, const mpz_class& p) {
    CycExpansion g = g_expand(z0, N + 2);
    int f = z0.order;
    CycElem zero(f);
    std::vector<CycElem> gc = g.coeffs;
    PowerSeries<CycElem> G(zero, 0, gc, N + 2);
    if (g.delta) G.set_coeff(-1, CycElem(f, 1));
    std::vector<CycElem> lc;
    for (int k = 1; k <= N + 1; ++k) lc.push_back(CycElem(f, mpq_class(k % 2 ? 1 : -1, k)));
    PowerSeries<CycElem> L(zero, 1, lc, N + 2);
    CycMeasure out{z0, G.compose(L).truncate(N + 1), 0};
    for (int k = 0; k <= N; ++k)
        out.worst_p_denominator = std::max(out.worst_p_denominator, out.series.coeff(k).p_denominator_exponent(p));
    return out;
}

std::vector<MomentCheck> cyc_moment_checks(const CycPoint& z0, int N) {
    if (z0.frac == 0) throw PreconditionError("moments: z0 must not be a lattice point");
    CycMeasure mu = cyc_measure_series(z0, N, 2);
    CycExpansion g = g_expand(z0, N);
    std::vector<MomentCheck> out;
    PowerSeries<CycElem> s = mu.series;
    mpz_class fact = 1;
    for (int b = 1; b <= N; ++b) {
        if (b > 1) fact *= b - 1;
        CycElem lhs = s.coeff(0);
        CycElem rhs = g.e_star(b) * CycElem(z0.order, mpq_class(b % 2 ? fact : mpz_class(-fact)));
        out.push_back({b, lhs, rhs, lhs == rhs});
        s = s.dlog_operator();
    }
    return out;
}

bool DirichletChar::is_even() const { return arg[modulus - 1] == 0 || modulus <= 2; }

CycElem DirichletChar::value(int n) const {
    int r = ((n % modulus) + modulus) % modulus;
    if (!unit[r]) return CycElem(1, 0);
    const mpq_class& a = arg[r];
    return CycElem::zeta_pow(static_cast<int>(a.get_den().get_si()), a.get_num().get_si());
}

std::string DirichletChar::label() const {
    std::ostringstream os;
    os << "chi_" << modulus << "_" << index;
    return os.str();
}

std::vector<DirichletChar> dirichlet_characters(int f) {
    if (f < 1) throw PreconditionError("dirichlet_characters: modulus must be positive");
    // cyclic factors of (Z/f)^×
    std::vector<std::pair<int, int>> comps;  // (generator mod f, order)
    auto crt_lift = [f](int g, int pe) {
        // x ≡ g mod pe, x ≡ 1 mod f/pe
        int rest = f / pe;
        for (int x = 1; x < f || f == 1; ++x)
            if (x % pe == ((g % pe) + pe) % pe && x % rest == 1 % rest) return x;
        return 1;
    };
    int n = f;
    for (int p = 2; n > 1; ++p) {
        if (n % p) continue;
        int pe = 1, e = 0;
        while (n % p == 0) { n /= p; pe *= p; ++e; }
        if (p == 2) {
            if (e >= 2) comps.push_back({crt_lift(pe - 1, pe), 2});
            if (e >= 3) comps.push_back({crt_lift(5, pe), pe / 4});
            continue;
        }
        int ph = pe / p * (p - 1);
        for (int g = 2; g < pe; ++g) {
            if (g % p == 0) continue;
            int o = 1;
            long x = g;
            while (x != 1) { x = x * g % pe; ++o; }
            if (o == ph) { comps.push_back({crt_lift(g, pe), ph}); break; }
        }
    }
    // discrete logs by enumeration
    std::vector<std::vector<int>> dlog(f);
    std::vector<bool> unit(f, false);
    std::vector<int> idx(comps.size(), 0);
    for (;;) {
        long x = 1 % f;
        for (size_t i = 0; i < comps.size(); ++i)
            for (int k = 0; k < idx[i]; ++k) x = x * comps[i].first % f;
        dlog[x] = idx;
        unit[x] = true;
        size_t i = 0;
        while (i < comps.size() && ++idx[i] == comps[i].second) idx[i++] = 0;
        if (i == comps.size()) break;
    }
    std::vector<DirichletChar> out;
    std::vector<int> ex(comps.size(), 0);
    for (int index = 0;; ++index) {
        DirichletChar c;
        c.modulus = f;
        c.index = index;
        for (auto& [g, o] : comps) { c.gens.push_back(g); c.gen_orders.push_back(o); }
        c.exps = ex;
        c.unit = unit;
        c.arg.assign(f, 0);
        for (int r = 0; r < f; ++r) {
            if (!unit[r]) continue;
            mpq_class a = 0;
            for (size_t i = 0; i < comps.size(); ++i) a += mpq_class(ex[i] * dlog[r][i], comps[i].second);
            mpz_class num = a.get_num(), den = a.get_den();
            mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            c.arg[r] = mpq_class(num, den);
            c.arg[r].canonicalize();
        }
        c.conductor = f;
        for (int d = 1; d <= f; ++d) {
            if (f % d) continue;
            bool triv = true;
            for (int r = 0; r < f && triv; ++r)
                if (unit[r] && r % d == 1 % d && c.arg[r] != 0) triv = false;
            if (triv) { c.conductor = d; break; }
        }
        out.push_back(std::move(c));
        size_t i = 0;
        while (i < comps.size() && ++ex[i] == comps[i].second) ex[i++] = 0;
        if (i == comps.size()) break;
    }
    return out;
}

DirichletCheck dirichlet_L_check(const DirichletChar& chi, int b, mpfr_prec_t prec) {
    if (b < 1) throw PreconditionError("dirichlet_L_check: b must be positive");
    if (chi.is_even() != (b % 2 == 0)) throw PreconditionError("dirichlet_L_check: parity of χ does not match b");
    int f = chi.modulus;
    mpfr_prec_t wp = prec + 32;
    ComplexBall lhs(wp), rhs(wp);
    for (int r = 1; r <= f; ++r) {
        if (!chi.unit[r % f]) continue;
        ComplexBall c = chi.value(r).embed(wp);
        lhs += c * hurwitz_sum(b, mpq_class(r, f), wp);
        CycExpansion g = g_expand(CycPoint::make(mpq_class(r, f)), b);
        rhs += c * g.e_star(b).embed(wp);
    }
    ComplexBall fb = ComplexBall::from_si(f, wp).pow(-b);
    lhs *= fb;
    ComplexBall twopii = ComplexBall::pi(wp).mul_2si(1) * ComplexBall::i(wp);
    rhs = rhs * twopii.pow(b) * fb.mul_2si(-1);
    DirichletCheck out{lhs.with_prec(prec), rhs.with_prec(prec), false};
    out.ok = out.lhs.overlaps(out.rhs);
    return out;
}

}  // namespace ekn
