#include "ekn/theta.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace ekn {

namespace {

// σ(z)/z = exp(−Σ_k c_k z^{2k}/(2k(2k−1))) through z^{N−1}
template <class C>
PowerSeries<C> sigma_over_z(const C& g2, const C& g3, int N) {
    C zero = ring_zero(g2);
    std::vector<C> c = weierstrass_c(g2, g3, N / 2 + 1);
    PowerSeries<C> L(zero, 0, {}, N);
    for (int k = 2; 2 * k < N; ++k)
        L.set_coeff(2 * k, -(c[k] * ring_q(mpq_class(1, 2 * k * (2 * k - 1)), zero)));
    return L.exp();
}

template <class C>
PowerSeries<C> theta_from(const C& g2, const C& g3, const C& e2, int N) {
    C zero = ring_zero(g2);
    PowerSeries<C> s = sigma_over_z(g2, g3, N).mul_xk(1);
    if (RingOps<C>::is_zero(e2)) return s;
    PowerSeries<C> q(zero, 0, {}, N + 1);
    q.set_coeff(2, -(e2 * ring_q(mpq_class(1, 2), zero)));
    return (q.exp() * s).truncate(N + 1);
}

}  // namespace

PowerSeries<QuadElem> sigma_series(const CMContext& ctx, int N) {
    if (N < 1) throw PreconditionError("sigma_series: N must be positive");
    return sigma_over_z(ctx.g2, ctx.g3, N).mul_xk(1);
}

PowerSeries<QuadElem> theta_series(const CMContext& ctx, int N) {
    if (N < 1) throw PreconditionError("theta_series: N must be positive");
    return theta_from(ctx.g2, ctx.g3, ctx.e2star, N);
}

BiLaurentSeries<QuadElem> kronecker_theta_series(const CMContext& ctx, int N) {
    if (N < 1) throw PreconditionError("kronecker_theta_series: N must be positive");
    int n = N + 2;
    PowerSeries<QuadElem> T = theta_series(ctx, 2 * n);
    QuadElem zero(ctx.d);
    PowerSeries<QuadElem> tt(zero, 0, {}, 2 * n);
    for (int k = 1; k <= 2 * n; ++k) tt.set_coeff(k - 1, T.coeff(k));
    PowerSeries<QuadElem> ti = tt.inv();
    using BS = BiSeries<QuadElem>;
    BS P = BS::from_sum(T, n, n) * BS::from_z(ti, n, n) * BS::from_w(ti, n, n);
    std::vector<QuadElem> mixed;
    auto out = BiLaurentSeries<QuadElem>::divide_monomial(P, 1, 1, &mixed);
    for (const auto& x : mixed)
        if (!x.is_zero()) throw std::logic_error("kronecker_theta_series: mixed polar term");
    out.regular = out.regular.truncate(N + 1, N + 1);
    return out;
}

std::vector<ComplexBall> theta_coeffs_ball(const CMContext& ctx, int N, mpfr_prec_t prec) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, mpfr_prec_t, int>, std::vector<ComplexBall>> cache;
    auto key = std::make_tuple(ctx.name, prec, N);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    PowerSeries<ComplexBall> t = theta_from(ctx.g2.embed(prec), ctx.g3.embed(prec), ctx.e2star.embed(prec), N);
    std::vector<ComplexBall> a;
    for (int k = 0; k <= N; ++k) a.push_back(t.coeff(k));
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = a;
    return a;
}

namespace {

double half_diagonal(const Lattice& L) {
    return 0.5 * (L.omega1.abs_upper().to_d() + L.omega2.abs_upper().to_d()) * (1 + 1e-12);
}

// Σ_{k>K} (e/(kA))^{k/2} ρ^k, rigorous upper bound
Real cauchy_tail(int K, const ComplexBall& A64, double rho) {
    ComplexBall lr = log_pos(ComplexBall::from_q(mpq_class(rho), 64));
    Real total(64), prev(64);
    for (int k = K + 1;; ++k) {
        ComplexBall kA = A64.mul_q(k);
        ComplexBall ex = (ComplexBall::from_si(1, 64) - log_pos(kA)).mul_q(mpq_class(k, 2)) + lr.mul_q(k);
        Real t = exp(ex).abs_upper();
        total = mag_add(total, t);
        if (k > K + 1 && mag_le(t, mag_div(prev, Real::from_si(2))) && t.exponent() < total.exponent() - 60)
            return mag_add(total, t);
        prev = t;
    }
}

double log2_cauchy_term(int k, double A, double rho) {
    return (0.5 * k * (1 - std::log(k * A)) + k * std::log(rho)) / M_LN2;
}

}  // namespace

Real theta_growth_bound(const CMContext& ctx, const std::vector<ComplexBall>& a) {
    double RF = half_diagonal(ctx.lattice);
    Real S(64);
    Real rk = Real::from_si(1);
    Real rf = Real::from_q(mpq_class(RF), 64, MPFR_RNDU);
    for (const auto& x : a) {
        S = mag_add(S, mag_mul(x.abs_upper(), rk));
        rk = mag_mul(rk, rf);
    }
    ComplexBall A64 = ctx.lattice.A.with_prec(64);
    Real eps = cauchy_tail(static_cast<int>(a.size()) - 1, A64, RF);
    if (!mag_le(eps, Real::from_d(0.5))) throw std::runtime_error("theta_growth_bound: too few coefficients");
    // M0 ≤ S + eps·M0
    Real one_minus(64);
    mpfr_ui_sub(one_minus.get(), 1, eps.get(), MPFR_RNDD);
    return mag_div(S, one_minus);
}

namespace {

int choose_K(double A, double rho, mpfr_prec_t wp, int Kmin) {
    int K = std::max(Kmin, 40);
    while (!(log2_cauchy_term(K + 1, A, rho) < -static_cast<double>(wp) - 40 &&
             log2_cauchy_term(K + 2, A, rho) < log2_cauchy_term(K + 1, A, rho) - 1))
        K += 8;
    return K;
}

}  // namespace

ComplexBall theta_eval(const CMContext& ctx, const ComplexBall& z, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 64;
    double rho = std::max(z.abs_upper().to_d() * (1 + 1e-12), 1.0);
    int K = choose_K(ctx.lattice.A.re().to_d(), rho, wp, 8);
    std::vector<ComplexBall> a = theta_coeffs_ball(ctx, K, wp);
    Real err = mag_mul(theta_growth_bound(ctx, a), cauchy_tail(K, ctx.lattice.A.with_prec(64), rho));
    ComplexBall zz = z.with_prec(wp), acc = a[K];
    for (int k = K - 1; k >= 0; --k) acc = acc * zz + a[k];
    acc.add_error(err);
    return acc.with_prec(prec);
}

ComplexBall kronecker_theta_eval(const CMContext& ctx, const ComplexBall& z, const ComplexBall& w, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    ComplexBall r = theta_eval(ctx, z + w, wp) / (theta_eval(ctx, z, wp) * theta_eval(ctx, w, wp));
    return r.with_prec(prec);
}

PowerSeries<ComplexBall> theta_shift(const CMContext& ctx, const TorsionPoint& c, int J, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 64;
    const Lattice& L = ctx.lattice;
    ComplexBall zero(wp);
    // c = c_red + γ, c_red coordinates in [−1/2, 1/2]
    mpz_class m, n;
    mpq_class h(1, 2);
    mpz_fdiv_q(m.get_mpz_t(), mpq_class(c.c1 + h).get_num_mpz_t(), mpq_class(c.c1 + h).get_den_mpz_t());
    mpz_fdiv_q(n.get_mpz_t(), mpq_class(c.c2 + h).get_num_mpz_t(), mpq_class(c.c2 + h).get_den_mpz_t());
    TorsionPoint cr = TorsionPoint::make(c.c1 - m, c.c2 - n);
    Lattice Lw{L.omega1.with_prec(wp), L.omega2.with_prec(wp), L.A.with_prec(wp)};
    ComplexBall cv = cr.value(Lw);

    PowerSeries<ComplexBall> B(zero, 0, {}, J);
    if (cr.c1 == 0 && cr.c2 == 0) {
        std::vector<ComplexBall> a = theta_coeffs_ball(ctx, J, wp);
        for (int j = 0; j < J; ++j) B.set_coeff(j, a[j]);
    } else {
        double rho = 1 + cv.abs_upper().to_d() * (1 + 1e-12);
        int K = choose_K(L.A.re().to_d(), rho, wp, J + 8);
        std::vector<ComplexBall> a = theta_coeffs_ball(ctx, K, wp);
        Real M0 = theta_growth_bound(ctx, a);
        Real err = mag_mul(M0, cauchy_tail(K, L.A.with_prec(64), rho));
        // b_j = Σ_k a_k C(k,j) c^{k−j}, by repeated synthetic division (Horner in c)
        std::vector<ComplexBall> b(a);
        for (int j = 0; j < J; ++j) {
            for (int k = K - 1; k >= j; --k) b[k] += b[k + 1] * cv;
            ComplexBall bj = b[j];
            bj.add_error(err);
            B.set_coeff(j, bj);
        }
    }
    if (m == 0 && n == 0) return B;
    // transformation law
    ComplexBall gam = Lw.omega1.mul_q(mpq_class(m)) + Lw.omega2.mul_q(mpq_class(n));
    ComplexBall gc = gam.conj();
    ComplexBall Ainv = Lw.A.inv();
    mpz_class par = m + n + m * n;
    long sign = mpz_odd_p(par.get_mpz_t()) ? -1 : 1;
    ComplexBall k0 = exp(cv * gc * Ainv + (gam * gc).real_part() * Ainv.mul_2si(-1)).mul_q(sign);
    PowerSeries<ComplexBall> lin(zero, 0, {}, J);
    lin.set_coeff(1, gc * Ainv);
    PowerSeries<ComplexBall> out = (lin.exp() * B).truncate(J).scale(k0);
    return out.map([&](const ComplexBall& x) { return x.with_prec(prec); });
}

ComplexBall EKExpansion::e_star(int a, int b) const {
    if (a < 0 || b < 1 || a > amax() || b > bmax()) throw std::out_of_range("e_star: cell outside the expansion");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), a);
    ComplexBall v = table(b - 1, a) * A.pow(a).mul_q(mpq_class(f));
    return ((a + b - 1) % 2) ? -v : v;
}

namespace {

// f/v for a series whose constant term is zero (checked)
PowerSeries<ComplexBall> div_v(const PowerSeries<ComplexBall>& f) {
    if (!f.coeff(0).contains(0)) throw std::logic_error("div_v: constant term does not vanish");
    ComplexBall zero = ring_zero(f.like());
    PowerSeries<ComplexBall> r(zero, 0, {}, f.order() - 1);
    for (int k = 1; k < f.order(); ++k) r.set_coeff(k - 1, f.coeff(k));
    return r;
}

}  // namespace

EKExpansion ek_expansion(const CMContext& ctx, const TorsionPoint& z0, const TorsionPoint& w0, int Nz, int Nw,
                         mpfr_prec_t prec) {
    if (Nz < 1 || Nw < 1) throw PreconditionError("ek_expansion: orders must be positive");
    bool Z = z0.in_lattice(), W = w0.in_lattice();
    TorsionPoint s = z0 + w0;
    if (s.in_lattice() && !Z && !W)
        throw DiagonalPoleError("z0 + w0 is a lattice point while z0, w0 are not: pole along z + w = 0");
    mpfr_prec_t wp = prec + 32;
    int ez = Z ? 1 : 0, ew = W ? 1 : 0;
    int nz = Nz + ez, nw = Nw + ew;
    using BS = BiSeries<ComplexBall>;
    PowerSeries<ComplexBall> T1 = theta_shift(ctx, s, nz + nw, wp);
    PowerSeries<ComplexBall> T2 = theta_shift(ctx, z0, nz + ez, wp);
    PowerSeries<ComplexBall> T3 = theta_shift(ctx, w0, nw + ew, wp);
    if (Z) T2 = div_v(T2);
    if (W) T3 = div_v(T3);
    BS P = BS::from_sum(T1, nz, nw) * BS::from_z(T2.inv(), nz, nw) * BS::from_w(T3.inv(), nz, nw);

    Lattice Lw{ctx.lattice.omega1.with_prec(wp), ctx.lattice.omega2.with_prec(wp), ctx.lattice.A.with_prec(wp)};
    ComplexBall zv = z0.value(Lw), wv = w0.value(Lw), Ainv = Lw.A.inv();
    ComplexBall zero(wp);
    PowerSeries<ComplexBall> lz(zero, 0, {}, nz), lw(zero, 0, {}, nw);
    lz.set_coeff(1, -(wv.conj() * Ainv));
    lw.set_coeff(1, -(zv.conj() * Ainv));
    ComplexBall k0 = exp(-(zv * wv.conj() * Ainv));
    P = (P * BS::from_z(lz.exp(), nz, nw) * BS::from_w(lw.exp(), nz, nw)).scale(k0);

    EKExpansion out;
    out.z0 = z0;
    out.w0 = w0;
    out.delta_z = Z;
    out.delta_w = W;
    auto lau = BiLaurentSeries<ComplexBall>::divide_monomial(P, ez, ew, &out.mixed);
    auto cut = [&](const ComplexBall& x) { return x.with_prec(prec); };
    out.pair_pole_z = cut(lau.pole_z);
    out.pole_w = cut(lau.pole_w);
    out.table = lau.regular.map(cut);
    for (auto& x : out.mixed) x = cut(x);
    out.A = ctx.lattice.A;
    return out;
}

}  // namespace ekn
