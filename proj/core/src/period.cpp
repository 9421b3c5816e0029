#include "ekn/formal.hpp"

namespace ekn {

namespace {

long log_p_floor(long n, const mpz_class& p) {
    long k = 0;
    for (mpz_class q = p; q <= n; q *= p) ++k;
    return k;
}

// working precision for coefficients through t^D: exp divides by n ≤ D
long working_prec(long m, long D, const mpz_class& p) {
    long s = 0;
    for (mpz_class q = p; q <= D; q *= p) s += D / q.get_si();
    return m + s + 2 * log_p_floor(D, p) + 4;
}

// first n ≤ D at which exp(f) has a non-integral coefficient, or 0
int exp_failure(const std::vector<Qp>& f, int D) {
    const mpz_class& p = f[1].p();
    long W = f[1].abs_prec();
    std::vector<Qp> e(D + 1, Qp::from_q(0, p, W));
    e[0] = Qp::from_q(1, p, W);
    for (int n = 1; n <= D; ++n) {
        Qp s = Qp::from_q(0, p, W);
        for (int k = 1; k <= n; ++k)
            if (!f[k].is_zero()) s += f[k] * e[n - k] * Qp::from_q(k, p, W);
        e[n] = s * Qp::from_q(mpq_class(1, n), p, W);
        if (!e[n].is_zero() && e[n].valuation() < 0) return n;
    }
    return 0;
}

PadicPeriod solve_levels(const std::vector<Qp>& lam, const mpz_class& p, long m, int check_degree) {
    PadicPeriod out;
    out.p = p;
    out.m = m;
    long W = lam[1].abs_prec();
    mpz_class omega = 0, pk = 1;
    for (long k = 1; k <= m; ++k) {
        mpz_class pk1 = pk;
        pk *= p;
        int D = pk > check_degree ? check_degree : static_cast<int>(pk.get_si());
        bool found = false;
        for (long d = (k == 1 ? 1 : 0); d < p && !found; ++d) {
            mpz_class c = omega + d * pk1;
            Qp ci = Qp::from_q(mpq_class(c), p, W).inv();
            std::vector<Qp> f(D + 1, Qp::from_q(0, p, W));
            for (int n = 1; n <= D; ++n) f[n] = lam[n] * ci;
            if (exp_failure(f, D) == 0) {
                omega = c;
                found = true;
            }
        }
        if (!found)
            throw OmegaNotInZp("no Ω ∈ Z_p^× mod p^" + std::to_string(k) + " makes exp(λ/Ω) − 1 integral through t^" +
                               std::to_string(D) + " (p = " + p.get_str() + ")");
    }
    Qp ci = Qp::from_q(mpq_class(omega), p, W).inv();
    std::vector<Qp> f(check_degree + 1, Qp::from_q(0, p, W));
    for (int n = 1; n <= check_degree; ++n) f[n] = lam[n] * ci;
    if (int bad = exp_failure(f, check_degree))
        throw OmegaNotInZp("Ω = " + omega.get_str() + " fails at t^" + std::to_string(bad));
    out.in_Zp = true;
    out.omega = Qp::from_q(mpq_class(omega), p, m);
    out.validated_through = check_degree;
    return out;
}

std::vector<Qp> embed_lambda(const FormalCurve& fc, const PadicEmbedding& emb, int D, long W) {
    if (fc.N < D) throw PreconditionError("λ known through t^" + std::to_string(fc.N) + " only");
    PadicEmbedding e = PadicEmbedding::make(emb.d, emb.p, W);
    std::vector<Qp> lam(D + 1, Qp::from_q(0, emb.p, W));
    for (int n = 1; n <= D; ++n) lam[n] = e(fc.lambda.coeff(n));
    return lam;
}

}  // namespace

PadicPeriod solve_omega_p(const PowerSeries<mpq_class>& lambda, const mpz_class& p, long m, int check_degree) {
    if (lambda.order() <= check_degree) throw PreconditionError("solve_omega_p: λ too short");
    long W = working_prec(m, check_degree, p);
    std::vector<Qp> lam(check_degree + 1, Qp::from_q(0, p, W));
    for (int n = 1; n <= check_degree; ++n) lam[n] = Qp::from_q(lambda.coeff(n), p, W);
    return solve_levels(lam, p, m, check_degree);
}

PadicPeriod solve_omega_p(const FormalCurve& fc, const PadicEmbedding& emb, long m, int check_degree) {
    return solve_levels(embed_lambda(fc, emb, check_degree, working_prec(m, check_degree, emb.p)), emb.p, m,
                        check_degree);
}

long count_points(const QuadElem& g2, const QuadElem& g3, const PadicEmbedding& emb) {
    const mpz_class& p = emb.p;
    mpz_class a = emb(g2).residue_mod(1), b = emb(g3).residue_mod(1);
    long n = 1;
    for (mpz_class x = 0; x < p; ++x) {
        mpz_class r = (4 * x * x * x - a * x - b) % p;
        if (r < 0) r += p;
        n += 1 + mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
    }
    return n;
}

Qp alpha_from_logarithm(const FormalCurve& fc, const PadicEmbedding& emb, int k) {
    // λ_{p^k} − (α/p)·λ_{p^{k−1}} ∈ Z_p with p^{k−1}λ_{p^{k−1}} a unit
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), emb.p.get_mpz_t(), k);
    if (pk > fc.N) throw PreconditionError("alpha_from_logarithm: λ known through t^" + std::to_string(fc.N) + " only");
    PadicEmbedding e = PadicEmbedding::make(emb.d, emb.p, 3 * k + 4);
    Qp hi = e(fc.lambda.coeff(static_cast<int>(pk.get_si())));
    Qp lo = e(fc.lambda.coeff(static_cast<int>(pk.get_si() / emb.p.get_si())));
    if (lo.valuation() != -(k - 1)) throw std::domain_error("alpha_from_logarithm: λ is not of height one at p");
    return (hi / lo * Qp::from_q(mpq_class(emb.p), emb.p, 3 * k + 4)).with_abs_prec(k);
}

PadicPeriod frobenius_period(const FormalCurve& fc, const PadicEmbedding& emb, long m, int check_degree) {
    const mpz_class& p = emb.p;
    PadicPeriod out;
    try {
        out = solve_omega_p(fc, emb, m, check_degree);
    } catch (const OmegaNotInZp&) {
        out = PadicPeriod{};
        out.p = p;
        out.m = m;
    }
    out.a_p = p.get_si() + 1 - count_points(fc.g2, fc.g3, emb);
    if (out.a_p % p.get_si() == 0) throw std::domain_error("supersingular at p = " + p.get_str());
    for (const Qp& r : hensel_roots({p, mpz_class(-out.a_p), 1}, p, m))
        if (r.valuation() == 0) out.alpha = r;

    long k = log_p_floor(fc.N, p);
    if (k >= 1) {
        long kk = std::min<long>(k, m);
        if (!alpha_from_logarithm(fc, emb, static_cast<int>(kk)).equals(out.alpha.with_abs_prec(kk)))
            throw std::logic_error("frobenius_period: α from point counting disagrees with λ");
    }
    // Dwork: λ(t) − (α/p)·λ(t^p) ∈ Z_p[[t]]
    long W = working_prec(m, check_degree, p);
    std::vector<Qp> lam = embed_lambda(fc, emb, check_degree, W);
    Qp ap = out.alpha * Qp::from_q(mpq_class(1) / p, p, W);
    for (int n = 1; n <= check_degree; ++n) {
        Qp c = lam[n];
        if (n % p.get_si() == 0) c -= ap * lam[n / p.get_si()];
        if (!c.is_zero() && c.valuation() < 0)
            throw std::logic_error("frobenius_period: Dwork relation fails at t^" + std::to_string(n));
    }
    out.validated_through = check_degree;
    return out;
}

PowerSeries<mpq_class> to_rational(const PowerSeries<QuadElem>& f) {
    std::vector<mpq_class> c;
    for (int k = f.val(); k < f.order(); ++k) {
        QuadElem x = f.coeff(k);
        if (!x.is_rational()) throw std::domain_error("to_rational: irrational coefficient at t^" + std::to_string(k));
        c.push_back(x.re());
    }
    return PowerSeries<mpq_class>(mpq_class(0), f.val(), std::move(c), f.order());
}

PowerSeries<OmegaPoly> to_omega(const PowerSeries<mpq_class>& f) {
    std::vector<OmegaPoly> c;
    for (int k = f.val(); k < f.order(); ++k) c.push_back(OmegaPoly(f.coeff(k)));
    return PowerSeries<OmegaPoly>(OmegaPoly(), f.val(), std::move(c), f.order());
}

PowerSeries<OmegaPoly> eta_symbolic(const FormalCurve& fc, int N) {
    PowerSeries<OmegaPoly> f = to_omega(to_rational(fc.lambda.truncate(N + 1))).scale(OmegaPoly::omega(-1));
    PowerSeries<OmegaPoly> e = f.exp();
    return e - PowerSeries<OmegaPoly>::constant(OmegaPoly(1), e.order());
}

PowerSeries<OmegaPoly> iota_symbolic(const FormalCurve& fc, int N) {
    PowerSeries<mpq_class> inv = to_rational(fc.lambda.truncate(N + 1)).reverse();
    std::vector<mpq_class> l;
    for (int k = 1; k <= N; ++k) l.push_back(mpq_class(k % 2 ? 1 : -1, k));
    PowerSeries<mpq_class> log1p(mpq_class(0), 1, l, N + 1);
    return to_omega(inv).compose(to_omega(log1p).scale(OmegaPoly::omega(1)));
}

}  // namespace ekn
