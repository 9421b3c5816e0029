#include "ekn/formal.hpp"

#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <map>
#include <optional>

namespace ekn {

FormalCurve formal_expansions(const QuadElem& g2, const QuadElem& g3, int N) {
    if (N < 4) throw PreconditionError("formal_expansions: N ≥ 4 required");
    const QuadElem zero(g2.d());
    // x = t^-2·u, y = −2x/t; the curve equation becomes 4u²(u − 1) = g2·u·t⁴ + g3·t⁶.
    // With v = u − 1:  4v = g2·t⁴ + g2·v·t⁴ + g3·t⁶ − 8v² − 4v³.
    std::vector<QuadElem> v(N, zero), sq(N, zero), cu(N, zero);
    for (int k = 4; k < N; ++k) {
        QuadElem s = zero, c = zero;
        for (int j = 4; j <= k - 4; ++j) {
            s += v[j] * v[k - j];
            if (k - j >= 8) c += v[j] * sq[k - j];
        }
        sq[k] = s;
        cu[k] = c;
        QuadElem r = g2 * v[k - 4] - s * mpq_class(8) - c * mpq_class(4);
        if (k == 4) r += g2;
        if (k == 6) r += g3;
        v[k] = r * mpq_class(1, 4);
    }
    std::vector<QuadElem> u(v);
    u[0] = ring_one(zero);
    PowerSeries<QuadElem> us(zero, 0, u, N);
    PowerSeries<QuadElem> xt(zero, -2, u, N - 2);
    PowerSeries<QuadElem> yt = xt.mul_xk(-1).scale(ring_q(mpq_class(-2), zero));
    // λ' = x'/y = 1 − (t/2)·u'/u
    PowerSeries<QuadElem> q = (us.derivative() * us.inv()).mul_xk(1).scale(ring_q(mpq_class(-1, 2), zero));
    PowerSeries<QuadElem> lambda = (PowerSeries<QuadElem>::constant(ring_one(zero), N) + q).integral();
    FormalCurve fc{g2, g3, N, xt, yt, lambda};
    return fc;
}

PowerSeries<QuadElem> FormalCurve::residual() const {
    QuadElem four = ring_q(mpq_class(4), g2);
    PowerSeries<QuadElem> rhs = (xt * xt * xt).scale(four) - xt.scale(g2) - PowerSeries<QuadElem>::constant(g3, N);
    return yt * yt - rhs;
}

PowerSeries<QuadElem> theta_hat(const CMContext& ctx, const FormalCurve& fc, int N) {
    if (fc.N < N) throw PreconditionError("theta_hat: formal curve known to t^" + std::to_string(fc.N) + " only");
    return theta_series(ctx, N).compose(fc.lambda.truncate(N + 1)).truncate(N + 1);
}

namespace {

// 1/λ(s) − 1/s, a power series
PowerSeries<QuadElem> inverse_log_correction(const FormalCurve& fc) {
    PowerSeries<QuadElem> r = fc.lambda.mul_xk(-1).inv();   // (λ/s)^-1
    r = r - PowerSeries<QuadElem>::constant(ring_one(r.like()), r.order());
    return r.normalized().mul_xk(-1);
}

BiSeries<QuadElem> add_polar_corrections(BiSeries<QuadElem> R, const QuadElem& ps, const QuadElem& pt,
                                         const FormalCurve& fc) {
    PowerSeries<QuadElem> q = inverse_log_correction(fc);
    for (int i = 0; i < R.nz(); ++i) R(i, 0) += ps * q.coeff(i);
    for (int j = 0; j < R.nw(); ++j) R(0, j) += pt * q.coeff(j);
    return R;
}

}  // namespace

BiLaurentSeries<QuadElem> kronecker_theta_hat(const CMContext& ctx, const FormalCurve& fc, int N) {
    if (fc.N < N + 2) throw PreconditionError("kronecker_theta_hat: formal curve needs N + 2 terms");
    BiLaurentSeries<QuadElem> K = kronecker_theta_series(ctx, N);
    PowerSeries<QuadElem> lam = fc.lambda.truncate(N + 1);
    BiSeries<QuadElem> R = K.regular.truncate(N + 1, N + 1).compose(lam, lam);
    return {K.pole_z, K.pole_w, add_polar_corrections(R, K.pole_z, K.pole_w, fc)};
}

PadicEmbedding PadicEmbedding::make(long d, const mpz_class& p, long prec) {
    PadicEmbedding e;
    e.p = p;
    e.prec = prec;
    e.d = d;
    std::vector<Qp> roots = hensel_roots({mpz_class(d), 0, 1}, p, prec);
    if (roots.empty())
        throw std::invalid_argument("p = " + p.get_str() + " does not split in Q(sqrt(-" + std::to_string(d) + "))");
    e.sqrt_md = roots.front();
    for (const Qp& r : roots)
        if (r.residue_mod(1) < e.sqrt_md.residue_mod(1)) e.sqrt_md = r;
    return e;
}

Qp PadicEmbedding::operator()(const QuadElem& x) const {
    Qp r = Qp::from_q(x.re(), p, prec);
    if (x.im() != 0) {
        if (x.d() != d) throw std::invalid_argument("embedding: element of the wrong field");
        r += Qp::from_q(x.im(), p, prec) * sqrt_md;
    }
    return r;
}

namespace {

long vp(const mpz_class& z, const mpz_class& p) {
    if (z == 0) return kValInfinity;
    mpz_class t = z;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}
long vp(const mpq_class& q, const mpz_class& p) {
    if (q == 0) return kValInfinity;
    return vp(q.get_num(), p) - vp(q.get_den(), p);
}

}  // namespace

long valuation(const QuadElem& x, const PadicEmbedding& emb) {
    if (x.is_zero()) return kValInfinity;
    if (x.is_rational()) return vp(x.re(), emb.p);
    // scale to a p-integral element x' = p^-v x, one of whose coordinates is a unit
    long v = std::min(vp(x.re(), emb.p), vp(x.im(), emb.p));
    mpq_class s = 1;
    for (long k = 0; k < std::abs(v); ++k) s *= emb.p;
    if (v > 0) s = 1 / s;
    QuadElem xs = x * s;
    // v_𝔭(x') ≤ v_p(N x'), so that many digits decide it
    long need = vp(xs.norm(), emb.p) + 1;
    PadicEmbedding e = need > emb.prec ? PadicEmbedding::make(emb.d, emb.p, need) : emb;
    Qp y = e(xs);
    return v + (y.is_zero() ? need : y.valuation());
}

IntegralityScan scan_integrality(const PowerSeries<QuadElem>& f, int from, int to, const PadicEmbedding& emb) {
    IntegralityScan s;
    for (int k = from; k <= to; ++k) {
        long v = valuation(f.coeff(k), emb);
        ++s.checked;
        if (v < s.min_valuation) {
            s.min_valuation = v;
            s.worst_i = k;
        }
    }
    return s;
}

IntegralityScan scan_integrality(const BiSeries<QuadElem>& f, int max_total, const PadicEmbedding& emb) {
    IntegralityScan s;
    for (int i = 0; i <= max_total && i < f.nz(); ++i)
        for (int j = 0; i + j <= max_total && j < f.nw(); ++j) {
            long v = valuation(f(i, j), emb);
            ++s.checked;
            if (v < s.min_valuation) {
                s.min_valuation = v;
                s.worst_i = i;
                s.worst_j = j;
            }
        }
    return s;
}

namespace {

// e^{2πi q} as an element of K when it lies there (orders 1, 2, 4 for d = 1; 1, 2, 3, 6 for d = 3)
std::optional<QuadElem> root_of_unity(const mpq_class& q0, long d) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q0.get_num_mpz_t(), q0.get_den_mpz_t());
    mpq_class q = q0 - fl;   // q in [0, 1)
    const mpz_class& n = q.get_den();
    if (n == 1) return QuadElem(d, 1);
    if (n == 2) return QuadElem(d, -1);
    if (d == 1 && n == 4) return QuadElem(1, 0, q == mpq_class(1, 4) ? 1 : -1);
    if (d == 3 && (n == 3 || n == 6)) {
        // e^{2πi k/6} = cos + i sin, with √−3 = i√3
        int k = static_cast<int>(mpz_class(q * 6).get_si());
        static const mpq_class re[6] = {1, mpq_class(1, 2), mpq_class(-1, 2), -1, mpq_class(-1, 2), mpq_class(1, 2)};
        static const mpq_class im[6] = {0, mpq_class(1, 2), mpq_class(1, 2), 0, mpq_class(-1, 2), mpq_class(-1, 2)};
        return QuadElem(3, re[k], im[k]);
    }
    return std::nullopt;
}

long torsion_order(const TorsionPoint& a, const TorsionPoint& b) {
    mpz_class n = 1;
    for (const mpq_class* c : {&a.c1, &a.c2, &b.c1, &b.c2}) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), c->get_den_mpz_t());
    return n.get_si();
}

}  // namespace

TranslatedThetaHat translated_theta_hat(const CMContext& ctx, const FormalCurve& fc, const TorsionPoint& z0,
                                        const TorsionPoint& w0, int N, const mpz_class& p) {
    if (torsion_order(z0, w0) % p == 0) throw PreconditionError("translated_theta_hat: p divides the torsion order");
    if (fc.N < N + 2) throw PreconditionError("translated_theta_hat: formal curve needs N + 2 terms");
    TranslatedThetaHat out;
    out.z0 = z0;
    out.w0 = w0;
    MumfordTranslation mt = mumford_translation(z0, w0, 64);
    out.root_factor_exponent = mt.exponent;

    std::map<long, EKExpansion> cache;
    auto expansion = [&](long bits) -> const EKExpansion& {
        auto it = cache.find(bits);
        if (it == cache.end())
            it = cache.emplace(bits, ek_expansion(fixture(ctx.name, bits + 64), z0, w0, N + 1, N + 1, bits)).first;
        return it->second;
    };
    auto normalised = [&](long bits, int i, int j) {
        return expansion(bits).table(i, j) / mumford_factor(z0, w0, bits);
    };

    const QuadElem zero(ctx.d);
    BiSeries<QuadElem> R(zero, N + 1, N + 1);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) {
            bool done = false;
            for (long bits : {512L, 1024L, 2048L}) {
                ComplexBall x = normalised(bits, i, j);
                AlgebraicGuess g = recognize_algebraic(x, 2);
                if (!g.found) continue;
                std::optional<QuadElem> v = g.in_field(ctx.d);
                if (!v) continue;
                if (!v->embed(bits).overlaps(x)) v = v->conj();
                ComplexBall x2 = normalised(2 * bits, i, j);
                if (!certify(g, x2) || !g.certified || !v->embed(2 * bits).overlaps(x2)) continue;
                R(i, j) = *v;
                out.bits_used = std::max(out.bits_used, bits);
                done = true;
                break;
            }
            if (!done)
                throw RecognitionFailure(i, j, "coefficient of z^" + std::to_string(i) + " w^" + std::to_string(j) +
                                                   " not recognised in K up to 2048 bits");
        }

    // polar parts: ⟨w0,z0⟩δ_{z0} and δ_{w0}, divided by the root factor
    const EKExpansion& E = expansion(512);
    out.pole_s = zero;
    out.pole_t = zero;
    if (E.delta_z) {
        auto r = root_of_unity(pairing_exponent(w0, z0) - mt.exponent, ctx.d);
        if (!r) throw RecognitionFailure(-1, 0, "residue in z is not a root of unity of K");
        out.pole_s = *r;
    }
    if (E.delta_w) {
        auto r = root_of_unity(-mt.exponent, ctx.d);
        if (!r) throw RecognitionFailure(0, -1, "residue in w is not a root of unity of K");
        out.pole_t = *r;
    }
    ComplexBall rf = mumford_factor(z0, w0, 512);
    if (!(out.pole_s.embed(512) * rf).overlaps(E.pair_pole_z) || !(out.pole_t.embed(512) * rf).overlaps(E.pole_w))
        throw std::logic_error("translated_theta_hat: residues disagree with the expansion");

    out.z_w_table = R;
    PowerSeries<QuadElem> lam = fc.lambda.truncate(N + 1);
    out.series = add_polar_corrections(R.compose(lam, lam), out.pole_s, out.pole_t, fc);
    return out;
}

}  // namespace ekn
