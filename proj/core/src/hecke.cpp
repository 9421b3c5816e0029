#include "ekn/measures.hpp"

#include "ekn/mumford.hpp"
#include "ekn/theta.hpp"

#include <map>

namespace ekn {

namespace {

// ω with O_K = Z[ω]; also ω2/ω1 for the fixture lattices
QuadElem ring_generator(long d) {
    if (d == 1) return QuadElem(1, 0, 1);
    if (d == 3) return QuadElem(3, mpq_class(-1, 2), mpq_class(1, 2));
    throw PreconditionError("only Q(i) and Q(sqrt(-3)) are supported");
}

std::vector<QuadElem> units(long d) {
    QuadElem w = ring_generator(d), u(d, 1);
    std::vector<QuadElem> r;
    int n = d == 1 ? 4 : 6;
    QuadElem g = d == 1 ? w : -(w * w);   // i, or a primitive 6th root −ρ²
    for (int k = 0; k < n; ++k, u = u * g) r.push_back(u);
    return r;
}

}  // namespace

bool HeckeCharacter::in_conductor(const QuadElem& x) const { return (x * conductor.inv()).is_integral(); }

long HeckeCharacter::conductor_norm() const { return mpz_class(conductor.norm()).get_si(); }

QuadElem HeckeCharacter::phi(const QuadElem& alpha) const {
    for (const QuadElem& u : units(d))
        if (in_conductor(alpha * u - QuadElem(d, 1))) return alpha * u;
    throw PreconditionError("phi: " + alpha.str() + " is not prime to the conductor");
}

HeckeCharacter fixture_character(const CMContext& ctx) {
    HeckeCharacter chi;
    chi.d = ctx.d;
    chi.conductor = ctx.conductor;
    const long d = ctx.d, N = chi.conductor_norm();
    QuadElem w = ring_generator(d);

    int ones = 0;
    for (const QuadElem& u : units(d))
        if (chi.in_conductor(u - QuadElem(d, 1))) ++ones;
    chi.w_f_check = ones == 1;
    if (!chi.w_f_check) throw std::logic_error("fixture character: w_f != 1");

    // residues of O_K/𝔣, then the invertible ones
    std::vector<QuadElem> all;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            QuadElem x = QuadElem(d, a) + w * mpq_class(b);
            bool seen = false;
            for (const QuadElem& y : all) seen = seen || chi.in_conductor(x - y);
            if (!seen) all.push_back(x);
        }
    if (static_cast<long>(all.size()) != N) throw std::logic_error("fixture character: residue count");
    for (const QuadElem& x : all) {
        bool inv = false;
        for (const QuadElem& y : all) inv = inv || chi.in_conductor(x * y - QuadElem(d, 1));
        if (inv) chi.residues.push_back(x);
    }
    for (const QuadElem& x : chi.residues) chi.values.push_back(chi.phi(x));

    for (size_t i = 0; i < chi.residues.size(); ++i) {
        if (chi.values[i].norm() != chi.residues[i].norm()) throw std::logic_error("fixture character: |phi|^2 != N");
        for (size_t j = 0; j < chi.residues.size(); ++j)
            if (chi.phi(chi.residues[i] * chi.residues[j]) != chi.values[i] * chi.values[j])
                throw std::logic_error("fixture character: not multiplicative");
    }
    // a_ℓ = Tr φ(𝔩) for small split ℓ of good reduction
    for (long l = 5; l < 60; ++l) {
        if (mpz_probab_prime_p(mpz_class(l).get_mpz_t(), 30) == 0) continue;
        if (N % l == 0) continue;
        PadicEmbedding e;
        try {
            e = PadicEmbedding::make(d, l, 2);
        } catch (const std::invalid_argument&) {
            continue;   // inert
        }
        std::optional<QuadElem> pi;
        for (long a = -l; a <= l && !pi; ++a)
            for (long b = -l; b <= l && !pi; ++b) {
                QuadElem x = QuadElem(d, a) + w * mpq_class(b);
                if (x.norm() == l) pi = x;
            }
        if (!pi) throw std::logic_error("fixture character: no generator of norm " + std::to_string(l));
        long a_l = l + 1 - count_points(ctx.g2, ctx.g3, e);
        if (chi.phi(*pi).trace() != a_l)
            throw std::logic_error("fixture character: a_" + std::to_string(l) + " != Tr phi");
    }
    return chi;
}

TorsionPoint character_point(const CMContext& ctx, const HeckeCharacter& chi, const QuadElem& value) {
    // φ(α)Ω = (φ(α)/f)·ω1 with Γ = Ω·f = ω1·O_K
    QuadElem c = value * chi.conductor.inv();
    TorsionPoint z = ctx.d == 1 ? TorsionPoint::make(c.re(), c.im()) : TorsionPoint::make(c.re() + c.im(), 2 * c.im());
    ComplexBall direct = value.embed(ctx.prec()) * ctx.Omega;
    if (!direct.overlaps(z.value(ctx.lattice))) throw std::logic_error("character_point: phi(alpha)*Omega is not in Gamma (x) Q");
    return z;
}

MeasureSeries mu_z0w0(const CMContext& ctx, const FormalCurve& fc, const PadicEmbedding& emb,
                      const TorsionPoint& z0, const TorsionPoint& w0, int N) {
    TranslatedThetaHat T = translated_theta_hat(ctx, fc, z0, w0, N, emb.p);
    MeasureSeries ms;
    ms.group = FormalGroup::elliptic(fc, emb.p, emb.prec);
    ms.degree = N;
    ms.series = BiSeries<Qp>(Qp::from_q(0, emb.p, emb.prec), N + 1, N + 1);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) {
            Qp x = emb(T.series(i, j));
            if (!x.is_zero() && x.valuation() < 0)
                throw std::domain_error("mu_z0w0: coefficient of s^" + std::to_string(i) + " t^" + std::to_string(j) +
                                        " is not p-integral");
            ms.series(i, j) = x;
        }
    ms.descriptor = "mu(" + z0.str() + "," + w0.str() + ")";
    return ms;
}

MeasureSeries mu_phi(const CMContext& ctx, const FormalCurve& fc, const PadicEmbedding& emb,
                     const HeckeCharacter& chi, int N) {
    if (!chi.w_f_check) throw PreconditionError("mu_phi: w_f != 1");
    if (chi.conductor_norm() % emb.p == 0) throw PreconditionError("mu_phi: p divides the conductor");
    // classes with the same point of Γ ⊗ Q / Γ give the same measure
    std::map<std::pair<mpq_class, mpq_class>, std::pair<TorsionPoint, long>> points;
    for (const QuadElem& v : chi.values) {
        TorsionPoint z = character_point(ctx, chi, v);
        auto key = std::make_pair(z.c1 - mpq_class(mpz_class(z.c1.get_num() / z.c1.get_den())),
                                  z.c2 - mpq_class(mpz_class(z.c2.get_num() / z.c2.get_den())));
        auto it = points.find(key);
        if (it == points.end())
            points.emplace(key, std::make_pair(z, 1L));
        else
            ++it->second.second;
    }
    std::optional<MeasureSeries> sum;
    const TorsionPoint o = TorsionPoint::make(0, 0);
    for (const auto& [key, zm] : points) {
        MeasureSeries m = scale(mu_z0w0(ctx, fc, emb, zm.first, o, N), zm.second);
        sum = sum ? *sum + m : m;
    }
    MeasureSeries r = rescale_second(*sum, chi.conductor_norm());
    r.descriptor = "mu_phi";
    return r;
}

HeckeLValues hecke_L_rhs(const CMContext& ctx0, const HeckeCharacter& chi, int a, int b, mpfr_prec_t prec) {
    if (a < 0 || b < 1) throw PreconditionError("hecke_L_rhs: a >= 0, b >= 1");
    CMContext ctx = fixture(ctx0.name, prec + 64);
    const TorsionPoint o = TorsionPoint::make(0, 0);
    HeckeLValues r;
    r.rhs = ComplexBall::from_si(0, prec + 64);
    ComplexBall ksum = ComplexBall::from_si(0, prec + 64);
    r.lhs_computed = b > a + 2;
    for (const QuadElem& v : chi.values) {
        TorsionPoint z = character_point(ctx, chi, v);
        r.rhs += ek_expansion(ctx, z, o, b, a + 1, prec).e_star(a, b);
        if (r.lhs_computed) ksum += K_ewald(a + b, z, o, b, ctx.lattice);
    }
    r.rhs = r.rhs / ctx.lattice.A.pow(a) * ComplexBall::from_si(chi.conductor_norm(), prec + 64).pow(a);
    if (r.lhs_computed) {
        // L = |Ω|^{2b}/Ω̄^{a+b} · Σ K_{a+b}(φ(α)Ω, 0, b)
        const ComplexBall& W = ctx.Omega;
        ComplexBall L = (W * W.conj()).pow(b) / W.conj().pow(a + b) * ksum;
        long dK = ctx.d == 1 ? 4 : 3;
        ComplexBall c = ComplexBall::pi(prec + 64).mul_2si(1) / sqrt_pos(ComplexBall::from_si(dK, prec + 64));
        r.lhs = c.pow(a) * L / W.pow(a + b);
    }
    return r;
}

YagerReport yager_check(const CMContext& ctx, const FormalCurve& fc, const PadicEmbedding& emb,
                        const HeckeCharacter& chi, int a, int b, int N) {
    if (a < 0 || b < 1) throw PreconditionError("yager_check: a >= 0, b >= 1");
    const mpz_class& p = emb.p;
    YagerReport rep;
    rep.a = a;
    rep.b = b;
    rep.p = p;

    MeasureSeries mu = restrict_to_units(mu_phi(ctx, fc, emb, chi, N), UnitVariable::Both, a + b - 1);
    PadicMoment mom = moments(mu, b - 1, a);
    rep.lhs_moment = mom.value;
    rep.omega_power = mom.omega_power;

    // N(𝔣)^a Σ e*/A^a, recognised in K
    std::optional<QuadElem> V;
    for (long bits : {512L, 1024L, 2048L}) {
        ComplexBall x = hecke_L_rhs(ctx, chi, a, b, bits).rhs;
        AlgebraicGuess g = recognize_algebraic(x, 2);
        std::optional<QuadElem> v = g.found ? g.in_field(ctx.d) : std::nullopt;
        if (!v) continue;
        if (!v->embed(bits).overlaps(x)) v = v->conj();
        ComplexBall x2 = hecke_L_rhs(ctx, chi, a, b, 2 * bits).rhs;
        if (certify(g, x2) && g.certified && v->embed(2 * bits).overlaps(x2)) {
            V = v;
            break;
        }
    }
    if (!V) throw RecognitionFailure(b - 1, a, "Hecke L-value side not recognised in K");
    rep.algebraic = *V;

    // 𝔭 is the prime of K below i_p
    PadicEmbedding e = PadicEmbedding::make(ctx.d, p, emb.prec + a + b + 4);
    std::optional<QuadElem> pi;
    QuadElem w = ring_generator(ctx.d);
    long pl = p.get_si();
    for (long x = -pl; x <= pl && !pi; ++x)
        for (long y = -pl; y <= pl && !pi; ++y) {
            QuadElem c = QuadElem(ctx.d, x) + w * mpq_class(y);
            if (c.norm() == p && valuation(c, e) >= 1) pi = c;
        }
    if (!pi) throw std::logic_error("yager_check: no generator of the prime above p");
    QuadElem phi_p = chi.phi(*pi), phibar_pbar = chi.phi(pi->conj()).conj();
    QuadElem one(ctx.d, 1);
    mpq_class pa1 = 1, pb = 1;
    for (int k = 0; k < a + 1; ++k) pa1 *= p;
    for (int k = 0; k < b; ++k) pb *= p;
    QuadElem P1 = one, P2 = one;
    for (int k = 0; k < a + b; ++k) {
        P1 = P1 * phi_p;
        P2 = P2 * phibar_pbar;
    }
    rep.euler1 = e(one - P1 * (1 / pa1));
    rep.euler2 = e(one - P2 * (1 / pb));
    mpq_class sign_fact = (a + b - 1) % 2 ? -1 : 1;
    for (int k = 2; k < b; ++k) sign_fact *= k;
    rep.rhs_value = rep.euler1 * rep.euler2 * e(*V * sign_fact);

    rep.precision = std::min(rep.lhs_moment.abs_prec(), rep.rhs_value.abs_prec());
    Qp diff = rep.lhs_moment - rep.rhs_value;
    rep.agree_mod = diff.is_zero() ? rep.precision : std::min(diff.valuation(), rep.precision);
    return rep;
}

}  // namespace ekn
