#pragma once
// Formal group of y² = 4x³ − g2x − g3 in the parameter t = −2x/y, the formal
// logarithm, θ̂ = θ∘λ, Θ̂(s,t) = Θ(λ(s), λ(t)), and the p-adic period.
#include "ekn/biseries.hpp"
#include "ekn/lattice.hpp"
#include "ekn/omega.hpp"
#include "ekn/padic.hpp"
#include "ekn/series.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ekn {

struct FormalCurve {
    QuadElem g2, g3;
    int N = 0;
    PowerSeries<QuadElem> xt;       // t^-2 + …, known below t^{N−2}
    PowerSeries<QuadElem> yt;       // −2t^-3 + …, known below t^{N−3}
    PowerSeries<QuadElem> lambda;   // t + …, known through t^N

    // yt² − (4xt³ − g2·xt − g3), known below t^{N−6}; identically zero there
    PowerSeries<QuadElem> residual() const;
};

FormalCurve formal_expansions(const QuadElem& g2, const QuadElem& g3, int N);
inline FormalCurve formal_expansions(const CMContext& ctx, int N) { return formal_expansions(ctx.g2, ctx.g3, N); }

// θ̂(t) = θ(λ(t)) through t^N
PowerSeries<QuadElem> theta_hat(const CMContext& ctx, const FormalCurve& fc, int N);
// Θ̂(s,t): polar part s^-1 + t^-1, regular part s^i t^j for i, j ≤ N
BiLaurentSeries<QuadElem> kronecker_theta_hat(const CMContext& ctx, const FormalCurve& fc, int N);

// The embedding K → Q_p: √−d ↦ the square root of −d in Z_p whose residue is least.
struct PadicEmbedding {
    mpz_class p;
    long prec = 16;
    long d = 1;
    Qp sqrt_md;

    static PadicEmbedding make(long d, const mpz_class& p, long prec);
    Qp operator()(const QuadElem& x) const;
    Qp operator()(const mpq_class& x) const { return Qp::from_q(x, p, prec); }
};
// Exact p-adic valuation of x under the embedding (kValInfinity for 0).
long valuation(const QuadElem& x, const PadicEmbedding& emb);

struct IntegralityScan {
    long min_valuation = kValInfinity;
    int worst_i = -1, worst_j = -1;
    int checked = 0;
    bool integral() const { return min_valuation >= 0; }
};
IntegralityScan scan_integrality(const PowerSeries<QuadElem>& f, int from, int to, const PadicEmbedding& emb);
// coefficients with i + j ≤ max_total
IntegralityScan scan_integrality(const BiSeries<QuadElem>& f, int max_total, const PadicEmbedding& emb);

// Θ̂*_{z0,w0}(s,t) after recognition of every expansion coefficient in K. The
// coefficients are those of the algebraic normalisation, i.e. Θ_{z0,w0} divided
// by its root-of-unity factor (a unit, so integrality is unaffected).
struct TranslatedThetaHat {
    TorsionPoint z0, w0;
    mpq_class root_factor_exponent;
    QuadElem pole_s, pole_t;        // ⟨w0,z0⟩δ_{z0} and δ_{w0}, already subtracted
    BiSeries<QuadElem> series;      // the starred series, i + j ≤ N
    BiSeries<QuadElem> z_w_table;   // the recognised expansion in z, w before composition
    long bits_used = 0;
};

struct RecognitionFailure : std::runtime_error {
    int i, j;
    RecognitionFailure(int i_, int j_, const std::string& what) : std::runtime_error(what), i(i_), j(j_) {}
};

TranslatedThetaHat translated_theta_hat(const CMContext& ctx, const FormalCurve& fc, const TorsionPoint& z0,
                                        const TorsionPoint& w0, int N, const mpz_class& p);

// ---- the p-adic period ----

struct OmegaNotInZp : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PadicPeriod {
    mpz_class p;
    long m = 8;
    bool in_Zp = false;   // a literal solution Ω ∈ Z_p^× exists (Ω then stored in omega)
    Qp omega;
    // Frobenius datum: σ(Ω) = Ω/α with α the unit root of x² − a_p x + p.
    long a_p = 0;
    Qp alpha;
    int validated_through = 0;
};

// Level-by-level search for Ω ∈ Z_p^× with exp(λ/Ω) − 1 ∈ Z_p[[t]] (least digit at each
// level, then full validation through t^check_degree). Throws OmegaNotInZp.
PadicPeriod solve_omega_p(const PowerSeries<mpq_class>& lambda, const mpz_class& p, long m, int check_degree);
PadicPeriod solve_omega_p(const FormalCurve& fc, const PadicEmbedding& emb, long m, int check_degree);

// Ω as a Frobenius eigenvector: α from point counting and Hensel lifting, cross-checked
// against the digits forced by the coefficients at t^{p^k} of λ, and validated by the
// Dwork criterion λ(t) − (α/p)·λ(t^p) ∈ Z_p[[t]] through t^check_degree.
PadicPeriod frobenius_period(const FormalCurve& fc, const PadicEmbedding& emb, long m, int check_degree);
// α mod p^k read off from the t^{p^k} coefficients of λ (needs fc.N ≥ p^k)
Qp alpha_from_logarithm(const FormalCurve& fc, const PadicEmbedding& emb, int k);
long count_points(const QuadElem& g2, const QuadElem& g3, const PadicEmbedding& emb);   // #E(F_p) incl. ∞

// η_p(t) = exp(λ(t)/Ω) − 1 and ι(T) = λ^{-1}(Ω·log(1+T)), exactly in Q[Ω, 1/Ω]
// (rational curves only).
PowerSeries<OmegaPoly> eta_symbolic(const FormalCurve& fc, int N);
PowerSeries<OmegaPoly> iota_symbolic(const FormalCurve& fc, int N);

PowerSeries<mpq_class> to_rational(const PowerSeries<QuadElem>& f);   // throws if not rational
PowerSeries<OmegaPoly> to_omega(const PowerSeries<mpq_class>& f);

}  // namespace ekn
