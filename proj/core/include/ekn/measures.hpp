#pragma once
// p-adic measures on Z_p² through their power series.
//
// A measure series is stored in the coordinates of a formal group over Z_p: either Ĝ_m itself
// (S, T) or the formal group Ê of the curve (s, t) = (ι(S), ι(T)). In the second case Ω_p is
// not an element of Z_p, so it is carried symbolically: (1+S)∂_S = Ω_p·D_s with
// D_s = λ'(s)^{-1}∂_s, and a moment (i, j) is returned as value·Ω_p^{i+j}.
#include "ekn/biseries.hpp"
#include "ekn/formal.hpp"
#include "ekn/padic.hpp"

#include <memory>
#include <optional>
#include <string>

namespace ekn {

struct FormalGroup {
    std::string name;
    mpz_class p;
    long prec = 8;
    PowerSeries<mpq_class> log;   // λ over Q, known through t^{log.order() − 1}
    int omega_weight = 0;         // 1 when the coordinate is ι(S) rather than S

    static std::shared_ptr<const FormalGroup> multiplicative(const mpz_class& p, long prec, int N);
    static std::shared_ptr<const FormalGroup> elliptic(const FormalCurve& fc, const mpz_class& p, long prec);

    // 1/λ'(t) over Z_p
    PowerSeries<Qp> inv_dlog() const;
    // F(s, x) = λ^{-1}(λ(s) + λ(x)) with s-degree < ns and x-degree < nx; integral
    BiSeries<Qp> law(int ns, int nx) const;
    // [n](t) = λ^{-1}(n·λ(t)) through t^{N−1}
    PowerSeries<Qp> multiplication(long n, int N) const;
    // Z_p[τ] for τ ≠ 0 in the p-torsion: the distinguished factor of [p](t)/t, which is Eisenstein
    std::shared_ptr<const PAdicRing> torsion_ring() const;

private:
    mutable std::shared_ptr<const PAdicRing> torsion_;
};

// Weierstrass preparation: the distinguished polynomial of f ∈ Z_p[[t]] (monic, coefficients low → high)
std::vector<Qp> distinguished_polynomial(const std::vector<Qp>& f, long prec);

struct MeasureSeries {
    std::shared_ptr<const FormalGroup> group;
    BiSeries<Qp> series;   // coefficient of s^i t^j; each Qp carries its own precision
    int degree = 0;        // coefficients with i + j ≤ degree are known
    bool polynomial = false;   // no terms beyond the stored ones
    std::string descriptor;

    mpz_class p() const { return group->p; }
    long min_precision() const;
};

struct PadicMoment {
    Qp value;
    int omega_power = 0;   // the moment is value·Ω_p^{omega_power}
    std::string str() const;
};

struct MomentRangeError : std::out_of_range {
    int max_i, max_j;
    MomentRangeError(int i, int j, const std::string& what) : std::out_of_range(what), max_i(i), max_j(j) {}
};

// Ĝ_m series of the Dirac measure at (u, v): (1+S)^u (1+T)^v
MeasureSeries dirac(const mpz_class& p, long prec, long u, long v, int degree);
MeasureSeries from_rational(const BiSeries<mpq_class>& f, const mpz_class& p, long prec, bool polynomial);

// ∫ x^i y^j dμ
PadicMoment moments(const MeasureSeries& ms, int i, int j);

enum class UnitVariable { S, T, Both };
// f ↦ f − (1/p)·Σ_{τ ∈ Ĝ[p]} f(s ⊕ τ, t), per restricted variable, computed in Z_p[τ].
// Only degrees ≤ keep in a restricted variable are produced (keep < 0: all); the result is
// known through total degree min(degree, keep). Truncated inputs lose precision in proportion
// to the distance from the truncation, tracked per coefficient.
MeasureSeries restrict_to_units(const MeasureSeries& ms, UnitVariable which, int keep = -1);
// brute force: sum of Dirac restrictions (zero on p-divisible support)
MeasureSeries restrict_dirac_combination(const std::vector<std::pair<std::pair<long, long>, mpz_class>>& terms,
                                         const mpz_class& p, long prec, int degree, UnitVariable which);

// the measure y ↦ n·y, i.e. t ↦ [n](t)
MeasureSeries rescale_second(const MeasureSeries& ms, long n);
MeasureSeries operator+(const MeasureSeries& a, const MeasureSeries& b);
MeasureSeries scale(const MeasureSeries& a, const mpz_class& c);

// μ_{z0,w0} from the translated Θ̂, embedded by emb; throws if not p-integral
MeasureSeries mu_z0w0(const CMContext& ctx, const FormalCurve& fc, const PadicEmbedding& emb,
                      const TorsionPoint& z0, const TorsionPoint& w0, int N);

struct HeckeCharacter {
    long d = 1;
    QuadElem conductor;                     // f, with 𝔣 = (f)
    std::vector<QuadElem> residues;         // representatives of (O_K/𝔣)^×
    std::vector<QuadElem> values;           // φ at each representative
    bool w_f_check = false;                 // exactly one unit is ≡ 1 mod 𝔣

    // φ((α)) for α prime to 𝔣: α·ε(α), with ε the unit ≡ α^{-1} mod 𝔣
    QuadElem phi(const QuadElem& alpha) const;
    long conductor_norm() const;
    bool in_conductor(const QuadElem& x) const;   // x ∈ 𝔣
};

// The Grössencharacter of the fixture curve, with its conductor. Checks multiplicativity,
// |φ(α)|² = N(α), w_𝔣 = 1 and a_ℓ = Tr φ(𝔩) for the split primes ℓ < 60 prime to 𝔣.
HeckeCharacter fixture_character(const CMContext& ctx);
// φ(α)Ω as a point of Γ ⊗ Q
TorsionPoint character_point(const CMContext& ctx, const HeckeCharacter& chi, const QuadElem& value);

MeasureSeries mu_phi(const CMContext& ctx, const FormalCurve& fc, const PadicEmbedding& emb,
                     const HeckeCharacter& chi, int N);

struct HeckeLValues {
    ComplexBall lhs;   // [2π/√d_K]^a L_𝔣(φ̄^{a+b}, b)/Ω^{a+b} from direct lattice sums
    ComplexBall rhs;   // N(𝔣)^a Σ_α e*_{a,b}(φ(α)Ω, 0)/A^a
    bool lhs_computed = false;
};
HeckeLValues hecke_L_rhs(const CMContext& ctx, const HeckeCharacter& chi, int a, int b, mpfr_prec_t prec);

struct YagerReport {
    int a = 0, b = 0;
    mpz_class p;
    Qp lhs_moment;         // ∫_{(Z_p^×)²} x^{b−1} y^a dμ_φ without its power of Ω_p
    int omega_power = 0;   // power of Ω_p carried by the moment
    Qp rhs_value;          // Euler factors · (−1)^{a+b−1}(b−1)!·N(𝔣)^a Σ e*/A^a, embedded
    QuadElem algebraic;    // N(𝔣)^a Σ e*/A^a recognised in K
    Qp euler1, euler2;
    long agree_mod = 0;    // v_p(lhs − rhs), capped by the precision
    long precision = 0;
};
YagerReport yager_check(const CMContext& ctx, const FormalCurve& fc, const PadicEmbedding& emb,
                        const HeckeCharacter& chi, int a, int b, int N);

}  // namespace ekn
