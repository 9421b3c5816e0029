#pragma once
// σ, θ and the Kronecker theta function Θ(z,w) = θ(z+w)/(θ(z)θ(w)).
#include "ekn/biseries.hpp"
#include "ekn/lattice.hpp"
#include "ekn/series.hpp"

#include <stdexcept>
#include <vector>

namespace ekn {

// ℘ = z^-2 + Σ_{k≥2} c_k z^{2k-2}: c_2 = g2/20, c_3 = g3/28 and the usual recurrence.
// Entry k holds c_k (entries 0, 1 unused).
template <class C>
std::vector<C> weierstrass_c(const C& g2, const C& g3, int kmax) {
    std::vector<C> c(std::max(kmax + 1, 4), ring_zero(g2));
    c[2] = g2 * ring_q(mpq_class(1, 20), g2);
    c[3] = g3 * ring_q(mpq_class(1, 28), g2);
    for (int k = 4; k <= kmax; ++k) {
        C s = ring_zero(g2);
        for (int i = 2; i <= k - 2; ++i) s += c[i] * c[k - i];
        c[k] = s * ring_q(mpq_class(3, (k - 3) * (2 * k + 1)), g2);
    }
    c.resize(kmax + 1, ring_zero(g2));
    return c;
}

// Taylor series of σ through z^N (order N+1), exact over K.
PowerSeries<QuadElem> sigma_series(const CMContext& ctx, int N);
// θ(z) = exp(−e2star·z²/2)·σ(z)
PowerSeries<QuadElem> theta_series(const CMContext& ctx, int N);
// Same coefficients as balls, computed directly in ball arithmetic (cheap for large N).
std::vector<ComplexBall> theta_coeffs_ball(const CMContext& ctx, int N, mpfr_prec_t prec);

// Θ(z,w) about (0,0); regular part known for z^i w^j with i, j ≤ N.
BiLaurentSeries<QuadElem> kronecker_theta_series(const CMContext& ctx, int N);

// Taylor coefficients of θ(c + v) in v through v^{J-1} with certified radii.
// The centre is first reduced mod Γ by the transformation law
// θ(v + γ) = α(γ)·exp(vγ̄/A + |γ|²/(2A))·θ(v), α(mω1 + nω2) = (−1)^{m+n+mn}.
PowerSeries<ComplexBall> theta_shift(const CMContext& ctx, const TorsionPoint& c, int J, mpfr_prec_t prec);

// Bound M0 ≥ sup |θ(v)|·e^{−|v|²/(2A)} (the supremum is over C, attained on a fundamental domain).
Real theta_growth_bound(const CMContext& ctx, const std::vector<ComplexBall>& a);

// θ(z) from the Taylor series at 0, with the Cauchy tail bound folded in.
ComplexBall theta_eval(const CMContext& ctx, const ComplexBall& z, mpfr_prec_t prec);
// Θ(z,w) = θ(z+w)/(θ(z)θ(w))
ComplexBall kronecker_theta_eval(const CMContext& ctx, const ComplexBall& z, const ComplexBall& w, mpfr_prec_t prec);

struct DiagonalPoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct EKExpansion {
    TorsionPoint z0, w0;
    ComplexBall pair_pole_z;   // coefficient of z^-1
    ComplexBall pole_w;        // coefficient of w^-1
    bool delta_z = false, delta_w = false;
    BiSeries<ComplexBall> table;   // table(i, j) = coefficient of z^i w^j
    ComplexBall A;
    std::vector<ComplexBall> mixed;   // polar terms that must vanish

    // e*_{a,b}(z0,w0) = (−1)^{a+b−1}·a!·A^a·[z^{b−1} w^a], b ≥ 1
    ComplexBall e_star(int a, int b) const;
    int amax() const { return table.nw() - 1; }
    int bmax() const { return table.nz(); }
};

// Expansion of Θ_{z0,w0}(z,w) = exp(−z0w̄0/A)·exp(−(zw̄0 + wz̄0)/A)·Θ(z+z0, w+w0)
// with z-degrees < Nz and w-degrees < Nw.
EKExpansion ek_expansion(const CMContext& ctx, const TorsionPoint& z0, const TorsionPoint& w0, int Nz, int Nw,
                         mpfr_prec_t prec);

}  // namespace ekn
