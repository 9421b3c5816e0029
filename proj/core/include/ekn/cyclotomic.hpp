#pragma once
// The rank-one case: g(z) = e^z/(e^z - 1) - 1/2 on C/2πiZ.
//
// At z0 = 2πi·q the expansion g(z + z0) = δ/z + Σ_{b≥1} (-1)^{b-1} e*_b(z0) z^{b-1}
// has coefficients in Q(ζ_f), f = denominator of q.
#include "ekn/ball.hpp"
#include "ekn/cycfield.hpp"
#include "ekn/series.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ekn {

struct CycPoint {
    mpq_class frac;  // reduced to [0, 1)
    int order = 1;

    static CycPoint make(const mpq_class& q);
};

struct CycExpansion {
    int f = 1;
    bool delta = false;           // pole at z = 0 present
    std::vector<CycElem> coeffs;  // coeffs[b-1] = coefficient of z^{b-1}

    // e*_b(z0) = (-1)^{b-1} coeffs[b-1]
    CycElem e_star(int b) const;
};

// Bernoulli numbers, B_1 = -1/2.
mpq_class bernoulli(int n);

CycExpansion g_expand(const CycPoint& z0, int N);

// Σ_{k≥0} (k + a)^-b for real a > 0; for b = 1 the regularized value
// lim_K (Σ_{k<K} 1/(k+a) - log K) = -ψ(a). Direct sum plus a bounded
// Euler-Maclaurin tail.
ComplexBall hurwitz_sum(int b, const mpq_class& a, mpfr_prec_t prec);

// e*_b(2πiq) = (2πi)^-b Σ'_{n} (q + n)^-b, summed symmetrically over |n| ≤ R
// and completed by Euler-Maclaurin tails on both sides.
ComplexBall e_star_direct(const CycPoint& z0, int b, int R, mpfr_prec_t prec);

// ĝ(T) = g(z0 + log(1+T)) through degree N.
struct CycMeasure {
    CycPoint z0;
    PowerSeries<CycElem> series;
    long worst_p_denominator = 0;   // over all coefficients
};
CycMeasure cyc_measure_series(const CycPoint& z0, int N, const mpz_class& p);

// Moments (1+T)d/dT applied b-1 times at T = 0, against (-1)^{b-1}(b-1)! e*_b.
struct MomentCheck {
    int b;
    CycElem lhs, rhs;
    bool ok;
};
std::vector<MomentCheck> cyc_moment_checks(const CycPoint& z0, int N);

// Dirichlet characters mod f.
struct DirichletChar {
    int modulus = 1;
    int index = 0;
    int conductor = 1;
    std::vector<int> gens;        // generators of (Z/f)^×
    std::vector<int> gen_orders;
    std::vector<int> exps;        // χ(gens[i]) = e^{2πi exps[i]/gen_orders[i]}
    std::vector<mpq_class> arg;   // χ(n) = e^{2πi arg[n]}; empty slot when gcd(n, f) > 1
    std::vector<bool> unit;

    bool is_even() const;
    CycElem value(int n) const;   // 0 off the units
    std::string label() const;
};
std::vector<DirichletChar> dirichlet_characters(int f);

struct DirichletCheck {
    ComplexBall lhs, rhs;
    bool ok;
};
DirichletCheck dirichlet_L_check(const DirichletChar& chi, int b, mpfr_prec_t prec);

}  // namespace ekn
