#pragma once
// Lattices with CM, torsion points, the pairing and Eisenstein-Kronecker-Lerch sums.
#include "ekn/ball.hpp"
#include "ekn/quad.hpp"

#include <gmpxx.h>

#include <string>

namespace ekn {

struct Lattice {
    ComplexBall omega1, omega2;
    ComplexBall A;   // Im(conj(ω1)ω2)/π
};

struct CMContext {
    std::string name;
    Lattice lattice;
    long d = 1;                 // K = Q(√−d)
    QuadElem g2, g3;            // y² = 4x³ − g2 x − g3
    QuadElem e2star;            // 0 for both fixtures (a unit of K other than ±1 acts on Γ)
    QuadElem conductor;         // generator f of the conductor ideal
    ComplexBall Omega;          // Γ = Ω·f
    long conductor_norm = 0;

    mpfr_prec_t prec() const { return lattice.A.prec(); }
};

// "lemniscatic" (y² = 4x³ − 4x, Γ = ω1·Z[i]) or "d3" (y² = 4x³ − 4, Γ = ω1·Z[ρ]).
CMContext fixture(const std::string& name, mpfr_prec_t prec);

// c1·ω1 + c2·ω2
struct TorsionPoint {
    mpq_class c1, c2;
    long n = 1;

    static TorsionPoint make(const mpq_class& c1, const mpq_class& c2);
    bool in_lattice() const { return n == 1; }
    TorsionPoint operator+(const TorsionPoint& o) const { return make(c1 + o.c1, c2 + o.c2); }
    TorsionPoint operator-() const { return make(-c1, -c2); }
    ComplexBall value(const Lattice& L) const;
    std::string str() const;
};

// ⟨z,w⟩ = exp((z w̄ − w z̄)/A)
ComplexBall pairing(const ComplexBall& z, const ComplexBall& w, const ComplexBall& A);
// Exact for coordinates: ⟨u,v⟩ = e^{−2πi(u1 v2 − u2 v1)}; also returns the exponent.
mpq_class pairing_exponent(const TorsionPoint& u, const TorsionPoint& v);
ComplexBall pairing(const TorsionPoint& u, const TorsionPoint& v, mpfr_prec_t prec);

// Σ*_{|z+γ| ≤ R} conj(z+γ)^a |z+γ|^{−2s} ⟨γ,w⟩, with the tail beyond R folded
// into the radius. Needs 2s − a > 2.
ComplexBall K_direct(int a, const TorsionPoint& z, const TorsionPoint& w, int s, double R, const Lattice& L);

// The same function by theta splitting at t = 1/A; valid for a ≥ 1 and 1 ≤ s ≤ a.
// Both halves are exponentially convergent and their tails are bounded.
ComplexBall K_ewald(int a, const TorsionPoint& z, const TorsionPoint& w, int s, const Lattice& L);

// e*_{a,b}(z0,w0) = K_{a+b}(z0,w0,b)
inline ComplexBall e_star_ewald(int a, int b, const TorsionPoint& z0, const TorsionPoint& w0, const Lattice& L) {
    return K_ewald(a + b, z0, w0, b, L);
}

}  // namespace ekn
