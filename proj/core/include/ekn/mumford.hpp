#pragma once
// Root-of-unity bookkeeping between Θ_{z0,w0} and the algebraic normalisation,
// recognition of ball values as algebraic numbers, and the Damerell check.
#include "ekn/lattice.hpp"
#include "ekn/quad.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ekn {

struct MumfordTranslation {
    TorsionPoint z0, w0;
    long n = 1;                 // least n with n·(z0, w0) ∈ 2Γ²
    mpq_class exponent;         // root_factor = e^{2πi·exponent}
    ComplexBall root_factor;    // exp((w0z̄0 − z0w̄0)/(2A))
};

MumfordTranslation mumford_translation(const TorsionPoint& z0, const TorsionPoint& w0, mpfr_prec_t prec);
inline ComplexBall mumford_factor(const TorsionPoint& z0, const TorsionPoint& w0, mpfr_prec_t prec) {
    return mumford_translation(z0, w0, prec).root_factor;
}
// The same quantity straight from the analytic formula (used to cross-check the exact one).
ComplexBall mumford_factor_analytic(const TorsionPoint& z0, const TorsionPoint& w0, const Lattice& L);

struct AlgebraicGuess {
    bool found = false;
    std::vector<mpz_class> poly;   // ascending coefficients of a primitive integer polynomial, leading > 0
    long bits = 0;                 // accuracy of the search ball, −log2 rad x
    Real residual, radius;         // |P(mid x)| and the radius of P(x)
    bool certified = false;        // set by certify()
    std::vector<long> checked;     // accuracies at which P(x) ∋ 0 was confirmed

    int degree() const { return found ? static_cast<int>(poly.size()) - 1 : -1; }
    long log2_height() const;
    // The root as an element of K when P has degree ≤ 2 and splits over K = Q(√−d).
    std::optional<QuadElem> in_field(long d) const;
    std::string str() const;
};

// Integer relation search among 1, x, …, x^k for k = 1..degree_bound (first hit wins).
// A degree-k candidate of height H is accepted only if
//     (k + 1)·log2 H ≤ c·(−log2 rad x) − 16,  c = 1 for complex x, 1/2 for real x,
// which keeps it well below the height of the relations LLL produces from noise.
// height_bound caps log2 H further (0 = no extra cap).
AlgebraicGuess recognize_algebraic(const ComplexBall& x, int degree_bound, long log2_height_bound = 0);

// P(x2) ∋ 0; certified once this holds for an x2 with at least 1.9× the search accuracy in bits.
bool certify(AlgebraicGuess& g, const ComplexBall& x2);

struct DamerellCell {
    int a = 0, b = 0;
    ComplexBall value;          // e*_{a,b}/(A^a · root_factor) at 512 bits (or the first rung)
    AlgebraicGuess guess;
    bool certified = false;     // P(value) ∋ 0 at 512 and 1024 bits and at twice the search precision
};

struct DamerellReport {
    std::string curve;
    TorsionPoint z0, w0;
    std::vector<DamerellCell> cells;
    int certified_count() const;
};

struct DamerellOptions {
    int degree_bound = 16;
    std::vector<mpfr_prec_t> ladder{512, 1024, 2048, 4096};
};

// Cells 0 ≤ a ≤ amax, 1 ≤ b ≤ bmax. Throws DiagonalPoleError like ek_expansion.
DamerellReport damerell_check(const std::string& curve, const TorsionPoint& z0, const TorsionPoint& w0, int amax,
                              int bmax, const DamerellOptions& opt = {});

}  // namespace ekn
