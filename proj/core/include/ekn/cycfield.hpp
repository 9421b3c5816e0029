#pragma once
// Q(ζ_f) as Q[x]/(Φ_f), power basis coordinates.
#include "ekn/padic.hpp"
#include "ekn/ring.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ekn {

// Φ_n, integer coefficients low → high.
const std::vector<mpz_class>& cyclotomic_poly(int n);
int euler_phi(int n);

class CycElem {
public:
    CycElem() : f_(1), c_{0} {}
    explicit CycElem(int f, const mpq_class& a = 0);
    CycElem(int f, std::vector<mpq_class> coords);   // reduced mod Φ_f
    static CycElem zeta_pow(int f, long k);          // ζ_f^k

    int order() const { return f_; }
    const std::vector<mpq_class>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    // value in Q(ζ_L) for f | L
    CycElem lift(int L) const;

    CycElem operator-() const;
    friend CycElem operator+(const CycElem& a, const CycElem& b);
    friend CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }
    friend CycElem operator*(const CycElem& a, const CycElem& b);
    CycElem& operator+=(const CycElem& b) { return *this = *this + b; }
    CycElem& operator-=(const CycElem& b) { return *this = *this - b; }
    CycElem& operator*=(const CycElem& b) { return *this = *this * b; }
    CycElem inv() const;
    friend bool operator==(const CycElem& a, const CycElem& b);

    ComplexBall embed(mpfr_prec_t prec) const;      // ζ_f ↦ e^{2πi/f}
    // Embed through a root of Φ_f in Z_p (one prime above p of degree 1).
    Qp embed_p(const Qp& root) const;
    // Largest exponent of p dividing a coordinate denominator (0 = p-integral in Z[ζ_f]_(p)).
    long p_denominator_exponent(const mpz_class& p) const;

    std::string str() const;

private:
    int f_;
    std::vector<mpq_class> c_;
    void reduce();
};

template <>
struct RingOps<CycElem> {
    static CycElem from_q(const mpq_class& q, const CycElem& like) { return CycElem(like.order(), q); }
    static CycElem inv(const CycElem& x) { return x.inv(); }
    static bool is_zero(const CycElem& x) { return x.is_zero(); }
};

}  // namespace ekn
