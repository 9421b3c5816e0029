#pragma once
// Midpoint-radius complex balls on top of MPFR.
//
// The center is two Reals at the working precision, the radius a 64-bit
// Real rounded up. Every operation adds the propagated error of the inputs
// and a bound on its own rounding error, so the exact result of operating on
// any members of the inputs is contained in the output.
#include "ekn/real.hpp"

#include <string>

namespace ekn {

class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 512) : re_(prec), im_(prec), rad_(64) {}

    static ComplexBall from_si(long x, mpfr_prec_t prec);
    static ComplexBall from_q(const mpq_class& re, mpfr_prec_t prec);
    static ComplexBall from_q(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);
    // Ball around a center given as Reals (e.g. a correctly rounded MPFR
    // constant) with an explicit extra radius.
    static ComplexBall from_reals(const Real& re, const Real& im, const Real& rad, mpfr_prec_t prec);
    static ComplexBall pi(mpfr_prec_t prec);
    static ComplexBall gamma_q(const mpq_class& x, mpfr_prec_t prec);  // Γ(x), real x > 0
    static ComplexBall i(mpfr_prec_t prec) { return from_q(0, 1, prec); }

    mpfr_prec_t prec() const { return re_.prec(); }
    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& rad() const { return rad_; }

    void add_error(const Real& e) { rad_ = mag_add(rad_, mag_abs(e)); }
    ComplexBall with_prec(mpfr_prec_t prec) const;

    ComplexBall operator-() const;
    ComplexBall conj() const;
    ComplexBall real_part() const;
    ComplexBall imag_part() const;

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
    ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
    ComplexBall& operator-=(const ComplexBall& b) { return *this = *this - b; }
    ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }
    ComplexBall& operator/=(const ComplexBall& b) { return *this = *this / b; }

    ComplexBall mul_q(const mpq_class& q) const;
    ComplexBall mul_2si(long e) const;          // exact scaling by 2^e
    ComplexBall inv() const;
    ComplexBall pow(long n) const;               // integer power, n may be negative
    ComplexBall sqr() const { return *this * *this; }

    // |z| bounds (64-bit, upward / downward).
    Real abs_upper() const;
    Real abs_lower() const;
    bool contains_zero() const;
    bool is_finite() const;

    // Does the ball contain the exact rational point re + i·im?
    bool contains(const mpq_class& re, const mpq_class& im = 0) const;
    // Do the two balls intersect? (distance computed rounding up)
    bool overlaps(const ComplexBall& o) const;
    // Is o entirely inside this ball?
    bool contains(const ComplexBall& o) const;

    std::string str(int digits = 20) const;
    std::string re_str(int digits = 0) const { return re_.str(digits); }
    std::string im_str(int digits = 0) const { return im_.str(digits); }
    std::string rad_str() const { return rad_.str(6); }

private:
    Real re_, im_, rad_;
    void add_rounding(long ulps);  // rad += ulps · 2^-prec · |center|
};

ComplexBall exp(const ComplexBall& z);
ComplexBall sqrt_pos(const ComplexBall& x);   // real x > 0 (imag part must be an exact 0)
ComplexBall log_pos(const ComplexBall& x);    // real x > 0
ComplexBall exp_2pi_i_q(const mpq_class& q, mpfr_prec_t prec);  // e^{2πiq}, exact-center root of unity ball
ComplexBall hypot_sq(const ComplexBall& z);    // |z|² as a real ball

}  // namespace ekn
