#pragma once
// Thin RAII holder for mpfr_t. Radii of balls live in 64-bit Reals and are
// always rounded upward.
#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace ekn {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    static Real from_si(long x, mpfr_prec_t prec = 64) { Real r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static Real from_d(double x, mpfr_prec_t prec = 64) { Real r(prec); mpfr_set_d(r.v_, x, MPFR_RNDU); return r; }
    static Real from_q(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec); mpfr_set_q(r.v_, q.get_mpq_t(), rnd); return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_d() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    long exponent() const { return mpfr_zero_p(v_) ? -(1L << 30) : mpfr_get_exp(v_); }

    // Decimal with `digits` significant digits (0 = enough to round-trip).
    std::string str(int digits = 0) const;

private:
    mpfr_t v_;
};

// Upward-rounded helpers for radius bookkeeping.
Real mag_add(const Real& a, const Real& b);
Real mag_mul(const Real& a, const Real& b);
Real mag_div(const Real& a, const Real& b);   // a / b, b > 0, rounded up
Real mag_abs(const Real& x);                  // |x| rounded up to 64 bits
Real mag_pow2(long e);                        // 2^e exactly
Real mag_exp(const Real& x);                  // exp(x) rounded up
bool mag_le(const Real& a, const Real& b);

}  // namespace ekn
