#include "ekn/ball.hpp"

#include <cstdlib>
#include <stdexcept>

namespace ekn {

std::string Real::str(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    std::string sign;
    if (m[0] == '-') { sign = "-"; m.erase(0, 1); }
    while (m.size() > 1 && m.back() == '0') m.pop_back();
    std::string out = sign + m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    long ex = static_cast<long>(e) - 1;
    if (ex != 0) out += "e" + std::to_string(ex);
    return out;
}

Real mag_add(const Real& a, const Real& b) { Real r(64); mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU); return r; }
Real mag_mul(const Real& a, const Real& b) { Real r(64); mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU); return r; }
Real mag_div(const Real& a, const Real& b) { Real r(64); mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU); return r; }
Real mag_abs(const Real& x) { Real r(64); mpfr_abs(r.get(), x.get(), MPFR_RNDU); return r; }
Real mag_pow2(long e) { Real r(64); mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDU); return r; }
Real mag_exp(const Real& x) { Real r(64); mpfr_exp(r.get(), x.get(), MPFR_RNDU); return r; }
bool mag_le(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }

namespace {

Real center_abs(const Real& re, const Real& im, mpfr_rnd_t rnd) {
    Real r(64);
    mpfr_hypot(r.get(), re.get(), im.get(), rnd);
    return r;
}

// |a - b| rounded up, with a, b at arbitrary precisions.
Real diff_abs_up(mpfr_srcptr a, mpfr_srcptr b) {
    Real up(64), dn(64);
    mpfr_sub(up.get(), a, b, MPFR_RNDU);
    mpfr_sub(dn.get(), a, b, MPFR_RNDD);
    mpfr_abs(up.get(), up.get(), MPFR_RNDU);
    mpfr_abs(dn.get(), dn.get(), MPFR_RNDU);
    return mpfr_greater_p(up.get(), dn.get()) ? up : dn;
}

Real diff_abs_up_q(mpfr_srcptr a, const mpq_class& q) {
    Real up(64), dn(64);
    mpfr_sub_q(up.get(), a, q.get_mpq_t(), MPFR_RNDU);
    mpfr_sub_q(dn.get(), a, q.get_mpq_t(), MPFR_RNDD);
    mpfr_abs(up.get(), up.get(), MPFR_RNDU);
    mpfr_abs(dn.get(), dn.get(), MPFR_RNDU);
    return mpfr_greater_p(up.get(), dn.get()) ? up : dn;
}

}  // namespace

void ComplexBall::add_rounding(long ulps) {
    Real c = center_abs(re_, im_, MPFR_RNDU);
    Real e(64);
    mpfr_mul_ui(e.get(), c.get(), static_cast<unsigned long>(ulps), MPFR_RNDU);
    mpfr_mul_2si(e.get(), e.get(), -static_cast<long>(prec()), MPFR_RNDU);
    rad_ = mag_add(rad_, e);
}

ComplexBall ComplexBall::from_si(long x, mpfr_prec_t prec) {
    ComplexBall b(prec);
    mpfr_set_si(b.re_.get(), x, MPFR_RNDN);
    if (mpfr_get_si(b.re_.get(), MPFR_RNDN) != x || !mpfr_fits_slong_p(b.re_.get(), MPFR_RNDN)) b.add_rounding(2);
    return b;
}

ComplexBall ComplexBall::from_q(const mpq_class& re, mpfr_prec_t prec) { return from_q(re, 0, prec); }

ComplexBall ComplexBall::from_q(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
    ComplexBall b(prec);
    int t1 = mpfr_set_q(b.re_.get(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(b.im_.get(), im.get_mpq_t(), MPFR_RNDN);
    if (t1 || t2) b.add_rounding(2);
    return b;
}

ComplexBall ComplexBall::from_reals(const Real& re, const Real& im, const Real& rad, mpfr_prec_t prec) {
    ComplexBall b(prec);
    int t1 = mpfr_set(b.re_.get(), re.get(), MPFR_RNDN);
    int t2 = mpfr_set(b.im_.get(), im.get(), MPFR_RNDN);
    b.rad_ = mag_abs(rad);
    if (t1 || t2) b.add_rounding(2);
    return b;
}

ComplexBall ComplexBall::pi(mpfr_prec_t prec) {
    ComplexBall b(prec);
    mpfr_const_pi(b.re_.get(), MPFR_RNDN);
    b.add_rounding(1);
    return b;
}

ComplexBall ComplexBall::gamma_q(const mpq_class& x, mpfr_prec_t prec) {
    if (x <= 0 || x > 1) throw std::domain_error("gamma_q: need 0 < x <= 1");
    ComplexBall b(prec);
    Real xr(prec + 32);
    mpfr_set_q(xr.get(), x.get_mpq_t(), MPFR_RNDN);
    mpfr_gamma(b.re_.get(), xr.get(), MPFR_RNDN);
    // input rounding: |ψ(x)| ≤ 1 + 1/x on (0,1], relative input error 2^-(prec+32)
    b.add_rounding(8);
    return b;
}

ComplexBall ComplexBall::with_prec(mpfr_prec_t prec) const {
    ComplexBall b(prec);
    int t1 = mpfr_set(b.re_.get(), re_.get(), MPFR_RNDN);
    int t2 = mpfr_set(b.im_.get(), im_.get(), MPFR_RNDN);
    b.rad_ = rad_;
    if (t1 || t2) b.add_rounding(2);
    return b;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall b(*this);
    mpfr_neg(b.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
    return b;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall b(*this);
    mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
    return b;
}

ComplexBall ComplexBall::real_part() const {
    ComplexBall b(*this);
    mpfr_set_zero(b.im_.get(), 1);
    return b;
}

ComplexBall ComplexBall::imag_part() const {
    ComplexBall b(prec());
    mpfr_set(b.re_.get(), im_.get(), MPFR_RNDN);
    b.rad_ = rad_;
    return b;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    ComplexBall r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    int t2 = mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    r.rad_ = mag_add(a.rad_, b.rad_);
    if (t1 || t2) r.add_rounding(2);
    return r;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
    ComplexBall r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_sub(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    int t2 = mpfr_sub(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    r.rad_ = mag_add(a.rad_, b.rad_);
    if (t1 || t2) r.add_rounding(2);
    return r;
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    ComplexBall r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_fmms(r.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    int t2 = mpfr_fmma(r.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
    Real ma = center_abs(a.re_, a.im_, MPFR_RNDU);
    Real mb = center_abs(b.re_, b.im_, MPFR_RNDU);
    r.rad_ = mag_add(mag_add(mag_mul(ma, b.rad_), mag_mul(mb, a.rad_)), mag_mul(a.rad_, b.rad_));
    if (t1 || t2) r.add_rounding(2);
    return r;
}

ComplexBall ComplexBall::inv() const {
    ComplexBall r(prec());
    Real lo = center_abs(re_, im_, MPFR_RNDD);
    Real gap(64);
    mpfr_sub(gap.get(), lo.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(gap.get()) <= 0) {
        mpfr_set_inf(r.rad_.get(), 1);
        return r;
    }
    Real n(prec() + 16);
    mpfr_fmma(n.get(), re_.get(), re_.get(), im_.get(), im_.get(), MPFR_RNDN);
    mpfr_div(r.re_.get(), re_.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im_.get(), im_.get(), n.get(), MPFR_RNDN);
    mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
    r.add_rounding(4);
    // |1/(c+δ) - 1/c| ≤ r / (|c|(|c|-r))
    Real den(64);
    mpfr_mul(den.get(), lo.get(), gap.get(), MPFR_RNDD);
    r.rad_ = mag_add(r.rad_, mag_div(rad_, den));
    return r;
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) { return a * b.inv(); }

ComplexBall ComplexBall::mul_q(const mpq_class& q) const { return *this * from_q(q, prec()); }

ComplexBall ComplexBall::mul_2si(long e) const {
    ComplexBall r(*this);
    mpfr_mul_2si(r.re_.get(), re_.get(), e, MPFR_RNDN);
    mpfr_mul_2si(r.im_.get(), im_.get(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_.get(), rad_.get(), e, MPFR_RNDU);
    return r;
}

ComplexBall ComplexBall::pow(long n) const {
    if (n < 0) return inv().pow(-n);
    ComplexBall result = from_si(1, prec());
    ComplexBall base(*this);
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Real ComplexBall::abs_upper() const { return mag_add(center_abs(re_, im_, MPFR_RNDU), rad_); }

Real ComplexBall::abs_lower() const {
    Real r = center_abs(re_, im_, MPFR_RNDD);
    mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
    return r;
}

bool ComplexBall::contains_zero() const { return contains(mpq_class(0), mpq_class(0)); }

bool ComplexBall::is_finite() const {
    return mpfr_number_p(re_.get()) && mpfr_number_p(im_.get()) && mpfr_number_p(rad_.get());
}

bool ComplexBall::contains(const mpq_class& re, const mpq_class& im) const {
    Real dr = diff_abs_up_q(re_.get(), re);
    Real di = diff_abs_up_q(im_.get(), im);
    Real d = center_abs(dr, di, MPFR_RNDU);
    return mag_le(d, rad_);
}

bool ComplexBall::overlaps(const ComplexBall& o) const {
    Real dr = diff_abs_up(re_.get(), o.re_.get());
    Real di = diff_abs_up(im_.get(), o.im_.get());
    Real d = center_abs(dr, di, MPFR_RNDU);
    Real s(64);
    mpfr_add(s.get(), rad_.get(), o.rad_.get(), MPFR_RNDD);
    return mag_le(d, s);
}

bool ComplexBall::contains(const ComplexBall& o) const {
    Real dr = diff_abs_up(re_.get(), o.re_.get());
    Real di = diff_abs_up(im_.get(), o.im_.get());
    Real d = mag_add(center_abs(dr, di, MPFR_RNDU), o.rad_);
    return mag_le(d, rad_);
}

std::string ComplexBall::str(int digits) const {
    return "(" + re_.str(digits) + ") + (" + im_.str(digits) + ")i +/- " + rad_.str(4);
}

ComplexBall exp(const ComplexBall& z) {
    mpfr_prec_t p = z.prec();
    Real e(p + 8), s(p + 8), c(p + 8);
    mpfr_exp(e.get(), z.re().get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
    Real re(p), im(p);
    mpfr_mul(re.get(), e.get(), c.get(), MPFR_RNDN);
    mpfr_mul(im.get(), e.get(), s.get(), MPFR_RNDN);
    // rounding: ≤ 2^-(p+8)·3 relative per component, plus final rounding
    Real eu = mag_abs(e);
    Real rnd = mag_mul(eu, mag_pow2(-static_cast<long>(p) + 2));
    // propagation: |e^c|(e^r - 1) ≤ |e^c| r e^r
    Real prop = mag_mul(mag_mul(eu, z.rad()), mag_exp(z.rad()));
    return ComplexBall::from_reals(re, im, mag_add(rnd, prop), p);
}

ComplexBall sqrt_pos(const ComplexBall& x) {
    mpfr_prec_t p = x.prec();
    if (!mpfr_zero_p(x.im().get())) throw std::domain_error("sqrt_pos: center not real");
    Real lo(64);
    mpfr_sub(lo.get(), x.re().get(), x.rad().get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0) throw std::domain_error("sqrt_pos: ball meets the branch cut");
    Real c(p), zero(p);
    mpfr_sqrt(c.get(), x.re().get(), MPFR_RNDN);
    Real sl(64);
    mpfr_sqrt(sl.get(), lo.get(), MPFR_RNDD);
    Real prop = mag_div(x.rad(), sl);
    Real rnd = mag_mul(mag_abs(c), mag_pow2(-static_cast<long>(p) + 1));
    return ComplexBall::from_reals(c, zero, mag_add(prop, rnd), p);
}

ComplexBall log_pos(const ComplexBall& x) {
    mpfr_prec_t p = x.prec();
    if (!mpfr_zero_p(x.im().get())) throw std::domain_error("log_pos: center not real");
    Real lo(64);
    mpfr_sub(lo.get(), x.re().get(), x.rad().get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0) throw std::domain_error("log_pos: ball meets the branch cut");
    Real c(p), zero(p);
    mpfr_log(c.get(), x.re().get(), MPFR_RNDN);
    // |log z - log x| ≤ r / (x - r)
    Real prop = mag_div(x.rad(), lo);
    Real rnd = mag_mul(mag_abs(c), mag_pow2(-static_cast<long>(p) + 1));
    mpfr_nextabove(rnd.get());
    return ComplexBall::from_reals(c, zero, mag_add(prop, rnd), p);
}

ComplexBall exp_2pi_i_q(const mpq_class& q, mpfr_prec_t prec) {
    ComplexBall t = ComplexBall::pi(prec + 16).mul_2si(1).mul_q(q);
    ComplexBall it = ComplexBall::i(prec + 16) * t;
    return exp(it).with_prec(prec);
}

ComplexBall hypot_sq(const ComplexBall& z) { return (z * z.conj()).real_part(); }

}  // namespace ekn
