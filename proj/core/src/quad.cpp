#include "ekn/quad.hpp"

#include <stdexcept>

namespace ekn {

std::string q_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class q_parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

QuadElem::QuadElem(long d, mpq_class re, mpq_class im) : d_(d), re_(std::move(re)), im_(std::move(im)) {
    if (d <= 0) throw std::invalid_argument("QuadElem: d must be positive");
    re_.canonicalize();
    im_.canonicalize();
}

static void check_same(const QuadElem& a, const QuadElem& b) {
    if (a.d() != b.d() && !a.is_rational() && !b.is_rational())
        throw std::invalid_argument("QuadElem: mixed fields");
}

static long pick_d(const QuadElem& a, const QuadElem& b) { return a.is_rational() ? b.d() : a.d(); }

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    return QuadElem(pick_d(a, b), a.re_ + b.re_, a.im_ + b.im_);
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    return QuadElem(pick_d(a, b), a.re_ - b.re_, a.im_ - b.im_);
}

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    long d = pick_d(a, b);
    return QuadElem(d, a.re_ * b.re_ - d * a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

QuadElem QuadElem::inv() const {
    mpq_class n = norm();
    if (n == 0) throw std::domain_error("QuadElem: inverse of zero");
    return QuadElem(d_, re_ / n, -im_ / n);
}

bool QuadElem::is_integral() const {
    // minimal polynomial X^2 - tr X + N must have integer coefficients
    mpq_class t = trace(), n = norm();
    return t.get_den() == 1 && n.get_den() == 1;
}

ComplexBall QuadElem::embed(mpfr_prec_t prec) const {
    ComplexBall s = sqrt_pos(ComplexBall::from_si(d_, prec + 8));
    ComplexBall v = ComplexBall::from_q(re_, prec + 8) + ComplexBall::i(prec + 8) * s.mul_q(im_);
    return v.with_prec(prec);
}

std::string QuadElem::str() const {
    std::string r = q_str(re_);
    if (im_ == 0) return r;
    std::string rad = "sqrt(-" + std::to_string(d_) + ")";
    return "(" + r + ") + (" + q_str(im_) + ")*" + rad;
}

}  // namespace ekn
