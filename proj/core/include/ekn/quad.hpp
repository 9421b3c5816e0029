#pragma once
// Elements re + im·√−d of an imaginary quadratic field K = Q(√−d).
#include "ekn/ball.hpp"

#include <gmpxx.h>

#include <string>

namespace ekn {

std::string q_str(const mpq_class& q);           // "num/den" or "num"
mpq_class q_parse(const std::string& s);          // inverse of q_str

class QuadElem {
public:
    QuadElem() : d_(1) {}
    explicit QuadElem(long d, mpq_class re = 0, mpq_class im = 0);

    long d() const { return d_; }
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }   // coefficient of √−d

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }
    QuadElem conj() const { return QuadElem(d_, re_, -im_); }
    mpq_class norm() const { return re_ * re_ + d_ * im_ * im_; }
    mpq_class trace() const { return 2 * re_; }
    QuadElem inv() const;

    QuadElem operator-() const { return QuadElem(d_, -re_, -im_); }
    friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inv(); }
    QuadElem& operator+=(const QuadElem& b) { return *this = *this + b; }
    QuadElem& operator-=(const QuadElem& b) { return *this = *this - b; }
    QuadElem& operator*=(const QuadElem& b) { return *this = *this * b; }
    QuadElem operator*(const mpq_class& q) const { return QuadElem(d_, re_ * q, im_ * q); }
    friend bool operator==(const QuadElem& a, const QuadElem& b) {
        return a.re_ == b.re_ && a.im_ == b.im_ && (a.d_ == b.d_ || a.is_rational());
    }

    // Is the element in O_K? (d ≡ 3 mod 4 allows half-integers with equal parity.)
    bool is_integral() const;
    // Complex embedding with √−d ↦ +i√d.
    ComplexBall embed(mpfr_prec_t prec) const;

    std::string str() const;

private:
    long d_;
    mpq_class re_, im_;
};

}  // namespace ekn
