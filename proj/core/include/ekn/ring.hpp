#pragma once
// Coefficient-domain glue for the generic series code. Each domain needs a
// way to build constants "like" an existing element (balls carry a
// precision, p-adics a prime and precision, field elements a modulus).
#include "ekn/ball.hpp"
#include "ekn/quad.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace ekn {

template <class C>
struct RingOps;

template <>
struct RingOps<mpq_class> {
    static mpq_class from_q(const mpq_class& q, const mpq_class&) { return q; }
    static mpq_class inv(const mpq_class& x) {
        if (x == 0) throw std::domain_error("inverse of zero");
        return 1 / x;
    }
    static bool is_zero(const mpq_class& x) { return x == 0; }
};

template <>
struct RingOps<QuadElem> {
    static QuadElem from_q(const mpq_class& q, const QuadElem& like) { return QuadElem(like.d(), q); }
    static QuadElem inv(const QuadElem& x) { return x.inv(); }
    static bool is_zero(const QuadElem& x) { return x.is_zero(); }
};

template <>
struct RingOps<ComplexBall> {
    static ComplexBall from_q(const mpq_class& q, const ComplexBall& like) { return ComplexBall::from_q(q, like.prec()); }
    static ComplexBall inv(const ComplexBall& x) {
        ComplexBall r = x.inv();
        if (!r.is_finite()) throw std::domain_error("ball inverse: ball contains zero");
        return r;
    }
    // "certainly zero" is not decidable for balls; exact-zero centers with
    // zero radius only.
    static bool is_zero(const ComplexBall& x) { return x.re().is_zero() && x.im().is_zero() && x.rad().is_zero(); }
};

template <class C>
C ring_zero(const C& like) { return RingOps<C>::from_q(0, like); }
template <class C>
C ring_one(const C& like) { return RingOps<C>::from_q(1, like); }
template <class C>
C ring_q(const mpq_class& q, const C& like) { return RingOps<C>::from_q(q, like); }

}  // namespace ekn
