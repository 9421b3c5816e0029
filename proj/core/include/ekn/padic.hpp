#pragma once
// p-adic numbers at finite precision.
//
// Qp is a floating p-adic: p^v · u with p ∤ u, u known modulo p^r. The
// absolute precision is m = v + r (the value is known modulo p^m). Zero is
// r = 0, v = m. Sums keep min absolute precision, products min relative.
//
// PAdicExt is an element of Q_p[X]/(P) for a monic P that is either
// irreducible mod p (unramified) or Eisenstein (totally ramified).
#include "ekn/ring.hpp"

#include <gmpxx.h>

#include <climits>
#include <memory>
#include <string>
#include <vector>

namespace ekn {

constexpr long kValInfinity = LONG_MAX / 4;

class Qp {
public:
    Qp() : p_(5), v_(0), r_(0) {}
    Qp(const mpz_class& p, long abs_prec) : p_(p), v_(abs_prec), r_(0) {}  // zero mod p^abs_prec
    static Qp from_q(const mpq_class& q, const mpz_class& p, long abs_prec);
    static Qp from_unit(const mpz_class& p, long v, const mpz_class& u, long rel_prec);

    const mpz_class& p() const { return p_; }
    long abs_prec() const { return v_ + r_; }
    long rel_prec() const { return r_; }
    bool is_zero() const { return r_ == 0; }
    // v_p, or kValInfinity when the value is indistinguishable from zero
    long valuation() const { return r_ == 0 ? kValInfinity : v_; }
    const mpz_class& unit() const { return u_; }

    Qp with_abs_prec(long m) const;   // lowers precision only
    mpq_class to_q() const;           // a rational representative
    mpz_class residue_mod(long k) const;  // value mod p^k as 0..p^k-1 (requires v ≥ 0)

    Qp operator-() const;
    friend Qp operator+(const Qp& a, const Qp& b);
    friend Qp operator-(const Qp& a, const Qp& b) { return a + (-b); }
    friend Qp operator*(const Qp& a, const Qp& b);
    Qp inv() const;
    friend Qp operator/(const Qp& a, const Qp& b) { return a * b.inv(); }
    Qp& operator+=(const Qp& b) { return *this = *this + b; }
    Qp& operator-=(const Qp& b) { return *this = *this - b; }
    Qp& operator*=(const Qp& b) { return *this = *this * b; }
    // Equality at the common absolute precision.
    bool equals(const Qp& b) const { return (*this - b).is_zero(); }

    std::string str() const;
    // base-p digits of p^-v·x from position v upward, least significant first
    std::vector<long> digits() const;

private:
    mpz_class p_;
    long v_;
    long r_;
    mpz_class u_;
    void normalize();
};

template <>
struct RingOps<Qp> {
    static Qp from_q(const mpq_class& q, const Qp& like) { return Qp::from_q(q, like.p(), std::max(like.abs_prec(), 1L)); }
    static Qp inv(const Qp& x) { return x.inv(); }
    static bool is_zero(const Qp& x) { return x.is_zero(); }
};

// Defining data of an extension ring.
struct PAdicRing {
    enum class Kind { Trivial, Unramified, Eisenstein };
    Kind kind = Kind::Trivial;
    mpz_class p;
    long prec = 16;                  // working absolute precision in p-units
    std::vector<mpq_class> modulus;  // monic P, coefficients low → high
    std::string name;

    int degree() const { return kind == Kind::Trivial ? 1 : static_cast<int>(modulus.size()) - 1; }
    int ramification() const { return kind == Kind::Eisenstein ? degree() : 1; }
    static std::shared_ptr<const PAdicRing> trivial(const mpz_class& p, long prec);
    static std::shared_ptr<const PAdicRing> cyclotomic_p(const mpz_class& p, long prec);  // Z_p[ζ_p], X = ζ_p - 1
    static std::shared_ptr<const PAdicRing> eisenstein(const mpz_class& p, long prec, std::vector<mpq_class> P, std::string name);
    static std::shared_ptr<const PAdicRing> unramified(const mpz_class& p, long prec, std::vector<mpq_class> P, std::string name);
};

class PAdicExt {
public:
    PAdicExt() = default;
    explicit PAdicExt(std::shared_ptr<const PAdicRing> R);           // zero
    PAdicExt(std::shared_ptr<const PAdicRing> R, std::vector<Qp> c);  // Σ c_j X^j
    static PAdicExt from_qp(std::shared_ptr<const PAdicRing> R, const Qp& x);
    static PAdicExt gen(std::shared_ptr<const PAdicRing> R);          // the class of X

    const std::shared_ptr<const PAdicRing>& ring() const { return R_; }
    const std::vector<Qp>& coeffs() const { return c_; }
    bool is_zero() const;
    // valuation in units of the uniformizer (π for Eisenstein, p otherwise)
    long valuation() const;
    Qp trace() const;          // Tr to Q_p
    bool in_base() const;      // all higher coefficients vanish at precision
    PAdicExt with_abs_prec(long m) const;

    PAdicExt operator-() const;
    friend PAdicExt operator+(const PAdicExt& a, const PAdicExt& b);
    friend PAdicExt operator-(const PAdicExt& a, const PAdicExt& b) { return a + (-b); }
    friend PAdicExt operator*(const PAdicExt& a, const PAdicExt& b);
    PAdicExt& operator+=(const PAdicExt& b) { return *this = *this + b; }
    PAdicExt& operator*=(const PAdicExt& b) { return *this = *this * b; }
    PAdicExt operator*(const Qp& s) const;
    PAdicExt inv() const;

    std::string str() const;

private:
    std::shared_ptr<const PAdicRing> R_;
    std::vector<Qp> c_;
};

template <>
struct RingOps<PAdicExt> {
    static PAdicExt from_q(const mpq_class& q, const PAdicExt& like) {
        return PAdicExt::from_qp(like.ring(), Qp::from_q(q, like.ring()->p, like.ring()->prec));
    }
    static PAdicExt inv(const PAdicExt& x) { return x.inv(); }
    static bool is_zero(const PAdicExt& x) { return x.is_zero(); }
};

// Roots of an integer polynomial in Z_p by Hensel lifting of simple roots mod p.
std::vector<Qp> hensel_roots(const std::vector<mpz_class>& poly, const mpz_class& p, long prec);

}  // namespace ekn
