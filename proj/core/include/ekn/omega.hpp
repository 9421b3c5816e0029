#pragma once
// Laurent polynomials in a formal unit Ω with rational coefficients.
//
// The p-adic period lives in the completion of the maximal unramified
// extension and is not representable at finite level; identities that only
// use Ω as a unit are checked exactly in Q[Ω, 1/Ω].
#include "ekn/ring.hpp"

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace ekn {

class OmegaPoly {
public:
    OmegaPoly() = default;
    explicit OmegaPoly(const mpq_class& c, int k = 0) {
        if (c != 0) t_[k] = c;
    }
    static OmegaPoly omega(int k = 1) { return OmegaPoly(1, k); }

    bool is_zero() const { return t_.empty(); }
    const std::map<int, mpq_class>& terms() const { return t_; }
    mpq_class coeff(int k) const {
        auto it = t_.find(k);
        return it == t_.end() ? mpq_class(0) : it->second;
    }
    bool is_monomial() const { return t_.size() == 1; }

    OmegaPoly operator-() const {
        OmegaPoly r(*this);
        for (auto& [k, c] : r.t_) c = -c;
        return r;
    }
    friend OmegaPoly operator+(const OmegaPoly& a, const OmegaPoly& b) {
        OmegaPoly r(a);
        for (const auto& [k, c] : b.t_) r.add(k, c);
        return r;
    }
    friend OmegaPoly operator-(const OmegaPoly& a, const OmegaPoly& b) { return a + (-b); }
    friend OmegaPoly operator*(const OmegaPoly& a, const OmegaPoly& b) {
        OmegaPoly r;
        for (const auto& [i, x] : a.t_)
            for (const auto& [j, y] : b.t_) r.add(i + j, x * y);
        return r;
    }
    OmegaPoly& operator+=(const OmegaPoly& b) { return *this = *this + b; }
    OmegaPoly& operator-=(const OmegaPoly& b) { return *this = *this - b; }
    OmegaPoly& operator*=(const OmegaPoly& b) { return *this = *this * b; }
    friend bool operator==(const OmegaPoly& a, const OmegaPoly& b) { return a.t_ == b.t_; }

    OmegaPoly inv() const {
        if (!is_monomial()) throw std::domain_error("OmegaPoly: only monomials are invertible");
        auto [k, c] = *t_.begin();
        return OmegaPoly(1 / c, -k);
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : t_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.get_str() + ")";
            if (k != 0) s += "*W^" + std::to_string(k);
        }
        return s;
    }

private:
    std::map<int, mpq_class> t_;
    void add(int k, const mpq_class& c) {
        mpq_class& x = t_[k];
        x += c;
        if (x == 0) t_.erase(k);
    }
};

template <>
struct RingOps<OmegaPoly> {
    static OmegaPoly from_q(const mpq_class& q, const OmegaPoly&) { return OmegaPoly(q); }
    static OmegaPoly inv(const OmegaPoly& x) { return x.inv(); }
    static bool is_zero(const OmegaPoly& x) { return x.is_zero(); }
};

}  // namespace ekn
