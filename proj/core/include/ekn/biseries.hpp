#pragma once
// Two-variable truncated series.
//
// BiSeries<C> holds c(i,j), the coefficient of z^i w^j, modulo the ideal
// (z^Nz, w^Nw). Box truncation is stable under products and under
// substituting z = g(s), w = h(t) with val(g), val(h) ≥ 1.
//
// BiLaurentSeries<C> adds the only polar terms that occur here:
// pole_z·z^-1 + pole_w·w^-1 + regular(z,w).
#include "ekn/series.hpp"

#include <vector>

namespace ekn {

template <class C>
class BiSeries {
public:
    BiSeries() : nz_(0), nw_(0) {}
    BiSeries(const C& like, int nz, int nw)
        : like_(ring_zero(like)), nz_(nz), nw_(nw), c_(static_cast<size_t>(nz) * nw, like_) {}

    int nz() const { return nz_; }
    int nw() const { return nw_; }
    const C& like() const { return like_; }
    const C& operator()(int i, int j) const { return c_[static_cast<size_t>(i) * nw_ + j]; }
    C& operator()(int i, int j) { return c_[static_cast<size_t>(i) * nw_ + j]; }
    C at(int i, int j) const { return (i < nz_ && j < nw_ && i >= 0 && j >= 0) ? (*this)(i, j) : like_; }

    static BiSeries constant(const C& c, int nz, int nw) {
        BiSeries r(c, nz, nw);
        if (nz > 0 && nw > 0) r(0, 0) = c;
        return r;
    }
    // f(z) viewed as a series in (z, w)
    static BiSeries from_z(const PowerSeries<C>& f, int nz, int nw) {
        BiSeries r(f.like(), nz, nw);
        if (f.val() < 0 || f.order() < nz) throw PreconditionError("from_z: needs a power series known to order nz");
        for (int i = 0; i < nz && nw > 0; ++i) r(i, 0) = f.coeff(i);
        return r;
    }
    static BiSeries from_w(const PowerSeries<C>& f, int nz, int nw) { return from_z(f, nw, nz).swapped(); }
    // f(z + w)
    static BiSeries from_sum(const PowerSeries<C>& f, int nz, int nw) {
        BiSeries r(f.like(), nz, nw);
        if (f.val() < 0 || f.order() < nz + nw - 1) throw PreconditionError("from_sum: order too small");
        // binomials built incrementally
        std::vector<std::vector<mpz_class>> bin(nz + nw, std::vector<mpz_class>(nz + nw, 0));
        for (int n = 0; n < nz + nw; ++n) {
            bin[n][0] = 1;
            for (int k = 1; k <= n; ++k) bin[n][k] = bin[n - 1][k - 1] + (k < n ? bin[n - 1][k] : mpz_class(0));
        }
        for (int i = 0; i < nz; ++i)
            for (int j = 0; j < nw; ++j) {
                C fk = f.coeff(i + j);
                if (RingOps<C>::is_zero(fk)) continue;
                r(i, j) = fk * ring_q(mpq_class(bin[i + j][i]), f.like());
            }
        return r;
    }

    BiSeries swapped() const {
        BiSeries r(like_, nw_, nz_);
        for (int i = 0; i < nz_; ++i)
            for (int j = 0; j < nw_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    BiSeries truncate(int nz, int nw) const {
        BiSeries r(like_, std::min(nz, nz_), std::min(nw, nw_));
        for (int i = 0; i < r.nz_; ++i)
            for (int j = 0; j < r.nw_; ++j) r(i, j) = (*this)(i, j);
        return r;
    }

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b) { return a.combine(b, false); }
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return a.combine(b, true); }
    BiSeries scale(const C& s) const {
        BiSeries r(*this);
        for (auto& x : r.c_) x = x * s;
        return r;
    }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        int nz = std::min(a.nz_, b.nz_), nw = std::min(a.nw_, b.nw_);
        BiSeries r(a.like_, nz, nw);
        for (int i1 = 0; i1 < nz; ++i1)
            for (int j1 = 0; j1 < nw; ++j1) {
                const C& x = a(i1, j1);
                if (RingOps<C>::is_zero(x)) continue;
                for (int i2 = 0; i1 + i2 < nz; ++i2)
                    for (int j2 = 0; j1 + j2 < nw; ++j2) {
                        const C& y = b(i2, j2);
                        if (RingOps<C>::is_zero(y)) continue;
                        r(i1 + i2, j1 + j2) += x * y;
                    }
            }
        return r;
    }
    // Inverse of a series with invertible constant term.
    BiSeries inv() const {
        C a0 = RingOps<C>::inv((*this)(0, 0));
        BiSeries r(like_, nz_, nw_);
        for (int i = 0; i < nz_; ++i)
            for (int j = 0; j < nw_; ++j) {
                if (i == 0 && j == 0) { r(0, 0) = a0; continue; }
                C s = like_;
                for (int i2 = 0; i2 <= i; ++i2)
                    for (int j2 = 0; j2 <= j; ++j2) {
                        if (i2 == 0 && j2 == 0) continue;
                        const C& x = (*this)(i2, j2);
                        if (RingOps<C>::is_zero(x)) continue;
                        s += x * r(i - i2, j - j2);
                    }
                r(i, j) = -(s * a0);
            }
        return r;
    }
    // F(g(s), h(t)) with val(g), val(h) ≥ 1.
    BiSeries compose(const PowerSeries<C>& g, const PowerSeries<C>& h) const {
        BiSeries tmp(like_, nz_, nw_);
        for (int j = 0; j < nw_; ++j) {
            PowerSeries<C> col(like_, 0, {}, nz_);
            for (int i = 0; i < nz_; ++i) col.set_coeff(i, (*this)(i, j));
            PowerSeries<C> c2 = col.compose(g.truncate(nz_));
            for (int i = 0; i < nz_; ++i) tmp(i, j) = c2.coeff(i);
        }
        BiSeries r(like_, nz_, nw_);
        for (int i = 0; i < nz_; ++i) {
            PowerSeries<C> row(like_, 0, {}, nw_);
            for (int j = 0; j < nw_; ++j) row.set_coeff(j, tmp(i, j));
            PowerSeries<C> r2 = row.compose(h.truncate(nw_));
            for (int j = 0; j < nw_; ++j) r(i, j) = r2.coeff(j);
        }
        return r;
    }
    template <class F>
    auto map(F fn) const {
        using D = decltype(fn(like_));
        BiSeries<D> r(fn(like_), nz_, nw_);
        for (int i = 0; i < nz_; ++i)
            for (int j = 0; j < nw_; ++j) r(i, j) = fn((*this)(i, j));
        return r;
    }

private:
    C like_;
    int nz_, nw_;
    std::vector<C> c_;

    BiSeries combine(const BiSeries& b, bool sub) const {
        int nz = std::min(nz_, b.nz_), nw = std::min(nw_, b.nw_);
        BiSeries r(like_, nz, nw);
        for (int i = 0; i < nz; ++i)
            for (int j = 0; j < nw; ++j) r(i, j) = sub ? C((*this)(i, j) - b(i, j)) : C((*this)(i, j) + b(i, j));
        return r;
    }
};

template <class C>
struct BiLaurentSeries {
    C pole_z;
    C pole_w;
    BiSeries<C> regular;

    int nz() const { return regular.nz(); }
    int nw() const { return regular.nw(); }

    BiLaurentSeries swapped() const { return {pole_w, pole_z, regular.swapped()}; }

    // P(z,w) / (z^ez w^ew) for ez, ew ∈ {0,1}. Terms that would be mixed
    // polar (z^-1 w^j, j ≥ 1, and symmetrically) are returned in `mixed` so
    // that callers can check they vanish; the z^-1 w^-1 term likewise.
    static BiLaurentSeries divide_monomial(const BiSeries<C>& P, int ez, int ew, std::vector<C>* mixed) {
        const C& z0 = P.like();
        BiLaurentSeries out{z0, z0, BiSeries<C>(z0, P.nz() - ez, P.nw() - ew)};
        for (int i = 0; i < P.nz(); ++i)
            for (int j = 0; j < P.nw(); ++j) {
                int a = i - ez, b = j - ew;
                const C& x = P(i, j);
                if (a >= 0 && b >= 0) {
                    if (a < out.nz() && b < out.nw()) out.regular(a, b) = x;
                } else if (a == -1 && b == 0) {
                    out.pole_z = x;
                } else if (a == 0 && b == -1) {
                    out.pole_w = x;
                } else if (mixed) {
                    mixed->push_back(x);
                }
            }
        return out;
    }

    // Substitute z = g(s), w = h(t), g = c·s + ..., h = c'·t + ...
    BiLaurentSeries compose(const PowerSeries<C>& g, const PowerSeries<C>& h) const {
        int nz = regular.nz(), nw = regular.nw();
        BiSeries<C> reg = regular.compose(g, h);
        PowerSeries<C> gi = g.truncate(nz + 2).inv();  // s^-1 (...)
        PowerSeries<C> hi = h.truncate(nw + 2).inv();
        BiLaurentSeries out{pole_z * gi.coeff(-1), pole_w * hi.coeff(-1), reg};
        for (int i = 0; i < nz && i < gi.order(); ++i)
            if (nw > 0) out.regular(i, 0) += pole_z * gi.coeff(i);
        for (int j = 0; j < nw && j < hi.order(); ++j)
            if (nz > 0) out.regular(0, j) += pole_w * hi.coeff(j);
        return out;
    }
};

}  // namespace ekn
