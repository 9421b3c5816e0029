#pragma once
// Truncated Laurent series in one variable.
//
// A series stores coefficients from exponent val() upward and is known
// modulo t^order(). Output orders:
//   f ± g        min(Nf, Ng)
//   f · g        min(Nf + vg, Ng + vf)
//   1 / f        N - 2v            (v = stored lowest exponent, leading coeff invertible)
//   f ∘ g        min(w·Nf, Ng + (v' - 1)·w)  (w = val(g) ≥ 1, v' = val(f - f(0)))
//   reverse(f)   N
//   exp, log     N
//   f', ∫f       N - 1, N + 1
#include "ekn/ring.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ekn {

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class C>
class PowerSeries {
public:
    PowerSeries() : like_(), val_(0), N_(0) {}
    PowerSeries(const C& like, int val, std::vector<C> coeffs, int order)
        : like_(ring_zero(like)), val_(val), c_(std::move(coeffs)), N_(order) {
        if (static_cast<int>(c_.size()) > N_ - val_) c_.resize(std::max(0, N_ - val_), like_);
    }
    static PowerSeries zero(const C& like, int order) { return PowerSeries(like, 0, {}, order); }
    static PowerSeries constant(const C& c, int order) { return PowerSeries(c, 0, {c}, order); }
    static PowerSeries monomial(const C& c, int k, int order) { return PowerSeries(c, k, {c}, order); }
    static PowerSeries var(const C& like, int order) { return monomial(ring_one(like), 1, order); }

    int val() const { return val_; }
    int order() const { return N_; }
    const C& like() const { return like_; }
    int max_exp() const { return val_ + static_cast<int>(c_.size()) - 1; }

    C coeff(int k) const {
        if (k >= N_) throw std::out_of_range("coefficient beyond truncation order");
        if (k < val_ || k > max_exp()) return like_;
        return c_[k - val_];
    }
    void set_coeff(int k, const C& x) {
        if (k >= N_) return;
        if (c_.empty()) { val_ = k; c_.push_back(x); return; }
        if (k < val_) {
            c_.insert(c_.begin(), val_ - k, like_);
            val_ = k;
        }
        if (k > max_exp()) c_.resize(k - val_ + 1, like_);
        c_[k - val_] = x;
    }
    // Lowest exponent with a coefficient that is not exactly zero.
    int valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!RingOps<C>::is_zero(c_[i])) return val_ + static_cast<int>(i);
        return N_;
    }
    PowerSeries normalized() const {
        int v = valuation();
        std::vector<C> c;
        for (int k = v; k <= max_exp(); ++k) c.push_back(coeff(k));
        return PowerSeries(like_, v, std::move(c), N_);
    }
    PowerSeries truncate(int order) const {
        PowerSeries r(*this);
        r.N_ = std::min(N_, order);
        if (r.max_exp() >= r.N_) r.c_.resize(std::max(0, r.N_ - r.val_), like_);
        return r;
    }
    PowerSeries mul_xk(int k) const { PowerSeries r(*this); r.val_ += k; r.N_ += k; return r; }
    PowerSeries map(const std::function<C(const C&)>& fn) const {
        PowerSeries r(*this);
        for (auto& x : r.c_) x = fn(x);
        return r;
    }

    friend PowerSeries operator+(const PowerSeries& f, const PowerSeries& g) { return f.combine(g, false); }
    friend PowerSeries operator-(const PowerSeries& f, const PowerSeries& g) { return f.combine(g, true); }
    PowerSeries operator-() const { return map([](const C& x) { return -x; }); }
    PowerSeries scale(const C& s) const { return map([&](const C& x) { return x * s; }); }

    friend PowerSeries operator*(const PowerSeries& f, const PowerSeries& g) {
        int N = std::min(f.N_ + g.valuation(), g.N_ + f.valuation());
        int v = f.val_ + g.val_;
        std::vector<C> c(std::max(0, N - v), f.like_);
        for (size_t i = 0; i < f.c_.size(); ++i) {
            if (RingOps<C>::is_zero(f.c_[i])) continue;
            for (size_t j = 0; j < g.c_.size() && static_cast<int>(i + j) < N - v; ++j)
                c[i + j] += f.c_[i] * g.c_[j];
        }
        return PowerSeries(f.like_, v, std::move(c), N);
    }

    PowerSeries inv() const {
        PowerSeries f = normalized();
        if (f.val_ >= N_) throw PreconditionError("inverse of a series indistinguishable from zero");
        int v = f.val_, N = N_ - 2 * v;
        int len = N + v;
        C a0inv = RingOps<C>::inv(f.c_[0]);
        std::vector<C> r(std::max(0, len), like_);
        if (len > 0) r[0] = a0inv;
        for (int n = 1; n < len; ++n) {
            C s = like_;
            for (int k = 1; k <= n && k < static_cast<int>(f.c_.size()); ++k) s += f.c_[k] * r[n - k];
            r[n] = -(s * a0inv);
        }
        return PowerSeries(like_, -v, std::move(r), N);
    }

    PowerSeries derivative() const {
        std::vector<C> c;
        int v = val_ - 1;
        for (int k = val_; k <= max_exp(); ++k) c.push_back(coeff(k) * ring_q(mpq_class(k), like_));
        return PowerSeries(like_, v, std::move(c), N_ - 1);
    }
    PowerSeries integral() const {
        if (val_ < 0 && !RingOps<C>::is_zero(coeff(-1)))
            throw PreconditionError("integral of a series with a t^-1 term");
        std::vector<C> c;
        for (int k = val_; k <= max_exp(); ++k)
            c.push_back(k == -1 ? like_ : coeff(k) * ring_q(mpq_class(1, k + 1), like_));
        return PowerSeries(like_, val_ + 1, std::move(c), N_ + 1);
    }
    // (1 + T) f'(T)
    PowerSeries dlog_operator() const {
        PowerSeries d = derivative();
        return d + d.mul_xk(1);
    }

    PowerSeries pow(int n) const {
        if (n < 0) return inv().pow(-n);
        PowerSeries r = constant(ring_one(like_), 1 << 28);
        PowerSeries b(*this);
        while (n) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n) b = b * b;
        }
        return r;
    }

    PowerSeries compose(const PowerSeries& g) const;
    PowerSeries reverse() const;
    PowerSeries exp() const;
    PowerSeries log() const;

private:
    C like_;
    int val_;
    std::vector<C> c_;
    int N_;

    PowerSeries combine(const PowerSeries& g, bool sub) const {
        int N = std::min(N_, g.N_);
        int lo = std::min(val_, g.val_);
        int hi = std::min(N - 1, std::max(max_exp(), g.max_exp()));
        std::vector<C> c;
        for (int k = lo; k <= hi; ++k) {
            C a = (k >= val_ && k <= max_exp()) ? c_[k - val_] : like_;
            C b = (k >= g.val_ && k <= g.max_exp()) ? g.c_[k - g.val_] : like_;
            c.push_back(sub ? C(a - b) : C(a + b));
        }
        return PowerSeries(like_, lo, std::move(c), N);
    }
};

template <class C>
PowerSeries<C> PowerSeries<C>::compose(const PowerSeries& g0) const {
    PowerSeries g = g0.normalized();
    int w = g.val_;
    if (w < 1) throw PreconditionError("compose: inner series must have positive valuation");
    int vf = std::min(valuation(), N_);
    // error from g enters through f'(g)
    int vd = vf;
    if (vf == 0) {
        vd = N_;
        for (int k = 1; k <= max_exp(); ++k)
            if (!RingOps<C>::is_zero(coeff(k))) { vd = k; break; }
    }
    int N = std::min(w * N_, g.N_ + (vd - 1) * w);
    PowerSeries acc = zero(like_, N);
    // nonnegative part by Horner
    if (max_exp() >= 0) {
        PowerSeries h = zero(like_, N);
        for (int k = max_exp(); k >= 0; --k) {
            h = (h * g).truncate(N);
            h = h + constant(coeff(k), N);
        }
        acc = acc + h;
    }
    if (vf < 0) {
        PowerSeries gi = g.inv();
        PowerSeries p = gi;
        for (int k = -1; k >= vf; --k) {
            acc = acc + p.truncate(N).scale(coeff(k));
            if (k > vf) p = (p * gi);
        }
    }
    return acc.truncate(N);
}

template <class C>
PowerSeries<C> PowerSeries<C>::reverse() const {
    for (int k = val_; k <= 0 && k <= max_exp(); ++k)
        if (!RingOps<C>::is_zero(coeff(k))) throw PreconditionError("reverse: series must be c1·t + ...");
    if (N_ < 2) throw PreconditionError("reverse: order too small");
    C c1 = coeff(1);
    C c1inv = RingOps<C>::inv(c1);
    int N = N_;
    PowerSeries h = monomial(c1inv, 1, std::min(N, 2));
    PowerSeries fp = derivative();
    // Newton: h <- h - (f(h) - t) / f'(h), doubling the order
    for (int prec = 2; prec < N;) {
        prec = std::min(2 * prec, N);
        PowerSeries hh(like_, h.val_, h.c_, prec);
        PowerSeries e = truncate(prec).compose(hh) - var(like_, prec);
        PowerSeries d = fp.truncate(prec).compose(hh);
        h = (hh - (e.normalized() * d.inv()).truncate(prec)).truncate(prec);
    }
    return PowerSeries(like_, h.val_, h.c_, N);
}

template <class C>
PowerSeries<C> PowerSeries<C>::exp() const {
    if (valuation() < 1) throw PreconditionError("exp: series must have zero constant term");
    int N = N_;
    std::vector<C> e(std::max(0, N), like_);
    if (N > 0) e[0] = ring_one(like_);
    for (int n = 1; n < N; ++n) {
        C s = like_;
        for (int k = 1; k <= n; ++k) {
            C fk = coeff(k);
            if (RingOps<C>::is_zero(fk)) continue;
            s += fk * e[n - k] * ring_q(mpq_class(k), like_);
        }
        e[n] = s * ring_q(mpq_class(1, n), like_);
    }
    return PowerSeries(like_, 0, std::move(e), N);
}

template <class C>
PowerSeries<C> PowerSeries<C>::log() const {
    if (valuation() != 0) throw PreconditionError("log: series must have a unit constant term");
    return (derivative() * inv()).integral().truncate(N_);
}

}  // namespace ekn
