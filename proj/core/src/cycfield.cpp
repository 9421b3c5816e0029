#include "ekn/cycfield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ekn {

namespace {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

ZPoly exact_div(ZPoly num, const ZPoly& den) {
    // den monic
    size_t dn = num.size() - 1, dd = den.size() - 1;
    ZPoly q(dn - dd + 1, 0);
    for (size_t k = dn + 1; k-- > dd;) {
        mpz_class t = num[k];
        q[k - dd] = t;
        for (size_t j = 0; j <= dd; ++j) num[k - dd + j] -= t * den[j];
    }
    return q;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    QPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// remainder of a by b (b nonzero)
QPoly qrem(QPoly a, const QPoly& b, QPoly* quot = nullptr) {
    trim(a);
    QPoly bb = b;
    trim(bb);
    size_t db = bb.size() - 1;
    QPoly q;
    if (a.size() >= bb.size()) q.assign(a.size() - db, 0);
    while (a.size() >= bb.size() && !(a.size() == 1 && a[0] == 0)) {
        size_t k = a.size() - 1;
        mpq_class t = a[k] / bb[db];
        q[k - db] = t;
        for (size_t j = 0; j <= db; ++j) a[k - db + j] -= t * bb[j];
        a.pop_back();
        if (a.empty()) a.push_back(0);
        trim(a);
    }
    if (quot) *quot = q.empty() ? QPoly{0} : q;
    return a;
}

}  // namespace

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<mpz_class>& cyclotomic_poly(int n) {
    static std::mutex mu;
    static std::map<int, ZPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // bottom-up over divisors (a recursive call would retake the lock)
    std::vector<int> divs;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) divs.push_back(d);
    for (int d : divs) {
        if (cache.count(d)) continue;
        ZPoly x(d + 1, 0);
        x[0] = -1;
        x[d] = 1;
        for (int e : divs) {
            if (e >= d || d % e) continue;
            x = exact_div(x, cache.at(e));
        }
        cache[d] = x;
    }
    return cache.at(n);
}

CycElem::CycElem(int f, const mpq_class& a) : f_(f), c_(euler_phi(f), 0) { c_[0] = a; }

CycElem::CycElem(int f, std::vector<mpq_class> coords) : f_(f), c_(std::move(coords)) { reduce(); }

void CycElem::reduce() {
    const ZPoly& P = cyclotomic_poly(f_);
    size_t deg = P.size() - 1;
    if (c_.empty()) c_.push_back(0);
    for (size_t k = c_.size(); k-- > deg;) {
        mpq_class t = c_[k];
        if (t == 0) continue;
        for (size_t j = 0; j <= deg; ++j) c_[k - deg + j] -= t * mpq_class(P[j]);
    }
    c_.resize(deg, 0);
}

CycElem CycElem::zeta_pow(int f, long k) {
    long kk = ((k % f) + f) % f;
    std::vector<mpq_class> c(kk + 1, 0);
    c[kk] = 1;
    return CycElem(f, c);
}

bool CycElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

bool CycElem::is_rational() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

CycElem CycElem::lift(int L) const {
    if (L % f_) throw std::invalid_argument("CycElem::lift: order does not divide target");
    int s = L / f_;
    std::vector<mpq_class> c(static_cast<size_t>(s) * c_.size() + 1, 0);
    for (size_t j = 0; j < c_.size(); ++j) c[j * s] = c_[j];
    return CycElem(L, c);
}

static void align(CycElem& a, CycElem& b) {
    if (a.order() == b.order()) return;
    int L = std::lcm(a.order(), b.order());
    a = a.lift(L);
    b = b.lift(L);
}

CycElem CycElem::operator-() const {
    CycElem r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

CycElem operator+(const CycElem& a0, const CycElem& b0) {
    CycElem a = a0, b = b0;
    align(a, b);
    for (size_t j = 0; j < a.c_.size(); ++j) a.c_[j] += b.c_[j];
    return a;
}

CycElem operator*(const CycElem& a0, const CycElem& b0) {
    CycElem a = a0, b = b0;
    align(a, b);
    return CycElem(a.f_, qmul(a.c_, b.c_));
}

bool operator==(const CycElem& a, const CycElem& b) { return (a - b).is_zero(); }

CycElem CycElem::inv() const {
    if (is_zero()) throw std::domain_error("CycElem: inverse of zero");
    // extended Euclid: s·a + t·Φ = 1
    const ZPoly& P = cyclotomic_poly(f_);
    QPoly r0(P.begin(), P.end()), r1 = c_;
    trim(r1);
    QPoly s0{0}, s1{1};
    while (!(r1.size() == 1 && r1[0] == 0)) {
        QPoly q;
        QPoly r2 = qrem(r0, r1, &q);
        QPoly qs = qmul(q, s1);
        QPoly s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        trim(s2);
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    // r0 is a nonzero constant
    mpq_class c = r0[0];
    for (auto& x : s0) x /= c;
    return CycElem(f_, s0);
}

ComplexBall CycElem::embed(mpfr_prec_t prec) const {
    ComplexBall z = exp_2pi_i_q(mpq_class(1, f_), prec + 16);
    ComplexBall acc(prec + 16), zk = ComplexBall::from_si(1, prec + 16);
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] != 0) acc += zk.mul_q(c_[j]);
        zk *= z;
    }
    return acc.with_prec(prec);
}

Qp CycElem::embed_p(const Qp& root) const {
    Qp acc(root.p(), root.abs_prec()), xk = Qp::from_q(1, root.p(), root.abs_prec());
    for (size_t j = 0; j < c_.size(); ++j) {
        acc += xk * Qp::from_q(c_[j], root.p(), root.abs_prec() + 8);
        xk = xk * root;
    }
    return acc;
}

long CycElem::p_denominator_exponent(const mpz_class& p) const {
    long worst = 0;
    for (const auto& x : c_) {
        mpz_class d = x.get_den();
        long e = static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
        worst = std::max(worst, e);
    }
    return worst;
}

std::string CycElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << q_str(c_[j]);
        if (j) os << "*z" << f_ << "^" << j;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace ekn
