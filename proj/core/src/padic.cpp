#include "ekn/padic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ekn {

namespace {

mpz_class ppow(const mpz_class& p, long k) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::max(0L, k)));
    return r;
}

long strip(mpz_class& x, const mpz_class& p) {
    if (x == 0) return 0;
    return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

void Qp::normalize() {
    if (r_ <= 0) { v_ += std::max(0L, r_); r_ = 0; u_ = 0; return; }
    u_ = mod_pos(u_, ppow(p_, r_));
    if (u_ == 0) { v_ += r_; r_ = 0; return; }
    long k = strip(u_, p_);
    v_ += k;
    r_ -= k;
    if (r_ <= 0) { r_ = 0; u_ = 0; }
}

Qp Qp::from_q(const mpq_class& q, const mpz_class& p, long abs_prec) {
    if (q == 0) return Qp(p, abs_prec);
    mpz_class a = q.get_num(), b = q.get_den();
    long k = strip(a, p) - strip(b, p);
    Qp x(p, abs_prec);
    if (k >= abs_prec) return x;
    x.v_ = k;
    x.r_ = abs_prec - k;
    mpz_class mod = ppow(p, x.r_), binv;
    if (!mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t())) throw std::logic_error("Qp::from_q");
    x.u_ = a * binv;
    x.normalize();
    return x;
}

Qp Qp::from_unit(const mpz_class& p, long v, const mpz_class& u, long rel_prec) {
    Qp x(p, v + rel_prec);
    x.v_ = v;
    x.r_ = rel_prec;
    x.u_ = u;
    x.normalize();
    return x;
}

Qp Qp::with_abs_prec(long m) const {
    if (m >= abs_prec()) return *this;
    Qp x(*this);
    x.r_ = m - v_;
    if (x.r_ <= 0) return Qp(p_, m);
    x.normalize();
    return x;
}

mpq_class Qp::to_q() const {
    if (is_zero()) return 0;
    mpq_class r(u_);
    if (v_ >= 0) r *= mpq_class(ppow(p_, v_));
    else r /= mpq_class(ppow(p_, -v_));
    return r;
}

mpz_class Qp::residue_mod(long k) const {
    if (k > abs_prec()) throw std::domain_error("residue_mod: beyond precision");
    if (is_zero()) return 0;
    if (v_ < 0) throw std::domain_error("residue_mod: not integral");
    return mod_pos(u_ * ppow(p_, v_), ppow(p_, k));
}

Qp Qp::operator-() const {
    Qp x(*this);
    x.u_ = -x.u_;
    x.normalize();
    return x;
}

Qp operator+(const Qp& a, const Qp& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("Qp: mixed primes");
    long m = std::min(a.abs_prec(), b.abs_prec());
    if (a.is_zero() && b.is_zero()) return Qp(a.p_, m);
    long v0 = std::min(a.is_zero() ? b.v_ : a.v_, b.is_zero() ? a.v_ : b.v_);
    Qp x(a.p_, m);
    if (v0 >= m) return x;
    mpz_class s = 0;
    if (!a.is_zero()) s += a.u_ * ppow(a.p_, a.v_ - v0);
    if (!b.is_zero()) s += b.u_ * ppow(b.p_, b.v_ - v0);
    x.v_ = v0;
    x.r_ = m - v0;
    x.u_ = s;
    x.normalize();
    return x;
}

Qp operator*(const Qp& a, const Qp& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("Qp: mixed primes");
    if (a.is_zero() || b.is_zero()) {
        long m;
        if (a.is_zero() && b.is_zero()) m = a.abs_prec() + b.abs_prec();
        else if (a.is_zero()) m = a.abs_prec() + b.v_;
        else m = b.abs_prec() + a.v_;
        return Qp(a.p_, m);
    }
    Qp x(a.p_, 0);
    x.v_ = a.v_ + b.v_;
    x.r_ = std::min(a.r_, b.r_);
    x.u_ = a.u_ * b.u_;
    x.normalize();
    return x;
}

Qp Qp::inv() const {
    if (is_zero()) throw std::domain_error("Qp: inverse of zero");
    Qp x(*this);
    x.v_ = -v_;
    mpz_class mod = ppow(p_, r_);
    mpz_invert(x.u_.get_mpz_t(), u_.get_mpz_t(), mod.get_mpz_t());
    return x;
}

std::vector<long> Qp::digits() const {
    std::vector<long> d;
    mpz_class u = u_;
    for (long i = 0; i < r_; ++i) {
        mpz_class q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), u.get_mpz_t(), p_.get_mpz_t());
        d.push_back(rem.get_si());
        u = q;
    }
    return d;
}

std::string Qp::str() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "O(" << p_.get_str() << "^" << v_ << ")";
        return os.str();
    }
    os << u_.get_str();
    if (v_ != 0) os << "*" << p_.get_str() << "^" << v_;
    os << " + O(" << p_.get_str() << "^" << abs_prec() << ")";
    return os.str();
}

// ---------------------------------------------------------------- rings

std::shared_ptr<const PAdicRing> PAdicRing::trivial(const mpz_class& p, long prec) {
    auto R = std::make_shared<PAdicRing>();
    R->kind = Kind::Trivial;
    R->p = p;
    R->prec = prec;
    R->modulus = {0, 1};
    R->name = "Z_" + p.get_str();
    return R;
}

std::shared_ptr<const PAdicRing> PAdicRing::cyclotomic_p(const mpz_class& p, long prec) {
    // Φ_p(1 + X) = Σ_{j<p} C(p, j+1) X^j
    long pl = p.get_si();
    std::vector<mpq_class> P(pl);
    for (long j = 0; j < pl; ++j) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(pl), static_cast<unsigned long>(j + 1));
        P[j] = c;
    }
    return eisenstein(p, prec, P, "Z_" + p.get_str() + "[zeta_" + p.get_str() + "]");
}

std::shared_ptr<const PAdicRing> PAdicRing::eisenstein(const mpz_class& p, long prec, std::vector<mpq_class> P, std::string name) {
    auto R = std::make_shared<PAdicRing>();
    R->kind = Kind::Eisenstein;
    R->p = p;
    R->prec = prec;
    if (P.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
    for (size_t j = 0; j + 1 < P.size(); ++j) {
        Qp c = Qp::from_q(P[j], p, prec + 4);
        if (c.valuation() < 1) throw std::invalid_argument("not Eisenstein: coefficient " + std::to_string(j));
        if (j == 0 && c.valuation() != 1) throw std::invalid_argument("not Eisenstein: constant term");
    }
    R->modulus = std::move(P);
    R->name = std::move(name);
    return R;
}

std::shared_ptr<const PAdicRing> PAdicRing::unramified(const mpz_class& p, long prec, std::vector<mpq_class> P, std::string name) {
    auto R = std::make_shared<PAdicRing>();
    R->kind = Kind::Unramified;
    R->p = p;
    R->prec = prec;
    if (P.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
    R->modulus = std::move(P);
    R->name = std::move(name);
    return R;
}

// ---------------------------------------------------------------- extension elements

PAdicExt::PAdicExt(std::shared_ptr<const PAdicRing> R) : R_(std::move(R)) {
    c_.assign(R_->degree(), Qp(R_->p, R_->prec));
}

PAdicExt::PAdicExt(std::shared_ptr<const PAdicRing> R, std::vector<Qp> c) : R_(std::move(R)), c_(std::move(c)) {
    int f = R_->degree();
    if (static_cast<int>(c_.size()) > f) {
        // reduce a longer polynomial
        PAdicExt acc(R_);
        PAdicExt xp = from_qp(R_, Qp::from_q(1, R_->p, R_->prec));
        PAdicExt X = gen(R_);
        for (const auto& ci : c_) {
            acc += xp * ci;
            xp = xp * X;
        }
        *this = acc;
        return;
    }
    while (static_cast<int>(c_.size()) < f) c_.push_back(Qp(R_->p, R_->prec));
}

PAdicExt PAdicExt::from_qp(std::shared_ptr<const PAdicRing> R, const Qp& x) {
    PAdicExt r(R);
    r.c_[0] = x;
    return r;
}

PAdicExt PAdicExt::gen(std::shared_ptr<const PAdicRing> R) {
    PAdicExt r(R);
    if (R->degree() == 1) {
        r.c_[0] = Qp::from_q(-R->modulus[0], R->p, R->prec);
    } else {
        r.c_[1] = Qp::from_q(1, R->p, R->prec);
    }
    return r;
}

bool PAdicExt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Qp& x) { return x.is_zero(); });
}

bool PAdicExt::in_base() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (!c_[j].is_zero()) return false;
    return true;
}

long PAdicExt::valuation() const {
    long e = R_->ramification();
    long best = kValInfinity;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        long v = R_->kind == PAdicRing::Kind::Eisenstein ? e * c_[j].valuation() + static_cast<long>(j) : c_[j].valuation();
        best = std::min(best, v);
    }
    return best;
}

PAdicExt PAdicExt::with_abs_prec(long m) const {
    PAdicExt r(*this);
    for (auto& x : r.c_) x = x.with_abs_prec(m);
    return r;
}

PAdicExt PAdicExt::operator-() const {
    PAdicExt r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

PAdicExt operator+(const PAdicExt& a, const PAdicExt& b) {
    PAdicExt r(a);
    for (size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = a.c_[j] + b.c_[j];
    return r;
}

PAdicExt PAdicExt::operator*(const Qp& s) const {
    PAdicExt r(*this);
    for (auto& x : r.c_) x = x * s;
    return r;
}

PAdicExt operator*(const PAdicExt& a, const PAdicExt& b) {
    const auto& R = a.R_;
    int f = R->degree();
    if (f == 1) return PAdicExt(R, {a.c_[0] * b.c_[0]});
    std::vector<Qp> t(2 * f - 1, Qp(R->p, 2 * R->prec + 8));
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) t[i + j] += a.c_[i] * b.c_[j];
    for (int k = 2 * f - 2; k >= f; --k) {
        Qp top = t[k];
        for (int j = 0; j < f; ++j) t[k - f + j] -= top * Qp::from_q(R->modulus[j], R->p, 2 * R->prec + 8);
    }
    std::vector<Qp> out(t.begin(), t.begin() + f);
    return PAdicExt(R, std::move(out));
}

PAdicExt PAdicExt::inv() const {
    const auto& R = R_;
    int f = R->degree();
    if (f == 1) return PAdicExt(R, {c_[0].inv()});
    // columns: this · X^j
    std::vector<std::vector<Qp>> M(f, std::vector<Qp>(f + 1, Qp(R->p, R->prec)));
    PAdicExt col = *this;
    PAdicExt X = gen(R);
    for (int j = 0; j < f; ++j) {
        for (int i = 0; i < f; ++i) M[i][j] = col.c_[i];
        col = col * X;
    }
    M[0][f] = Qp::from_q(1, R->p, R->prec);
    for (int k = 0; k < f; ++k) {
        int piv = -1;
        long best = kValInfinity;
        for (int i = k; i < f; ++i)
            if (!M[i][k].is_zero() && M[i][k].valuation() < best) { best = M[i][k].valuation(); piv = i; }
        if (piv < 0) throw std::domain_error("PAdicExt: not invertible at this precision");
        std::swap(M[k], M[piv]);
        Qp ip = M[k][k].inv();
        for (int j = k; j <= f; ++j) M[k][j] = M[k][j] * ip;
        for (int i = 0; i < f; ++i) {
            if (i == k || M[i][k].is_zero()) continue;
            Qp fac = M[i][k];
            for (int j = k; j <= f; ++j) M[i][j] -= fac * M[k][j];
        }
    }
    std::vector<Qp> y(f);
    for (int i = 0; i < f; ++i) y[i] = M[i][f];
    return PAdicExt(R, std::move(y));
}

Qp PAdicExt::trace() const {
    const auto& R = R_;
    int f = R->degree();
    if (f == 1) return c_[0];
    // Newton's identities for power sums of the roots of P
    std::vector<mpq_class> a(R->modulus.begin(), R->modulus.end());
    std::vector<mpq_class> s(f);
    s[0] = f;
    for (int k = 1; k < f; ++k) {
        mpq_class acc = mpq_class(k) * a[f - k];
        for (int i = 1; i < k; ++i) acc += a[f - i] * s[k - i];
        s[k] = -acc;
    }
    Qp t(R->p, R->prec);
    for (int j = 0; j < f; ++j) t += c_[j] * Qp::from_q(s[j], R->p, R->prec + 8);
    return t;
}

std::string PAdicExt::str() const {
    std::ostringstream os;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (j) os << " + ";
        os << "(" << c_[j].str() << ")";
        if (j) os << "*X^" << j;
    }
    return os.str();
}

std::vector<Qp> hensel_roots(const std::vector<mpz_class>& poly, const mpz_class& p, long prec) {
    auto eval = [&](const mpz_class& x, const mpz_class& mod) {
        mpz_class r = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = mod_pos(r * x + *it, mod);
        return r;
    };
    auto deriv = [&](const mpz_class& x, const mpz_class& mod) {
        mpz_class r = 0;
        for (size_t k = poly.size() - 1; k >= 1; --k) {
            r = mod_pos(r * x + poly[k] * static_cast<long>(k), mod);
            if (k == 1) break;
        }
        return r;
    };
    std::vector<Qp> roots;
    long pl = p.get_si();
    mpz_class mod = ppow(p, prec);
    for (long r0 = 0; r0 < pl; ++r0) {
        mpz_class x = r0;
        if (eval(x, p) != 0) continue;
        if (deriv(x, p) == 0) continue;  // only simple roots
        for (int it = 0; it < 2 * prec + 4; ++it) {
            mpz_class d = deriv(x, mod), di;
            mpz_invert(di.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
            x = mod_pos(x - eval(x, mod) * di, mod);
        }
        roots.push_back(Qp::from_q(mpq_class(x), p, prec));
    }
    return roots;
}

}  // namespace ekn
