#include "ekn/measures.hpp"

#include <sstream>

namespace ekn {

namespace {

Qp qp(const mpq_class& q, const mpz_class& p, long prec) { return Qp::from_q(q, p, prec); }

PowerSeries<Qp> to_qp(const PowerSeries<mpq_class>& f, const mpz_class& p, long prec) {
    std::vector<Qp> c;
    for (int k = 0; k < f.order(); ++k) c.push_back(qp(f.coeff(k), p, prec));
    return PowerSeries<Qp>(qp(0, p, prec), 0, std::move(c), f.order());
}

Qp integral_or_throw(const mpq_class& q, const mpz_class& p, long prec, const char* what) {
    Qp x = qp(q, p, prec);
    if (!x.is_zero() && x.valuation() < 0) throw std::domain_error(std::string(what) + ": coefficient not p-integral");
    return x;
}

bool is_multiplicative(const FormalGroup& g) { return g.name == "Gm"; }

}  // namespace

std::shared_ptr<const FormalGroup> FormalGroup::multiplicative(const mpz_class& p, long prec, int N) {
    auto g = std::make_shared<FormalGroup>();
    g->name = "Gm";
    g->p = p;
    g->prec = prec;
    std::vector<mpq_class> l;
    for (int k = 1; k <= N; ++k) l.push_back(mpq_class(k % 2 ? 1 : -1, k));
    g->log = PowerSeries<mpq_class>(mpq_class(0), 1, l, N + 1);
    return g;
}

std::shared_ptr<const FormalGroup> FormalGroup::elliptic(const FormalCurve& fc, const mpz_class& p, long prec) {
    auto g = std::make_shared<FormalGroup>();
    g->name = "E";
    g->p = p;
    g->prec = prec;
    g->log = to_rational(fc.lambda);
    g->omega_weight = 1;
    return g;
}

PowerSeries<Qp> FormalGroup::inv_dlog() const {
    if (is_multiplicative(*this)) return PowerSeries<Qp>(qp(0, p, prec), 0, {qp(1, p, prec), qp(1, p, prec)}, 1 << 20);
    return to_qp(log.derivative().inv(), p, prec + 2);
}

BiSeries<Qp> FormalGroup::law(int ns, int nx) const {
    BiSeries<Qp> r(qp(0, p, prec), ns, nx);
    if (is_multiplicative(*this)) {
        // s + x + sx
        const Qp one = qp(1, p, prec + 4);
        if (ns > 1) r(1, 0) = one;
        if (nx > 1) r(0, 1) = one;
        if (ns > 1 && nx > 1) r(1, 1) = one;
        return r;
    }
    if (log.order() < ns + nx) throw PreconditionError("formal group law: logarithm too short");
    PowerSeries<mpq_class> inv = log.truncate(ns + nx).reverse();
    BiSeries<mpq_class> Y = BiSeries<mpq_class>::from_z(log, ns, nx) + BiSeries<mpq_class>::from_w(log, ns, nx);
    BiSeries<mpq_class> F(mpq_class(0), ns, nx);
    for (int k = ns + nx - 2; k >= 1; --k) {
        F = F * Y;
        F(0, 0) += inv.coeff(k);
    }
    F = F * Y;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nx; ++j) r(i, j) = integral_or_throw(F(i, j), p, prec + 4, "formal group law");
    return r;
}

PowerSeries<Qp> FormalGroup::multiplication(long n, int N) const {
    if (is_multiplicative(*this)) {
        // (1+t)^n − 1
        std::vector<Qp> c;
        mpq_class b = 1;
        for (int k = 0; k < N; ++k) {
            c.push_back(qp(k == 0 ? mpq_class(0) : b, p, prec + 4));
            b = b * (n - k) / (k + 1);
        }
        return PowerSeries<Qp>(qp(0, p, prec), 0, std::move(c), N);
    }
    if (log.order() < N) throw PreconditionError("multiplication: logarithm too short");
    PowerSeries<mpq_class> m = log.truncate(N).reverse().compose(log.truncate(N).scale(mpq_class(n)));
    std::vector<Qp> c;
    for (int k = 0; k < N; ++k) c.push_back(integral_or_throw(m.coeff(k), p, prec + 4, "[n]"));
    return PowerSeries<Qp>(qp(0, p, prec), 0, std::move(c), N);
}

std::vector<Qp> distinguished_polynomial(const std::vector<Qp>& f, long prec) {
    int n = 0;
    while (n < static_cast<int>(f.size()) && (f[n].is_zero() || f[n].valuation() > 0)) ++n;
    if (n == static_cast<int>(f.size())) throw std::domain_error("distinguished_polynomial: no unit coefficient");
    const mpz_class& p = f[n].p();
    int L = static_cast<int>(f.size()) - n;
    auto trunc = [&](std::vector<Qp> v, int len) {
        v.resize(len, qp(0, p, prec + 4));
        return v;
    };
    auto mul = [&](const std::vector<Qp>& a, const std::vector<Qp>& b, int len) {
        std::vector<Qp> r(len, qp(0, p, prec + 4));
        for (int i = 0; i < len && i < static_cast<int>(a.size()); ++i)
            for (int j = 0; i + j < len && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    std::vector<Qp> lo(f.begin(), f.begin() + n), hi(f.begin() + n, f.end());
    PowerSeries<Qp> hs(qp(0, p, prec + 4), 0, hi, L);
    std::vector<Qp> hinv;
    PowerSeries<Qp> hsi = hs.inv();
    for (int k = 0; k < L; ++k) hinv.push_back(hsi.coeff(k));
    // f = P·U with P = t^n + (q·lo mod t^n) and q = hi^{-1}(1 − (q·lo div t^n))
    std::vector<Qp> q = hinv;
    for (long it = 0; it < prec + 4; ++it) {
        std::vector<Qp> ql = mul(q, lo, L + n);
        std::vector<Qp> tau(ql.begin() + n, ql.end());
        tau = trunc(tau, L);
        for (auto& x : tau) x = -x;
        tau[0] += qp(1, p, prec + 4);
        q = mul(hinv, tau, L);
    }
    std::vector<Qp> P = trunc(mul(q, lo, n), n);
    P.push_back(qp(1, p, prec + 4));
    return P;
}

std::shared_ptr<const PAdicRing> FormalGroup::torsion_ring() const {
    if (torsion_) return torsion_;
    if (is_multiplicative(*this)) return torsion_ = PAdicRing::cyclotomic_p(p, prec + 4);
    long e = p.get_si() - 1;
    int D = static_cast<int>(e * (prec + 6) + p.get_si() + 2);
    PowerSeries<Qp> pt = multiplication(p.get_si(), D + 1);
    std::vector<Qp> f;
    for (int k = 1; k <= D; ++k) f.push_back(pt.coeff(k));
    std::vector<Qp> P = distinguished_polynomial(f, prec + 4);
    if (static_cast<long>(P.size()) - 1 != e) throw std::domain_error("torsion_ring: formal group is not of height one");
    std::vector<mpq_class> Pq;
    for (const Qp& c : P) Pq.push_back(c.to_q());
    return torsion_ = PAdicRing::eisenstein(p, prec + 4, Pq, "Z_" + p.get_str() + "[E[p]]");
}

long MeasureSeries::min_precision() const {
    long m = kValInfinity;
    for (int i = 0; i < series.nz(); ++i)
        for (int j = 0; i + j <= degree && j < series.nw(); ++j) m = std::min(m, series(i, j).abs_prec());
    return m;
}

std::string PadicMoment::str() const {
    std::ostringstream os;
    os << value.str();
    if (omega_power) os << " * Omega_p^" << omega_power;
    return os.str();
}

MeasureSeries from_rational(const BiSeries<mpq_class>& f, const mpz_class& p, long prec, bool polynomial) {
    MeasureSeries ms;
    ms.group = FormalGroup::multiplicative(p, prec, 4);
    ms.degree = std::min(f.nz(), f.nw()) - 1;
    ms.series = BiSeries<Qp>(qp(0, p, prec), f.nz(), f.nw());
    for (int i = 0; i < f.nz(); ++i)
        for (int j = 0; j < f.nw(); ++j) ms.series(i, j) = integral_or_throw(f(i, j), p, prec, "measure");
    ms.polynomial = polynomial;
    ms.descriptor = "series";
    return ms;
}

MeasureSeries dirac(const mpz_class& p, long prec, long u, long v, int degree) {
    auto binom = [](long u, int k) {
        mpq_class b = 1;
        for (int i = 0; i < k; ++i) b = b * (u - i) / (i + 1);
        return b;
    };
    BiSeries<mpq_class> f(mpq_class(0), degree + 1, degree + 1);
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) f(i, j) = binom(u, i) * binom(v, j);
    MeasureSeries ms = from_rational(f, p, prec, u >= 0 && v >= 0 && u + v <= degree);
    ms.descriptor = "dirac(" + std::to_string(u) + "," + std::to_string(v) + ")";
    return ms;
}

PadicMoment moments(const MeasureSeries& ms, int i, int j) {
    if (i < 0 || j < 0) throw PreconditionError("moments: negative index");
    if (i + j > ms.degree)
        throw MomentRangeError(ms.degree, ms.degree, "moment (" + std::to_string(i) + "," + std::to_string(j) +
                                                         ") needs total degree " + std::to_string(i + j) +
                                                         ", series known through " + std::to_string(ms.degree));
    PowerSeries<Qp> w = ms.group->inv_dlog();
    auto d_first = [&](const BiSeries<Qp>& B, int known) {
        // (w(s)·∂_s B)(k, l) = Σ_m w_m (k−m+1) B(k−m+1, l)
        BiSeries<Qp> r(B.like(), known, known);
        for (int k = 0; k < known; ++k)
            for (int l = 0; k + l < known; ++l) {
                Qp s = B.like();
                for (int m = 0; m <= k; ++m) {
                    Qp wm = w.coeff(m);
                    if (wm.is_zero()) continue;
                    s += wm * B.at(k - m + 1, l) * qp(k - m + 1, ms.p(), B(0, 0).abs_prec() + 4);
                }
                r(k, l) = s;
            }
        return r;
    };
    BiSeries<Qp> B = ms.series.truncate(ms.degree + 1, ms.degree + 1);
    int known = ms.degree + 1;
    for (int k = 0; k < i; ++k) B = d_first(B, --known);
    B = B.swapped();
    for (int k = 0; k < j; ++k) B = d_first(B, --known);
    return {B(0, 0), ms.group->omega_weight * (i + j)};
}

namespace {

// f − (1/p)·Σ_τ f(s ⊕ τ, t)
MeasureSeries restrict_first(const MeasureSeries& ms, int keep) {
    const FormalGroup& G = *ms.group;
    const mpz_class& p = G.p;
    auto R = G.torsion_ring();
    long e = R->ramification();
    int N = ms.degree;
    long work = 1;
    for (int i = 0; i < ms.series.nz(); ++i)
        for (int j = 0; i + j <= N && j < ms.series.nw(); ++j) work = std::max(work, ms.series(i, j).abs_prec());
    work += 3;
    int nx = is_multiplicative(G) ? 2 : static_cast<int>(e * (work + 2));
    keep = std::min(keep, N);
    BiSeries<Qp> F = G.law(keep + 1, nx);
    PAdicExt tau = PAdicExt::gen(R), zero(R), one = PAdicExt::from_qp(R, qp(1, p, R->prec));
    // U(s) = F(s, τ)
    std::vector<PAdicExt> U(keep + 1, zero);
    for (int l = 0; l <= keep; ++l) {
        PAdicExt tp = one;
        for (int x = 0; x < nx; ++x) {
            if (!F(l, x).is_zero()) U[l] += tp * F(l, x);
            tp *= tau;
        }
    }
    std::vector<PAdicExt> Uk(keep + 1, zero);
    Uk[0] = one;
    std::vector<std::vector<PAdicExt>> H(keep + 1, std::vector<PAdicExt>(N + 1, zero));
    for (int k = 0; k <= N; ++k) {
        if (k > 0) {
            std::vector<PAdicExt> nxt(keep + 1, zero);
            for (int a = 0; a <= keep; ++a)
                for (int b = 0; a + b <= keep; ++b) nxt[a + b] += Uk[a] * U[b];
            Uk = std::move(nxt);
        }
        for (int j = 0; k + j <= N; ++j) {
            const Qp& g = ms.series(k, j);
            if (g.is_zero()) continue;
            for (int l = 0; l <= keep && l + j <= N; ++l) H[l][j] += Uk[l] * g;
        }
    }
    MeasureSeries out = ms;
    Qp invp = qp(mpq_class(1) / p, p, work + 4);
    for (int l = 0; l <= N; ++l)
        for (int j = 0; l + j <= N; ++j) {
            if (l > keep) {
                out.series(l, j) = Qp::from_q(0, p, 0);   // not computed
                continue;
            }
            Qp v = ms.series(l, j) - (ms.series(l, j) + H[l][j].trace()) * invp;
            if (!ms.polynomial) {
                long cap = (N + 1 - l - j) / e - 1;
                v = v.with_abs_prec(std::max(cap, 0L));
            }
            out.series(l, j) = v;
        }
    out.descriptor = "restrict(" + ms.descriptor + ")";
    return out;
}

MeasureSeries swapped(MeasureSeries ms) {
    ms.series = ms.series.swapped();
    return ms;
}

}  // namespace

MeasureSeries restrict_to_units(const MeasureSeries& ms, UnitVariable which, int keep) {
    if (keep < 0) keep = ms.degree;
    MeasureSeries r = ms;
    if (which != UnitVariable::T) r = restrict_first(r, keep);
    if (which != UnitVariable::S) r = swapped(restrict_first(swapped(r), keep));
    r.degree = std::min(ms.degree, keep);
    return r;
}

MeasureSeries restrict_dirac_combination(const std::vector<std::pair<std::pair<long, long>, mpz_class>>& terms,
                                         const mpz_class& p, long prec, int degree, UnitVariable which) {
    BiSeries<mpq_class> f(mpq_class(0), degree + 1, degree + 1);
    for (const auto& [uv, c] : terms) {
        auto [u, v] = uv;
        bool keep_u = which == UnitVariable::T || u % p != 0;
        bool keep_v = which == UnitVariable::S || v % p != 0;
        if (!keep_u || !keep_v) continue;
        MeasureSeries d = dirac(p, prec, u, v, degree);
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; i + j <= degree; ++j) f(i, j) += d.series(i, j).to_q() * c;
    }
    return from_rational(f, p, prec, true);
}

MeasureSeries rescale_second(const MeasureSeries& ms, long n) {
    MeasureSeries r = ms;
    int M = ms.degree + 1;
    PowerSeries<Qp> id = PowerSeries<Qp>::var(ms.series.like(), M);
    r.series = ms.series.truncate(M, M).compose(id, ms.group->multiplication(n, M));
    r.polynomial = false;
    r.descriptor = "rescale_y(" + ms.descriptor + "," + std::to_string(n) + ")";
    return r;
}

MeasureSeries operator+(const MeasureSeries& a, const MeasureSeries& b) {
    if (a.group->name != b.group->name || a.p() != b.p()) throw PreconditionError("measures on different groups");
    MeasureSeries r = a;
    r.degree = std::min(a.degree, b.degree);
    r.series = a.series + b.series;
    r.polynomial = a.polynomial && b.polynomial;
    r.descriptor = a.descriptor + "+" + b.descriptor;
    return r;
}

MeasureSeries scale(const MeasureSeries& a, const mpz_class& c) {
    MeasureSeries r = a;
    r.series = a.series.scale(qp(mpq_class(c), a.p(), a.min_precision() + 4));
    return r;
}

}  // namespace ekn
