#include "ekn/mumford.hpp"

#include "ekn/lll.hpp"
#include "ekn/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ekn {

MumfordTranslation mumford_translation(const TorsionPoint& z0, const TorsionPoint& w0, mpfr_prec_t prec) {
    MumfordTranslation m;
    m.z0 = z0;
    m.w0 = w0;
    mpz_class n = 1;
    for (const mpq_class* c : {&z0.c1, &z0.c2, &w0.c1, &w0.c2}) {
        mpq_class h = *c / 2;
        h.canonicalize();
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), h.get_den_mpz_t());
    }
    m.n = n.get_si();
    // (w0z̄0 − z0w̄0)/A = log⟨w0, z0⟩ = 2πi·pairing_exponent(w0, z0), halved
    m.exponent = pairing_exponent(w0, z0) / 2;
    m.exponent.canonicalize();
    m.root_factor = exp_2pi_i_q(m.exponent, prec);
    return m;
}

ComplexBall mumford_factor_analytic(const TorsionPoint& z0, const TorsionPoint& w0, const Lattice& L) {
    ComplexBall z = z0.value(L), w = w0.value(L);
    return exp((w * z.conj() - z * w.conj()) / L.A.mul_2si(1));
}

namespace {

mpz_class scaled_int(const Real& x, long shift) {
    mpfr_t t;
    mpfr_init2(t, std::max<mpfr_prec_t>(x.prec(), 64));
    mpfr_mul_2si(t, x.get(), shift, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

ComplexBall eval_poly(const std::vector<mpz_class>& p, const ComplexBall& x) {
    ComplexBall s = ComplexBall::from_si(0, x.prec());
    for (size_t i = p.size(); i-- > 0;) s = s * x + ComplexBall::from_q(mpq_class(p[i]), x.prec());
    return s;
}

bool is_real(const ComplexBall& x) {
    return x.im().is_zero() || mag_le(mag_abs(x.im()), x.rad());
}

long accuracy(const ComplexBall& x) { return x.rad().is_zero() ? x.prec() : -x.rad().exponent(); }

long log2_abs(const mpz_class& z) { return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

}  // namespace

long AlgebraicGuess::log2_height() const {
    long h = 0;
    for (const auto& c : poly) h = std::max(h, log2_abs(c));
    return h;
}

std::optional<QuadElem> AlgebraicGuess::in_field(long d) const {
    if (!found) return std::nullopt;
    if (poly.size() == 2) return QuadElem(d, mpq_class(-poly[0], poly[1]));
    if (poly.size() != 3) return std::nullopt;
    // x = (−b ± √(b² − 4ac))/(2a); need b² − 4ac = −d·s²
    mpz_class a = poly[2], b = poly[1], c = poly[0];
    mpz_class disc = b * b - 4 * a * c;
    if (disc >= 0 || (-disc) % d != 0) return std::nullopt;
    mpz_class s2 = -disc / d, s;
    if (!mpz_perfect_square_p(s2.get_mpz_t())) return std::nullopt;
    s = sqrt(s2);
    // the root with positive imaginary part; the caller picks the conjugate when needed
    return QuadElem(d, mpq_class(-b, 2 * a), mpq_class(s, 2 * a));
}

std::string AlgebraicGuess::str() const {
    if (!found) return "unrecognized";
    std::ostringstream os;
    bool first = true;
    for (size_t i = poly.size(); i-- > 0;) {
        if (poly[i] == 0) continue;
        mpz_class c = poly[i];
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        c = abs(c);
        if (c != 1 || i == 0) os << c.get_str();
        if (i > 0) os << (c != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

AlgebraicGuess recognize_algebraic(const ComplexBall& x, int degree_bound, long log2_height_bound) {
    AlgebraicGuess g;
    g.bits = accuracy(x);
    const bool real = is_real(x);
    std::vector<ComplexBall> pw{ComplexBall::from_si(1, x.prec())};
    for (int k = 1; k <= degree_bound; ++k) pw.push_back(pw.back() * x);
    for (int k = 1; k <= degree_bound; ++k) {
        // one common scale: the absolute accuracy of the worst power
        long s = x.prec() - 8;
        for (int j = 0; j <= k; ++j) {
            long e = pw[j].rad().is_zero() ? -x.prec() : pw[j].rad().exponent();
            s = std::min(s, -e - 4);
        }
        if (s < 32) break;
        IntMatrix M(k + 1);
        for (int j = 0; j <= k; ++j) {
            M[j].assign(k + 1, 0);
            M[j][j] = 1;
            M[j].push_back(scaled_int(pw[j].re(), s));
            if (!real) M[j].push_back(scaled_int(pw[j].im(), s));
        }
        lll_reduce(M);
        std::vector<mpz_class> p(M[0].begin(), M[0].begin() + k + 1);
        if (p[k] == 0) continue;
        mpz_class c = 0;
        for (const auto& v : p) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), v.get_mpz_t());
        for (auto& v : p) v /= c;
        if (p[k] < 0)
            for (auto& v : p) v = -v;
        long h = 0;
        for (const auto& v : p) h = std::max(h, log2_abs(v));
        double budget = (real ? 0.5 : 1.0) * static_cast<double>(s) - 16;
        if (static_cast<double>((k + 1) * h) > budget) continue;
        if (log2_height_bound > 0 && h > log2_height_bound) continue;
        ComplexBall r = eval_poly(p, x);
        if (!r.contains_zero()) continue;
        g.found = true;
        g.poly = std::move(p);
        g.residual = mag_add(mag_abs(r.re()), mag_abs(r.im()));
        g.radius = r.rad();
        g.checked.push_back(g.bits);
        return g;
    }
    return g;
}

bool certify(AlgebraicGuess& g, const ComplexBall& x2) {
    if (!g.found) return false;
    ComplexBall r = eval_poly(g.poly, x2);
    bool ok = r.contains_zero();
    if (ok) g.checked.push_back(accuracy(x2));
    if (ok && 10 * accuracy(x2) >= 19 * g.bits) g.certified = true;
    return ok;
}

int DamerellReport::certified_count() const {
    return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const DamerellCell& c) { return c.certified; }));
}

DamerellReport damerell_check(const std::string& curve, const TorsionPoint& z0, const TorsionPoint& w0, int amax,
                              int bmax, const DamerellOptions& opt) {
    DamerellReport rep;
    rep.curve = curve;
    rep.z0 = z0;
    rep.w0 = w0;
    std::map<mpfr_prec_t, std::vector<ComplexBall>> values;   // indexed a·bmax + (b−1)
    auto at = [&](mpfr_prec_t p) -> const std::vector<ComplexBall>& {
        auto it = values.find(p);
        if (it != values.end()) return it->second;
        CMContext ctx = fixture(curve, p + 64);
        EKExpansion E = ek_expansion(ctx, z0, w0, bmax, amax + 1, p);
        ComplexBall rf = mumford_factor(z0, w0, p);
        std::vector<ComplexBall> v;
        for (int a = 0; a <= amax; ++a)
            for (int b = 1; b <= bmax; ++b) v.push_back(E.e_star(a, b) / (ctx.lattice.A.pow(a) * rf));
        return values.emplace(p, std::move(v)).first->second;
    };
    for (int a = 0; a <= amax; ++a)
        for (int b = 1; b <= bmax; ++b) {
            const size_t idx = static_cast<size_t>(a * bmax + b - 1);
            DamerellCell cell;
            cell.a = a;
            cell.b = b;
            cell.value = at(opt.ladder.front())[idx];
            for (mpfr_prec_t p : opt.ladder) {
                AlgebraicGuess g = recognize_algebraic(at(p)[idx], opt.degree_bound);
                if (!g.found) continue;
                bool ok = certify(g, at(2 * p)[idx]);
                for (mpfr_prec_t q : {mpfr_prec_t(512), mpfr_prec_t(1024)})
                    if (q != p && q != 2 * p) ok = certify(g, at(q)[idx]) && ok;
                cell.guess = g;
                if (ok && g.certified) {
                    cell.certified = true;
                    break;
                }
            }
            rep.cells.push_back(std::move(cell));
        }
    return rep;
}

}  // namespace ekn
