#include "ekn/lll.hpp"

#include <stdexcept>

namespace ekn {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// round(a / b), b > 0
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_class t = 2 * a + b;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * b).get_mpz_t());
    return q;
}

}  // namespace

// Integral version: all Gram-Schmidt data kept as exact integers d_i, λ_ij.
// Indices are 1-based to stay close to the textbook recurrences; d[0] = 1.
void lll_reduce(IntMatrix& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) return;
    std::vector<std::vector<mpz_class>> b(n + 1);
    for (int i = 1; i <= n; ++i) b[i] = rows[i - 1];
    std::vector<mpz_class> d(n + 1);
    std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1));
    d[0] = 1;
    d[1] = dot(b[1], b[1]);
    if (d[1] == 0) throw std::invalid_argument("lll_reduce: zero row");

    auto red = [&](int k, int l) {
        mpz_class t = 2 * lam[k][l];
        if (abs(t) <= d[l]) return;
        mpz_class q = round_div(lam[k][l], d[l]);
        for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
        lam[k][l] -= q * d[l];
        for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    int k = 2, kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 1; j <= k; ++j) {
                mpz_class u = dot(b[k], b[j]);
                for (int i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else
                    d[k] = u;
            }
            if (d[k] == 0) throw std::invalid_argument("lll_reduce: dependent rows");
        }
        red(k, k - 1);
        if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
            std::swap(b[k], b[k - 1]);
            for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            mpz_class l = lam[k][k - 1];
            mpz_class B = (d[k - 2] * d[k] + l * l) / d[k - 1];
            for (int i = k + 1; i <= kmax; ++i) {
                mpz_class t = lam[i][k];
                lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
                lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
            }
            d[k - 1] = B;
            if (k > 2) --k;
        } else {
            for (int l = k - 2; l >= 1; --l) red(k, l);
            ++k;
        }
    }
    for (int i = 1; i <= n; ++i) rows[i - 1] = std::move(b[i]);
}

}  // namespace ekn
