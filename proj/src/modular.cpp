#include "tnpf/modular.hpp"

#include <mutex>
#include <vector>

namespace tnpf {

Rational bernoulli(unsigned long k) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= k) {
        unsigned long m = cache.size();
        // sum_{j<=m} binom(m+1, j) B_j = 0
        Rational s(0);
        for (unsigned long j = 0; j < m; ++j)
            s += Rational::binomial(static_cast<long>(m) + 1, static_cast<long>(j)) * cache[j];
        cache.push_back(-s / Rational(static_cast<long>(m) + 1));
    }
    return cache[k];
}

Rational sigma(long n, unsigned long k) {
    if (n < 1) throw std::domain_error("sigma: n must be positive");
    Rational s(0);
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += Rational::pow(Rational(d), static_cast<long>(k));
        long e = n / d;
        if (e != d) s += Rational::pow(Rational(e), static_cast<long>(k));
    }
    return s;
}

QSeries<Rational> eisenstein(long k, long trunc) {
    if (k < 1) throw std::invalid_argument("eisenstein: k must be >= 1");
    if (k % 2 == 1) return QSeries<Rational>::zero(trunc);
    std::vector<QSeries<Rational>::Term> terms;
    terms.emplace_back(0, -bernoulli(static_cast<unsigned long>(k)) /
                              Rational::factorial(static_cast<unsigned long>(k)));
    Rational pre = Rational(2) / Rational::factorial(static_cast<unsigned long>(k - 1));
    for (long n = 1; 24 * n < trunc; ++n)
        terms.emplace_back(24 * n, pre * sigma(n, static_cast<unsigned long>(k - 1)));
    return QSeries<Rational>::from_terms(std::move(terms), trunc);
}

QSeries<Rational> eta_series(long trunc) {
    if (trunc < 1) throw std::invalid_argument("eta_series: trunc must be >= 1");
    if (trunc == 1) return QSeries<Rational>::zero(1);
    QSeries<Rational> p = QSeries<Rational>::one(trunc - 1);
    for (long n = 1; 24 * n < trunc - 1; ++n) {
        QSeries<Rational> f = QSeries<Rational>::one(trunc - 1) -
                              QSeries<Rational>::monomial(24 * n, Rational(1), trunc - 1);
        p = p * f;
    }
    return p.mul_monomial(1, Rational(1));
}

}  // namespace tnpf
