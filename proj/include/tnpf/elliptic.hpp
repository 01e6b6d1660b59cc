#pragma once

#include "tnpf/modular.hpp"
#include "tnpf/zseries.hpp"

namespace tnpf {

// Formal (z, q)-expansions of the genus-one special functions. All return
// Laurent series in z whose coefficients are q-series in t = q^{1/24}.

// P_0(z,tau) = -log z + sum_{k>=2} E_k z^k / k. The -log z term is carried on
// the series' log flag.
template <class K>
ZSeries<QSeries<K>> p0_series(long zorder, long trunc) {
    if (zorder < 2) throw std::invalid_argument("p0_series: zorder must be >= 2");
    std::vector<typename ZSeries<QSeries<K>>::Term> terms;
    for (long k = 2; k < zorder; ++k) {
        if (k % 2 != 0) continue;
        terms.emplace_back(k, eisenstein_k<K>(k, trunc)
                                  .scaled(field_traits<K>::from_rational(Rational(1, k))));
    }
    auto s = ZSeries<QSeries<K>>::from_terms(std::move(terms), zorder);
    s.set_log_z(-1);
    return s;
}

// P_n(z,tau) = (-1)^n/(n-1)! d^n/dz^n P_0
//            = z^{-n} + (-1)^n sum_{k>=2} binom(k-1, n-1) E_k z^{k-n}.
// (The derivative definition fixes the sign of the sum; it only matters for
// odd n, where it also makes P_1 = zeta_Weierstrass - E_2 z hold.)
template <class K>
ZSeries<QSeries<K>> pn_series(long n, long zorder, long trunc) {
    if (n < 1) throw std::invalid_argument("pn_series: n must be >= 1");
    std::vector<typename ZSeries<QSeries<K>>::Term> terms;
    terms.emplace_back(-n, QSeries<K>::one(trunc));
    Rational sign(n % 2 == 0 ? 1 : -1);
    for (long k = 2; k - n < zorder; ++k) {
        if (k % 2 != 0) continue;
        Rational c = sign * Rational::binomial(k - 1, n - 1);
        terms.emplace_back(k - n,
                           eisenstein_k<K>(k, trunc).scaled(field_traits<K>::from_rational(c)));
    }
    return ZSeries<QSeries<K>>::from_terms(std::move(terms), zorder);
}

inline Rational cd_prefactor(long r, long s) {
    if (r < 1) throw std::invalid_argument("C/D coefficient: r must be >= 1");
    if (s < 0) throw std::invalid_argument("C/D coefficient: s must be >= 0");
    Rational sign(r % 2 == 0 ? -1 : 1);  // (-1)^{r+1}
    if (s == 0) return sign;
    return sign * Rational::factorial(static_cast<unsigned long>(r + s - 1)) /
           (Rational::factorial(static_cast<unsigned long>(r - 1)) *
            Rational::factorial(static_cast<unsigned long>(s - 1)));
}

// C(r,s) = (-1)^{r+1} (r+s-1)!/((r-1)!(s-1)!) E_{r+s};  C(r,0) = (-1)^{r+1} E_r.
template <class K>
QSeries<K> c_coeff(long r, long s, long trunc) {
    Rational pre = cd_prefactor(r, s);
    long k = s == 0 ? r : r + s;
    return eisenstein_k<K>(k, trunc).scaled(field_traits<K>::from_rational(pre));
}

// D(r,s,z) = (-1)^{r+1} (r+s-1)!/((r-1)!(s-1)!) P_{r+s}(z);  D(r,0,z) = (-1)^{r+1} P_r(z).
template <class K>
ZSeries<QSeries<K>> d_coeff(long r, long s, long zorder, long trunc) {
    Rational pre = cd_prefactor(r, s);
    long n = s == 0 ? r : r + s;
    return pn_series<K>(n, zorder, trunc).scaled_rational(pre);
}

// Prime form K(z,tau) = exp(-P_0) = z * exp(-sum_{k>=2} E_k z^k / k).
// Leading term is z^1 with coefficient 1.
template <class K>
ZSeries<QSeries<K>> prime_form_series(long zorder, long trunc) {
    auto mp0 = -p0_series<K>(zorder, trunc);
    return mp0.exp_with_one(QSeries<K>::one(trunc));
}

// Exact bivariate expansion of -i * theta_1(z,tau):
//   sum_n (-1)^n t^{3(2n+1)^2} exp((n+1/2) z),
// whose coefficients are rational (the i of the definition cancels against
// exp((n+1/2) i pi)).
template <class K>
ZSeries<QSeries<K>> minus_i_theta1_series(long zorder, long trunc) {
    std::map<long, QSeries<K>> acc;  // z-exponent -> q-series
    for (long n = -64; n <= 64; ++n) {
        long te = 3 * (2 * n + 1) * (2 * n + 1);
        if (te >= trunc) continue;
        Rational sign(((n % 2) + 2) % 2 == 0 ? 1 : -1);  // (-1)^n
        Rational half(2 * n + 1, 2);
        Rational zpow(1);
        for (long m = 0; m < zorder; ++m) {
            Rational c = sign * zpow / Rational::factorial(static_cast<unsigned long>(m));
            auto mono = QSeries<K>::monomial(te, field_traits<K>::from_rational(c), trunc);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, mono);
            else
                it->second = it->second + mono;
            zpow *= half;
        }
    }
    std::vector<typename ZSeries<QSeries<K>>::Term> terms;
    for (auto& [e, c] : acc)
        if (!c.is_structurally_zero()) terms.emplace_back(e, std::move(c));
    return ZSeries<QSeries<K>>::from_terms(std::move(terms), zorder);
}

}  // namespace tnpf
