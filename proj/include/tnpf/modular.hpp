#pragma once

#include "tnpf/qseries.hpp"
#include "tnpf/rational.hpp"

namespace tnpf {

// B_k in the convention with B_2 = 1/6, B_4 = -1/30 (the one that makes the
// Eisenstein constant terms come out right). Cached, thread-safe.
Rational bernoulli(unsigned long k);

// Divisor power sum: sum of d^k over positive divisors d of n. n >= 1.
Rational sigma(long n, unsigned long k);

// Weight-k Eisenstein series, normalized as
//   E_k = -B_k/k! + (2/(k-1)!) sum_{n>=1} sigma_{k-1}(n) q^n
// for even k >= 2, and identically zero for odd k. Exponents are in t-units,
// t = q^{1/24}. Requires k >= 1.
QSeries<Rational> eisenstein(long k, long trunc);

template <class K>
QSeries<K> eisenstein_k(long k, long trunc) {
    if constexpr (field_traits<K>::exact)
        return eisenstein(k, trunc);
    else
        return to_cplx(eisenstein(k, trunc));
}

// Dedekind eta: t * prod_{n>=1} (1 - q^n), truncated. Leading exponent is
// exactly 1 (i.e. q^{1/24}).
QSeries<Rational> eta_series(long trunc);

template <class K>
QSeries<K> eta_series_k(long trunc) {
    if constexpr (field_traits<K>::exact)
        return eta_series(trunc);
    else
        return to_cplx(eta_series(trunc));
}

}  // namespace tnpf
