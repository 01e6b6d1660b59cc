#include "tnpf/fock.hpp"

#include <algorithm>
#include <mutex>

namespace tnpf {

FockMonomial normalize_monomial(FockMonomial m) {
    std::sort(m.begin(), m.end(), [](const ModePower& a, const ModePower& b) {
        return std::pair(a.dir, a.mode) < std::pair(b.dir, b.mode);
    });
    FockMonomial out;
    for (const auto& mp : m) {
        if (mp.exp == 0) continue;
        if (mp.exp < 0) throw std::invalid_argument("FockMonomial: negative exponent");
        if (mp.mode < 1) throw std::invalid_argument("FockMonomial: modes must be >= 1");
        if (!out.empty() && out.back().dir == mp.dir && out.back().mode == mp.mode)
            out.back().exp += mp.exp;
        else
            out.push_back(mp);
    }
    return out;
}

long monomial_weight(const FockMonomial& m) {
    long w = 0;
    for (const auto& mp : m) w += mp.mode * mp.exp;
    return w;
}

long monomial_degree(const FockMonomial& m) {
    long d = 0;
    for (const auto& mp : m) d += mp.exp;
    return d;
}

int remove_one_mode(FockMonomial& m, int dir, long mode) {
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].dir == dir && m[i].mode == mode) {
            int mult = m[i].exp;
            if (--m[i].exp == 0) m.erase(m.begin() + static_cast<long>(i));
            return mult;
        }
    }
    return 0;
}

namespace {

// coefficients of e^z (e^z - 1)^{j-1} (j >= 1) resp. [z^{k+m}] e^z u^{-m-1}
// with u = (e^z - 1)/z, computed with dense rational polynomials
std::vector<Rational> dense_mul(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                size_t n) {
    std::vector<Rational> r(n, Rational(0));
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

std::vector<Rational> dense_inv(const std::vector<Rational>& a, size_t n) {
    // a[0] must be 1
    std::vector<Rational> y(n, Rational(0));
    y[0] = Rational(1);
    for (size_t e = 1; e < n; ++e) {
        Rational s(0);
        for (size_t j = 1; j <= e && j < a.size(); ++j) s += a[j] * y[e - j];
        y[e] = -s;
    }
    return y;
}

Rational compute_square_round(long m, long k) {
    if (m < -k) return Rational(0);
    size_t order = static_cast<size_t>(k + std::max(m, 0L)) + 2;
    std::vector<Rational> ez(order), u(order);  // e^z and (e^z-1)/z
    for (size_t i = 0; i < order; ++i) {
        ez[i] = Rational(1) / Rational::factorial(static_cast<unsigned long>(i));
        u[i] = Rational(1) / Rational::factorial(static_cast<unsigned long>(i + 1));
    }
    if (m < 0) {
        // [z^{k-1}] e^z (e^z - 1)^{j-1}, j = -m; (e^z-1)^{j-1} = z^{j-1} u^{j-1}
        long j = -m;
        std::vector<Rational> acc = ez;
        for (long i = 0; i < j - 1; ++i) acc = dense_mul(acc, u, order);
        long idx = k - 1 - (j - 1);
        return idx >= 0 && static_cast<size_t>(idx) < order ? acc[static_cast<size_t>(idx)]
                                                           : Rational(0);
    }
    // [z^{k+m}] e^z u^{-(m+1)}
    std::vector<Rational> uinv = dense_inv(u, order);
    std::vector<Rational> acc = ez;
    for (long i = 0; i < m + 1; ++i) acc = dense_mul(acc, uinv, order);
    return acc[static_cast<size_t>(k + m)];
}

}  // namespace

Rational square_round_coeff(long m_round, long k_square) {
    if (k_square < 1) throw std::invalid_argument("square_round_coeff: k must be >= 1");
    static std::mutex mu;
    static std::map<std::pair<long, long>, Rational> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m_round, k_square);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rational v = compute_square_round(m_round, k_square);
    cache.emplace(key, v);
    return v;
}

}  // namespace tnpf
