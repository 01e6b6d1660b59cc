#pragma once

#include <functional>
#include <map>

#include "tnpf/fock.hpp"

namespace tnpf::testutil {

// Y[v1, z].v2 for rank-1 square-bracket monomials, straight from the
// normal-ordered product expansion
//   Y[v1,z] = :prod_i (1/(k_i-1)!) d^{k_i-1} a[z]:,
// i.e. a sum over mode tuples (n_i) with weights
// (-1)^{k_i-1} binom(n_i+k_i-1, k_i-1) z^{-n_i-k_i}. Annihilation components
// act on v2, creations are appended; a[0] acts as zero on M. Returns the map
// z-exponent -> state, complete for exponents in [jlo, jhi].
inline std::map<long, FockState<Rational>> square_vertex_action(const FockMonomial& v1,
                                                                const FockMonomial& v2, long jlo,
                                                                long jhi) {
    std::vector<long> ks;
    long w1 = 0;
    for (const auto& mp : v1) {
        if (mp.dir != 1) throw std::invalid_argument("square_vertex_action: rank 1 only");
        for (int e = 0; e < mp.exp; ++e) ks.push_back(mp.mode);
        w1 += mp.mode * mp.exp;
    }
    std::map<long, int> avail;
    long w2 = 0;
    for (const auto& mp : v2) {
        if (mp.dir != 1) throw std::invalid_argument("square_vertex_action: rank 1 only");
        avail[mp.mode] += mp.exp;
        w2 += mp.mode * mp.exp;
    }
    // per-factor z-exponent is -n_i - k_i, so j = created - annihilated - w1
    // and created <= jhi + w1 + annihilated <= jhi + w1 + w2
    const long cre_max = std::max<long>(0, jhi + w1 + w2);
    std::map<long, FockState<Rational>> out;
    std::vector<long> creations;
    std::function<void(size_t, Rational, long, long)> rec = [&](size_t fi, Rational coeff,
                                                                long created, long annihilated) {
        if (fi == ks.size()) {
            long j = created - annihilated - w1;
            if (j < jlo || j > jhi) return;
            FockMonomial m;
            for (auto& [k, e] : avail)
                if (e > 0) m.push_back({1, k, e});
            for (long c : creations) m.push_back({1, c, 1});
            out[j].add_term(normalize_monomial(std::move(m)), coeff);
            return;
        }
        long k = ks[fi];
        Rational sign(k % 2 == 1 ? 1 : -1);
        for (auto& [n, e] : avail) {
            if (e == 0) continue;
            Rational w = sign * Rational::binomial(n + k - 1, k - 1) * Rational(n * e);
            if (w.is_zero()) continue;
            --e;
            rec(fi + 1, coeff * w, created, annihilated + n);
            ++e;
        }
        for (long n = 1; created + n <= cre_max; ++n) {
            Rational w = sign * Rational::binomial(-n + k - 1, k - 1);
            if (w.is_zero()) continue;
            creations.push_back(n);
            rec(fi + 1, coeff * w, created + n, annihilated);
            creations.pop_back();
        }
    };
    rec(0, Rational(1), 0, 0);
    return out;
}

}  // namespace tnpf::testutil
