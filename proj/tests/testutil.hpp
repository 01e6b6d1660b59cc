#pragma once

#include <cstdint>
#include <vector>

#include "tnpf/qseries.hpp"
#include "tnpf/rational.hpp"

namespace tnpf::testutil {

// Deterministic 64-bit generator (splitmix64) used by the randomized
// property checks; seeded per test so failures reproduce.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long uniform(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline Rational random_rational(Rng& rng) {
    long num = rng.uniform(-12, 12);
    long den = rng.uniform(1, 9);
    return Rational(num, den);
}

inline QSeries<Rational> random_qseries(Rng& rng, long trunc, int nterms) {
    std::vector<QSeries<Rational>::Term> terms;
    for (int i = 0; i < nterms; ++i) {
        long e = rng.uniform(-4, trunc - 1);
        terms.emplace_back(e, random_rational(rng));
    }
    std::vector<QSeries<Rational>::Term> dedup;
    for (auto& t : terms) {
        bool seen = false;
        for (auto& d : dedup)
            if (d.first == t.first) {
                d.second += t.second;
                seen = true;
                break;
            }
        if (!seen) dedup.push_back(t);
    }
    return QSeries<Rational>::from_terms(std::move(dedup), trunc);
}

// Independent partition counter: dynamic programming over part sizes.
inline std::vector<long long> partition_numbers(int n) {
    std::vector<long long> p(static_cast<size_t>(n) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int m = part; m <= n; ++m) p[static_cast<size_t>(m)] += p[static_cast<size_t>(m - part)];
    return p;
}

}  // namespace tnpf::testutil
