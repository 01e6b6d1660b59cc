#include "tnpf/matchings.hpp"

#include <algorithm>
#include <string>

namespace tnpf {

namespace {

struct Enumerator {
    std::size_t n;
    bool allow_fixed;
    const std::function<void(const Involution&)>* visit;
    std::vector<char> used;
    Involution cur;

    void run() {
        std::size_t u = 0;
        while (u < n && used[u]) ++u;
        if (u == n) {
            (*visit)(cur);
            return;
        }
        used[u] = 1;
        for (std::size_t v = u + 1; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cur.pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
            run();
            cur.pairs.pop_back();
            used[v] = 0;
        }
        if (allow_fixed) {
            cur.fixed.push_back(static_cast<int>(u));
            run();
            cur.fixed.pop_back();
        }
        used[u] = 0;
    }
};

void enumerate(const LabelledSet& s, std::size_t cap, bool allow_fixed,
               const std::function<void(const Involution&)>& visit) {
    if (cap > kHardInvolutionCap) cap = kHardInvolutionCap;
    if (s.size() > cap)
        throw size_error("involution enumeration: set size " + std::to_string(s.size()) +
                         " exceeds cap " + std::to_string(cap));
    if (!allow_fixed && s.size() % 2 == 1) return;  // no fixed-point-free involutions
    Enumerator e{s.size(), allow_fixed, &visit, std::vector<char>(s.size(), 0), {}};
    e.run();
}

}  // namespace

Matching Matching::from_involution(const LabelledSet& s, const Involution& inv) {
    Matching m;
    for (const auto& [i, j] : inv.pairs) {
        long a = s.elements[static_cast<size_t>(i)].label;
        long b = s.elements[static_cast<size_t>(j)].label;
        if (a > b) std::swap(a, b);
        ++m.edges[{a, b}];
    }
    return m;
}

Rational aut_order(const Matching& m) {
    Rational r(1);
    for (const auto& [labels, mult] : m.edges) {
        r *= Rational::factorial(static_cast<unsigned long>(mult));
        if (labels.first == labels.second)
            r *= Rational::pow(Rational(2), mult);
    }
    return r;
}

void enumerate_involutions(const LabelledSet& s, std::size_t cap,
                           const std::function<void(const Involution&)>& visit) {
    enumerate(s, cap, true, visit);
}

void enumerate_fpf(const LabelledSet& s, std::size_t cap,
                   const std::function<void(const Involution&)>& visit) {
    enumerate(s, cap, false, visit);
}

std::uint64_t count_involutions(const LabelledSet& s, std::size_t cap) {
    std::uint64_t n = 0;
    enumerate_involutions(s, cap, [&](const Involution&) { ++n; });
    return n;
}

std::uint64_t count_fpf(const LabelledSet& s, std::size_t cap) {
    std::uint64_t n = 0;
    enumerate_fpf(s, cap, [&](const Involution&) { ++n; });
    return n;
}

}  // namespace tnpf
