#pragma once

#include <map>
#include <vector>

#include "tnpf/rational.hpp"
#include "tnpf/ring.hpp"

namespace tnpf {

// One creation-mode power a_dir[-mode]^exp (or a_dir(-mode)^exp on the round
// side; the algebra is the same).
struct ModePower {
    int dir;    // boson direction, 1-based
    long mode;  // k >= 1
    int exp;    // > 0

    friend auto operator<=>(const ModePower&, const ModePower&) = default;
};

// Canonically sorted monomial of creation modes acting on 1 (x) e^alpha.
using FockMonomial = std::vector<ModePower>;

FockMonomial normalize_monomial(FockMonomial m);
long monomial_weight(const FockMonomial& m);  // boson part: sum of mode*exp
long monomial_degree(const FockMonomial& m);  // number of mode factors counted with exponent
// Multiset removal of one a_dir[-mode]; returns multiplicity found (0 if absent).
int remove_one_mode(FockMonomial& m, int dir, long mode);

// Linear combination of Fock monomials over K. The lattice label alpha is
// carried by the caller; states here are pure boson parts.
template <class K>
struct FockState {
    std::map<FockMonomial, K> terms;

    static FockState vacuum() {
        FockState s;
        s.terms.emplace(FockMonomial{}, field_traits<K>::one());
        return s;
    }
    static FockState monomial_state(FockMonomial m, K c = field_traits<K>::one()) {
        FockState s;
        if (!field_traits<K>::is_zero(c)) s.terms.emplace(normalize_monomial(std::move(m)), std::move(c));
        return s;
    }

    bool is_zero() const { return terms.empty(); }
    void add_term(FockMonomial m, const K& c) {
        if (field_traits<K>::is_zero(c)) return;
        auto [it, fresh] = terms.emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (field_traits<K>::is_zero(it->second)) terms.erase(it);
        }
    }
    FockState& operator+=(const FockState& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    FockState scaled(const K& c) const {
        FockState r;
        if (field_traits<K>::is_zero(c)) return r;
        for (const auto& [m, x] : terms) {
            K y = x * c;
            if (!field_traits<K>::is_zero(y)) r.terms.emplace(m, std::move(y));
        }
        return r;
    }
    long max_weight() const {
        long w = 0;
        for (const auto& [m, c] : terms) w = std::max(w, monomial_weight(m));
        return w;
    }
};

// Heisenberg mode action on a state: m < 0 appends a creation mode, m > 0
// contracts against matching creation modes with factor m per match
// (orthonormal directions), m = 0 multiplies by the scalar zero_mode_value
// (the pairing (a_dir, alpha) of the state's lattice label).
template <class K>
FockState<K> mode_apply(int dir, long m, const FockState<K>& v, const K& zero_mode_value) {
    FockState<K> out;
    if (m == 0) return v.scaled(zero_mode_value);
    for (const auto& [mono, c] : v.terms) {
        if (m < 0) {
            FockMonomial nm = mono;
            nm.push_back({dir, -m, 1});
            out.add_term(normalize_monomial(std::move(nm)), c);
        } else {
            for (size_t i = 0; i < mono.size(); ++i) {
                if (mono[i].dir != dir || mono[i].mode != m) continue;
                K factor = c * field_traits<K>::from_rational(Rational(m * mono[i].exp));
                FockMonomial nm = mono;
                if (--nm[i].exp == 0) nm.erase(nm.begin() + static_cast<long>(i));
                out.add_term(std::move(nm), factor);
            }
        }
    }
    return out;
}

// Coefficient of a(m_round) in the square-bracket mode a[-k_square], i.e.
// [z^{k-1}] e^z (e^z - 1)^{-m-1}. Nonzero only for m >= -k; the leading
// creation coefficient (m = -k) is 1. Cached.
Rational square_round_coeff(long m_round, long k_square);

// Change of coordinates from square-bracket to round-bracket modes applied to
// a monomial acting on 1 (x) e^alpha; zero_modes[r-1] supplies the a_r(0)
// eigenvalue (a_r, alpha) (exactly zero on the Heisenberg VOA itself).
template <class K>
FockState<K> square_to_round(const FockMonomial& square, const std::vector<K>& zero_modes) {
    FockState<K> state = FockState<K>::vacuum();
    // apply operators right to left
    std::vector<std::pair<int, long>> factors;
    for (const auto& mp : square)
        for (int e = 0; e < mp.exp; ++e) factors.emplace_back(mp.dir, mp.mode);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        auto [dir, k] = *it;
        FockState<K> next;
        long wmax = state.max_weight();
        for (long m = -k; m <= wmax; ++m) {
            Rational g = square_round_coeff(m, k);
            if (g.is_zero()) continue;
            K zc = m == 0 ? zero_modes.at(static_cast<size_t>(dir - 1)) : field_traits<K>::zero();
            FockState<K> part = mode_apply(dir, m, state, zc);
            next += part.scaled(field_traits<K>::from_rational(g));
        }
        state = next;
    }
    return state;
}

}  // namespace tnpf
