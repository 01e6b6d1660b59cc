#include "tnpf/oracle.hpp"

#include <algorithm>
#include <string>

namespace tnpf {

namespace {

void gen_partition_monomials(int dir, int rank, long budget, FockMonomial& cur,
                             std::vector<FockMonomial>& out) {
    if (dir > rank) {
        out.push_back(cur);
        return;
    }
    // partitions over modes of this direction, largest mode first to keep the
    // enumeration canonical
    struct Rec {
        static void go(int dir, int rank, long budget, long maxmode, FockMonomial& cur,
                       std::vector<FockMonomial>& out) {
            gen_partition_monomials(dir + 1, rank, budget, cur, out);
            for (long mode = std::min(budget, maxmode); mode >= 1; --mode) {
                cur.push_back({dir, mode, 1});
                size_t idx = cur.size() - 1;
                go(dir, rank, budget - mode, mode, cur, out);
                if (--cur[idx].exp == 0) cur.pop_back();
            }
        }
    };
    // merge equal modes afterwards via normalize; generate with exp-1 pushes
    Rec::go(dir, rank, budget, budget, cur, out);
}

}  // namespace

GradedModuleBasis::GradedModuleBasis(const LatticeData& lattice, LatticeVector beta, long W,
                                     long cap)
    : lattice_(&lattice), beta_(std::move(beta)), W_(W) {
    if (W > cap)
        throw size_error("GradedModuleBasis: weight cutoff " + std::to_string(W) +
                         " exceeds cap " + std::to_string(cap));
    if (static_cast<int>(beta_.coords.size()) != lattice.rank())
        throw std::invalid_argument("GradedModuleBasis: beta rank mismatch");
    std::vector<FockMonomial> raw;
    FockMonomial cur;
    gen_partition_monomials(1, lattice.rank(), W, cur, raw);
    for (auto& m : raw) states_.push_back(normalize_monomial(std::move(m)));
    std::sort(states_.begin(), states_.end(),
              [](const FockMonomial& a, const FockMonomial& b) {
                  long wa = monomial_weight(a), wb = monomial_weight(b);
                  return wa != wb ? wa < wb : a < b;
              });
    by_weight_.assign(static_cast<size_t>(W) + 1, {});
    for (size_t i = 0; i < states_.size(); ++i) {
        index_.emplace(states_[i], static_cast<int>(i));
        by_weight_[static_cast<size_t>(monomial_weight(states_[i]))].push_back(
            static_cast<int>(i));
    }
}

int GradedModuleBasis::index_of(const FockMonomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("GradedModuleBasis: state not in basis");
    return it->second;
}

namespace {

template <class K>
struct ZeroModeEnumerator {
    const GradedModuleBasis& basis;
    const std::vector<K>& beta_pairings;
    std::vector<std::pair<int, long>> factors;  // (dir, k) expanded by exponent
    std::map<std::pair<int, long>, int> avail;
    std::vector<std::pair<int, long>> created;
    long avail_weight = 0;
    long created_weight = 0;
    long annihilated_weight = 0;
    std::map<int, K>* column = nullptr;
    int mu_index = 0;

    void leaf(const K& coeff) {
        if (created_weight != annihilated_weight) return;
        FockMonomial out;
        for (const auto& [key, e] : avail)
            if (e > 0) out.push_back({key.first, key.second, e});
        for (const auto& [dir, mode] : created) out.push_back({dir, mode, 1});
        out = normalize_monomial(std::move(out));
        int idx = basis.index_of(out);
        if (monomial_weight(out) != monomial_weight(basis.states()[static_cast<size_t>(mu_index)]))
            throw std::logic_error("zero_mode: weight not preserved");
        auto [it, fresh] = column->emplace(idx, coeff);
        if (!fresh) {
            it->second += coeff;
            if (field_traits<K>::is_zero(it->second)) column->erase(it);
        }
    }

    void rec(size_t fi, const K& coeff) {
        if (fi == factors.size()) {
            leaf(coeff);
            return;
        }
        auto [dir, k] = factors[fi];
        size_t remaining = factors.size() - fi - 1;
        // weight-balance pruning
        long slack_annihilate = annihilated_weight + avail_weight - created_weight;
        long slack_create = created_weight +
                            static_cast<long>(remaining) * basis.max_weight() -
                            annihilated_weight;
        (void)slack_create;

        // n > 0: contract against available modes of this direction
        for (auto& [key, e] : avail) {
            if (key.first != dir || e == 0) continue;
            long n = key.second;
            if (annihilated_weight + n >
                created_weight + static_cast<long>(remaining + 1) * basis.max_weight())
                continue;
            K w = field_traits<K>::from_rational(
                Rational(k % 2 == 1 ? 1 : -1) * Rational::binomial(n + k - 1, k - 1) *
                Rational(n * e));
            if (field_traits<K>::is_zero(w)) continue;
            --e;
            avail_weight -= n;
            annihilated_weight += n;
            rec(fi + 1, K(coeff * w));
            ++e;
            avail_weight += n;
            annihilated_weight -= n;
        }
        // n = 0: central scalar (a_dir, beta)
        {
            const K& z = beta_pairings[static_cast<size_t>(dir - 1)];
            if (!field_traits<K>::is_zero(z)) {
                K w = field_traits<K>::from_rational(Rational(k % 2 == 1 ? 1 : -1));
                rec(fi + 1, K(coeff * w * z));
            }
        }
        // n < 0: create a_dir(n); bounded by what can still be annihilated
        for (long n = 1; n <= slack_annihilate; ++n) {
            K w = field_traits<K>::from_rational(Rational(k % 2 == 1 ? 1 : -1) *
                                                 Rational::binomial(-n + k - 1, k - 1));
            if (field_traits<K>::is_zero(w)) continue;
            created.emplace_back(dir, n);
            created_weight += n;
            rec(fi + 1, K(coeff * w));
            created_weight -= n;
            created.pop_back();
        }
    }
};

}  // namespace

template <class K>
SparseOperator<K> zero_mode(const FockState<K>& round_v, const GradedModuleBasis& basis,
                            const std::vector<K>& beta_pairings) {
    SparseOperator<K> op;
    op.columns.assign(basis.states().size(), {});
    for (const auto& [mono, coeff] : round_v.terms) {
        ZeroModeEnumerator<K> en{basis, beta_pairings, {}, {}, {}, 0, 0, 0, nullptr, 0};
        for (const auto& mp : mono)
            for (int e = 0; e < mp.exp; ++e) en.factors.emplace_back(mp.dir, mp.mode);
        for (size_t i = 0; i < basis.states().size(); ++i) {
            const FockMonomial& mu = basis.states()[i];
            en.avail.clear();
            en.avail_weight = 0;
            for (const auto& mp : mu) {
                en.avail[{mp.dir, mp.mode}] = mp.exp;
                en.avail_weight += mp.mode * mp.exp;
            }
            en.created.clear();
            en.created_weight = en.annihilated_weight = 0;
            en.column = &op.columns[i];
            en.mu_index = static_cast<int>(i);
            en.rec(0, coeff);
        }
    }
    return op;
}

template <class K>
QSeries<K> brute_trace(const FockMonomial& square_v, const GradedModuleBasis& basis) {
    const LatticeData& lat = basis.lattice();
    int l = lat.rank();
    std::vector<K> zero_in_voa(static_cast<size_t>(l), field_traits<K>::zero());
    FockState<K> round = square_to_round<K>(square_v, zero_in_voa);
    std::vector<K> beta_pairings;
    for (int r = 1; r <= l; ++r) {
        if constexpr (field_traits<K>::exact)
            beta_pairings.push_back(lat.pairing_exact(r, basis.beta()));
        else
            beta_pairings.push_back(Cplx(lat.pairing(r, basis.beta()), 0.0));
    }
    SparseOperator<K> op = zero_mode<K>(round, basis, beta_pairings);
    long h24 = 12 * lat.norm(basis.beta());  // (beta,beta)/2 in t-units
    long trunc = 24 * (basis.max_weight() + 1) + h24 - l;
    std::vector<typename QSeries<K>::Term> terms;
    for (long w = 0; w <= basis.max_weight(); ++w) {
        K tr = field_traits<K>::zero();
        for (int idx : basis.by_weight()[static_cast<size_t>(w)]) {
            auto it = op.columns[static_cast<size_t>(idx)].find(idx);
            if (it != op.columns[static_cast<size_t>(idx)].end()) tr += it->second;
        }
        if (!field_traits<K>::is_zero(tr)) terms.emplace_back(24 * w + h24 - l, tr);
    }
    return QSeries<K>::from_terms(std::move(terms), trunc);
}

template <class K>
QSeries<K> brute_partition_function(const GradedModuleBasis& basis) {
    const LatticeData& lat = basis.lattice();
    long h24 = 12 * lat.norm(basis.beta());
    long l = lat.rank();
    long trunc = 24 * (basis.max_weight() + 1) + h24 - l;
    std::vector<typename QSeries<K>::Term> terms;
    for (long w = 0; w <= basis.max_weight(); ++w)
        terms.emplace_back(24 * w + h24 - l,
                           field_traits<K>::from_rational(Rational(basis.dim_at(w))));
    return QSeries<K>::from_terms(std::move(terms), trunc);
}

template SparseOperator<Rational> zero_mode(const FockState<Rational>&, const GradedModuleBasis&,
                                            const std::vector<Rational>&);
template SparseOperator<Cplx> zero_mode(const FockState<Cplx>&, const GradedModuleBasis&,
                                        const std::vector<Cplx>&);
template QSeries<Rational> brute_trace(const FockMonomial&, const GradedModuleBasis&);
template QSeries<Cplx> brute_trace(const FockMonomial&, const GradedModuleBasis&);
template QSeries<Rational> brute_partition_function(const GradedModuleBasis&);
template QSeries<Cplx> brute_partition_function(const GradedModuleBasis&);

}  // namespace tnpf
