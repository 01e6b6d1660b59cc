#pragma once

#include <map>
#include <vector>

#include "tnpf/fock.hpp"
#include "tnpf/lattice.hpp"
#include "tnpf/qseries.hpp"

namespace tnpf {

constexpr long kDefaultBasisCap = 10;

// Round-bracket partition-monomial basis of M (x) e^beta through total weight
// W, indexed per weight.
class GradedModuleBasis {
public:
    GradedModuleBasis(const LatticeData& lattice, LatticeVector beta, long W,
                      long cap = kDefaultBasisCap);

    const LatticeData& lattice() const { return *lattice_; }
    const LatticeVector& beta() const { return beta_; }
    long max_weight() const { return W_; }
    const std::vector<FockMonomial>& states() const { return states_; }
    const std::vector<std::vector<int>>& by_weight() const { return by_weight_; }
    int index_of(const FockMonomial& m) const;
    long dim_at(long weight) const {
        return static_cast<long>(by_weight_[static_cast<size_t>(weight)].size());
    }

private:
    const LatticeData* lattice_;
    LatticeVector beta_;
    long W_;
    std::vector<FockMonomial> states_;
    std::map<FockMonomial, int> index_;
    std::vector<std::vector<int>> by_weight_;
};

// o(v) realized as a sparse basis-indexed map; weight-preserving by
// construction (weight_shift 0), which apply() asserts.
template <class K>
struct SparseOperator {
    std::vector<std::map<int, K>> columns;  // columns[i]: image of basis state i
    long weight_shift = 0;
};

// Zero mode of a round-bracket Fock state: for each monomial
// a_{r1}(-k1)...a_{rm}(-km).1 the total-degree-zero normal-ordered mode sum
//   sum_{n1+...+nm=0} prod_i (-1)^{k_i-1} binom(n_i+k_i-1, k_i-1)
//       :a_{r1}(n1)...a_{rm}(nm):
// with a_r(0) acting as the scalar (a_r, beta).
template <class K>
SparseOperator<K> zero_mode(const FockState<K>& round_v, const GradedModuleBasis& basis,
                            const std::vector<K>& beta_pairings);

// Tr_{M (x) e^beta} o(v) q^{L(0)-l/24} for a square-bracket monomial state v,
// as a q-series valid through weight W.
template <class K>
QSeries<K> brute_trace(const FockMonomial& square_v, const GradedModuleBasis& basis);

// Convenience: the graded dimensions prod-of-partitions generating series,
// i.e. the brute partition function q^{(beta,beta)/2 - l/24} sum dim_m q^m.
template <class K>
QSeries<K> brute_partition_function(const GradedModuleBasis& basis);

}  // namespace tnpf
