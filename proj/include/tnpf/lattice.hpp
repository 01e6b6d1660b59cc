#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include "tnpf/rational.hpp"
#include "tnpf/ring.hpp"

namespace tnpf {

struct LatticeVector {
    std::vector<long> coords;

    bool is_zero() const {
        for (long c : coords)
            if (c != 0) return false;
        return true;
    }
    friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
        return a.coords == b.coords;
    }
    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        LatticeVector r = a;
        for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& a) {
        LatticeVector r = a;
        for (auto& c : r.coords) c = -c;
        return r;
    }
};

// Positive-definite even lattice with a distinguished orthonormal frame
// (Cholesky factor) and a bimultiplicative 2-cocycle.
//
// Cocycle: eps(b_i,b_j) = +1 for i <= j and (-1)^{(b_i,b_j)} for i > j,
// extended bimultiplicatively; this satisfies eps(a,b+c) = eps(a,b) eps(a,c)
// and eps(a,b) eps(b,a) = (-1)^{(a,b)}, and is identically 1 in rank 1. An
// optional sign-correction map c: L -> {+-1} is applied as
// eps'(a,b) = eps(a,b) c(a) c(b) / c(a+b).
class LatticeData {
public:
    explicit LatticeData(std::vector<std::vector<long>> gram);

    int rank() const { return static_cast<int>(gram_.size()); }
    const std::vector<std::vector<long>>& gram() const { return gram_; }

    long inner(const LatticeVector& a, const LatticeVector& b) const;
    long norm(const LatticeVector& a) const { return inner(a, a); }

    // (a_r, v) for the orthonormal frame a_r = r-th row of cholesky^T.
    // r is 1-based.
    double pairing(int r, const LatticeVector& v) const;
    bool has_exact_pairings() const { return exact_chol_.has_value(); }
    Rational pairing_exact(int r, const LatticeVector& v) const;

    int cocycle(const LatticeVector& a, const LatticeVector& b) const;
    void set_cocycle_correction(std::function<int(const LatticeVector&)> c) {
        correction_ = std::move(c);
    }

    double min_eigenvalue() const { return min_eig_; }
    const std::vector<std::vector<double>>& cholesky() const { return chol_; }

private:
    std::vector<std::vector<long>> gram_;
    std::vector<std::vector<double>> chol_;                     // lower triangular
    std::optional<std::vector<std::vector<Rational>>> exact_chol_;
    std::function<int(const LatticeVector&)> correction_;
    double min_eig_ = 0.0;
};

inline LatticeData make_lattice(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<long>> g;
    for (const auto& r : rows) g.emplace_back(r);
    return LatticeData(std::move(g));
}

}  // namespace tnpf
