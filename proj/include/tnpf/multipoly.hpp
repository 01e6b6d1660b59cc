#pragma once

#include <map>
#include <vector>

#include "tnpf/qseries.hpp"

namespace tnpf {

// Polynomial in a few formal variables, truncated by total degree, with
// q-series coefficients. Just enough ring structure for the generating
// identities; sizes stay tiny (n <= 3, degree <= 8).
template <class K>
class MultiPoly {
public:
    using Key = std::vector<int>;

    MultiPoly(int nvars, long maxdeg, long trunc)
        : nvars_(nvars), maxdeg_(maxdeg), trunc_(trunc) {}

    static MultiPoly one(int nvars, long maxdeg, long trunc) {
        MultiPoly p(nvars, maxdeg, trunc);
        p.c_.emplace(Key(static_cast<size_t>(nvars), 0), QSeries<K>::one(trunc));
        return p;
    }

    int nvars() const { return nvars_; }
    long maxdeg() const { return maxdeg_; }
    long trunc() const { return trunc_; }
    const std::map<Key, QSeries<K>>& coeffs() const { return c_; }
    bool is_structurally_zero() const { return c_.empty(); }

    static long degree(const Key& k) {
        long d = 0;
        for (int e : k) d += e;
        return d;
    }

    void add_term(const Key& k, const QSeries<K>& q) {
        if (degree(k) > maxdeg_ || q.is_structurally_zero()) return;
        auto [it, fresh] = c_.emplace(k, q);
        if (!fresh) {
            it->second = it->second + q;
            if (it->second.is_structurally_zero()) c_.erase(it);
        }
    }

    QSeries<K> coeff(const Key& k) const {
        auto it = c_.find(k);
        return it == c_.end() ? QSeries<K>::zero(trunc_) : it->second;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        r.maxdeg_ = std::min(a.maxdeg_, b.maxdeg_);
        for (const auto& [k, q] : b.c_) r.add_term(k, q);
        std::erase_if(r.c_, [&](const auto& kv) { return degree(kv.first) > r.maxdeg_; });
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        return a + b.scaled_rational(Rational(-1));
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.nvars_, std::min(a.maxdeg_, b.maxdeg_), std::min(a.trunc_, b.trunc_));
        for (const auto& [ka, qa] : a.c_)
            for (const auto& [kb, qb] : b.c_) {
                Key k(ka);
                long d = 0;
                for (size_t i = 0; i < k.size(); ++i) {
                    k[i] += kb[i];
                    d += k[i];
                }
                if (d > r.maxdeg_) continue;
                r.add_term(k, qa * qb);
            }
        return r;
    }

    MultiPoly scaled(const QSeries<K>& s) const {
        MultiPoly r(nvars_, maxdeg_, trunc_);
        for (const auto& [k, q] : c_) r.add_term(k, q * s);
        return r;
    }

    MultiPoly scaled_rational(const Rational& x) const {
        MultiPoly r(nvars_, maxdeg_, trunc_);
        K c = field_traits<K>::from_rational(x);
        for (const auto& [k, q] : c_) r.add_term(k, q.scaled(c));
        return r;
    }

    // exp of a polynomial with no constant term
    MultiPoly exp() const {
        if (c_.count(Key(static_cast<size_t>(nvars_), 0)))
            throw std::domain_error("MultiPoly::exp requires zero constant term");
        MultiPoly r = one(nvars_, maxdeg_, trunc_);
        MultiPoly term = r;
        for (long m = 1; m <= maxdeg_; ++m) {
            term = (term * *this).scaled_rational(Rational(1, m));
            if (term.is_structurally_zero()) break;
            r = r + term;
        }
        return r;
    }

    double max_abs() const {
        double v = 0.0;
        for (const auto& [k, q] : c_) v = std::max(v, q.max_abs());
        return v;
    }

private:
    int nvars_;
    long maxdeg_;
    long trunc_;
    std::map<Key, QSeries<K>> c_;
};

}  // namespace tnpf
