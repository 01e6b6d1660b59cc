#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tnpf/qseries.hpp"

namespace tnpf {

// Scalar ring abstraction for ZSeries coefficients: either a truncated
// q-series or a plain complex number (fully numeric tau).
template <class S>
struct scalar_traits;

template <class K>
struct scalar_traits<QSeries<K>> {
    static constexpr bool exact = field_traits<K>::exact;
    static bool is_zero(const QSeries<K>& s) { return s.is_structurally_zero(); }
    static QSeries<K> scale_rational(const QSeries<K>& s, const Rational& r) {
        return s.scaled(field_traits<K>::from_rational(r));
    }
    static QSeries<K> inv(const QSeries<K>& s) { return s.inverse(); }
    static double max_abs(const QSeries<K>& s) { return s.max_abs(); }
};

template <>
struct scalar_traits<Cplx> {
    static constexpr bool exact = false;
    static bool is_zero(const Cplx& s) { return s == Cplx(0.0, 0.0); }
    static Cplx scale_rational(const Cplx& s, const Rational& r) { return s * r.to_double(); }
    static Cplx inv(const Cplx& s) { return field_traits<Cplx>::inv(s); }
    static double max_abs(const Cplx& s) { return std::abs(s); }
};

// Truncated Laurent series in one formal variable z over a scalar ring S,
// with finite principal part. An optional c*log(z) term (c integer, used only
// by P_0) is carried separately; exp() converts it into a z^c prefactor.
template <class S>
class ZSeries {
public:
    using Term = std::pair<long, S>;

    explicit ZSeries(long ztrunc = 0) : ztrunc_(ztrunc) {}

    static ZSeries zero(long ztrunc) { return ZSeries(ztrunc); }
    static ZSeries monomial(long e, S c, long ztrunc) {
        ZSeries s(ztrunc);
        if (e < ztrunc && !scalar_traits<S>::is_zero(c)) s.c_.emplace_back(e, std::move(c));
        return s;
    }
    static ZSeries from_terms(std::vector<Term> terms, long ztrunc) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        ZSeries s(ztrunc);
        for (auto& t : terms) {
            if (t.first >= ztrunc) continue;
            if (!s.c_.empty() && s.c_.back().first == t.first)
                throw std::invalid_argument("ZSeries: duplicate exponent");
            if (!scalar_traits<S>::is_zero(t.second)) s.c_.push_back(std::move(t));
        }
        return s;
    }

    long ztrunc() const { return ztrunc_; }
    long log_z() const { return logz_; }
    void set_log_z(long c) { logz_ = c; }
    bool is_structurally_zero() const { return c_.empty() && logz_ == 0; }
    long lead() const { return c_.empty() ? ztrunc_ : c_.front().first; }
    const std::vector<Term>& terms() const { return c_; }

    const S* coeff_ptr(long e) const {
        auto it = std::lower_bound(c_.begin(), c_.end(), e,
                                   [](const Term& t, long x) { return t.first < x; });
        if (it != c_.end() && it->first == e) return &it->second;
        return nullptr;
    }
    // Coefficient of z^e, with an explicit zero to return when absent.
    S coeff_or(long e, S zero_value) const {
        if (e >= ztrunc_) throw std::out_of_range("ZSeries::coeff beyond truncation");
        const S* p = coeff_ptr(e);
        return p ? *p : zero_value;
    }

    ZSeries operator-() const {
        ZSeries r(ztrunc_);
        r.logz_ = -logz_;
        r.c_.reserve(c_.size());
        for (const auto& [e, c] : c_) r.c_.emplace_back(e, neg(c));
        return r;
    }

    friend ZSeries operator+(const ZSeries& a, const ZSeries& b) { return merge(a, b, false); }
    friend ZSeries operator-(const ZSeries& a, const ZSeries& b) { return merge(a, b, true); }

    friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
        if (a.logz_ != 0 || b.logz_ != 0)
            throw std::domain_error("ZSeries: cannot multiply log-carrying series");
        long t = std::min(a.ztrunc_ + b.lead(), b.ztrunc_ + a.lead());
        std::map<long, S> acc;
        for (const auto& [ea, ca] : a.c_) {
            if (ea + b.lead() >= t) break;
            for (const auto& [eb, cb] : b.c_) {
                long e = ea + eb;
                if (e >= t) break;
                S p = ca * cb;
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(e, std::move(p));
                else
                    it->second = it->second + p;
            }
        }
        ZSeries r(t);
        for (auto& [e, c] : acc)
            if (!scalar_traits<S>::is_zero(c)) r.c_.emplace_back(e, std::move(c));
        return r;
    }

    ZSeries scaled(const S& c) const {
        if (logz_ != 0) throw std::domain_error("ZSeries: cannot scale log-carrying series");
        ZSeries r(ztrunc_);
        for (const auto& [e, x] : c_) {
            S y = x * c;
            if (!scalar_traits<S>::is_zero(y)) r.c_.emplace_back(e, std::move(y));
        }
        return r;
    }

    ZSeries scaled_rational(const Rational& q) const {
        ZSeries r(ztrunc_);
        r.logz_ = 0;
        if (logz_ != 0) {
            Rational lq = q * Rational(logz_);
            if (!lq.is_integer())
                throw std::domain_error("ZSeries: log z coefficient must stay integral");
            r.logz_ = lq.to_long();
        }
        for (const auto& [e, x] : c_) {
            S y = scalar_traits<S>::scale_rational(x, q);
            if (!scalar_traits<S>::is_zero(y)) r.c_.emplace_back(e, std::move(y));
        }
        return r;
    }

    // Multiply by z^de.
    ZSeries mul_zpow(long de) const {
        if (logz_ != 0) throw std::domain_error("ZSeries: cannot shift log-carrying series");
        ZSeries r = *this;
        for (auto& [e, c] : r.c_) e += de;
        r.ztrunc_ += de;
        return r;
    }

    ZSeries truncated(long t) const {
        ZSeries r(std::min(t, ztrunc_));
        r.logz_ = logz_;
        for (const auto& [e, c] : c_) {
            if (e >= r.ztrunc_) break;
            r.c_.emplace_back(e, c);
        }
        return r;
    }

    // d/dz; defined only for log-free series.
    ZSeries derivative() const {
        if (logz_ != 0) throw std::domain_error("ZSeries: derivative of log-carrying series");
        ZSeries r(ztrunc_ - 1);
        for (const auto& [e, c] : c_) {
            if (e == 0) continue;
            S y = scalar_traits<S>::scale_rational(c, Rational(e));
            if (e - 1 < r.ztrunc_ && !scalar_traits<S>::is_zero(y)) r.c_.emplace_back(e - 1, std::move(y));
        }
        return r;
    }

    ZSeries inverse() const {
        if (logz_ != 0) throw std::domain_error("ZSeries: inverse of log-carrying series");
        if (c_.empty()) throw std::domain_error("ZSeries: inverse of zero series");
        long l = lead();
        long rel = ztrunc_ - l;
        const S& c0 = c_.front().second;
        S c0inv = scalar_traits<S>::inv(c0);
        std::map<long, S> u;  // s / (c0 z^l), relative exponents >= 1 (u_0 = 1 implicit)
        for (const auto& [e, c] : c_)
            if (e != l) u.emplace(e - l, c * c0inv);
        std::map<long, S> y;  // coefficients of the inverse of 1 + u
        y.emplace(0, c0 * c0inv);
        for (long e = 1; e < rel; ++e) {
            S sum{};
            bool have = false;
            for (const auto& [j, uj] : u) {
                if (j > e) break;
                auto it = y.find(e - j);
                if (it == y.end()) continue;
                S p = uj * it->second;
                if (!have) {
                    sum = std::move(p);
                    have = true;
                } else {
                    sum = sum + p;
                }
            }
            if (have && !scalar_traits<S>::is_zero(sum)) y.emplace(e, neg(sum));
        }
        ZSeries r(rel - l);
        for (const auto& [e, c] : y) {
            S v = c * c0inv;
            if (!scalar_traits<S>::is_zero(v)) r.c_.emplace_back(e - l, std::move(v));
        }
        return r;
    }

    ZSeries pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        if (n == 0) {
            throw std::domain_error("ZSeries::pow(0) needs a unit; use an explicit one-series");
        }
        ZSeries r = *this;
        for (long i = 1; i < n; ++i) r = r * (*this);
        return r;
    }

    // exp of a series whose z-exponents are all >= 1; a c*log(z) part becomes
    // a z^c prefactor.
    ZSeries exp_with_one(const S& one_scalar) const {
        if (!c_.empty() && c_.front().first < 1)
            throw std::domain_error("ZSeries::exp requires positive leading z-exponent");
        ZSeries r = monomial(0, one_scalar, ztrunc_);
        ZSeries term = r;
        ZSeries body = *this;
        body.logz_ = 0;
        long l = body.lead();
        if (!body.c_.empty()) {
            for (long m = 1; m * l < ztrunc_; ++m) {
                term = (term * body).scaled_rational(Rational(1, m)).truncated(ztrunc_);
                if (term.is_structurally_zero()) break;
                r = r + term;
            }
        }
        return logz_ == 0 ? r : r.mul_zpow(logz_);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [e, c] : c_) m = std::max(m, scalar_traits<S>::max_abs(c));
        return m;
    }

private:
    static S neg(const S& x) {
        if constexpr (std::is_same_v<S, Cplx>)
            return -x;
        else
            return -x;
    }

    static ZSeries merge(const ZSeries& a, const ZSeries& b, bool sub) {
        ZSeries r(std::min(a.ztrunc_, b.ztrunc_));
        r.logz_ = a.logz_ + (sub ? -b.logz_ : b.logz_);
        auto ia = a.c_.begin(), ib = b.c_.begin();
        while (ia != a.c_.end() || ib != b.c_.end()) {
            long ea = ia != a.c_.end() ? ia->first : r.ztrunc_;
            long eb = ib != b.c_.end() ? ib->first : r.ztrunc_;
            if (ea >= r.ztrunc_ && eb >= r.ztrunc_) break;
            if (ea < eb) {
                r.c_.emplace_back(ea, ia->second);
                ++ia;
            } else if (eb < ea) {
                r.c_.emplace_back(eb, sub ? neg(ib->second) : ib->second);
                ++ib;
            } else {
                S c = sub ? S(ia->second - ib->second) : S(ia->second + ib->second);
                if (!scalar_traits<S>::is_zero(c)) r.c_.emplace_back(ea, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::vector<Term> c_;
    long ztrunc_;
    long logz_ = 0;
};

template <class K>
ZSeries<QSeries<Cplx>> to_cplx(const ZSeries<QSeries<K>>& s) {
    ZSeries<QSeries<Cplx>> r(s.ztrunc());
    r.set_log_z(s.log_z());
    std::vector<typename ZSeries<QSeries<Cplx>>::Term> terms;
    if constexpr (std::is_same_v<K, Cplx>) {
        return s;
    } else {
        for (const auto& [e, c] : s.terms()) terms.emplace_back(e, to_cplx(c));
        auto out = ZSeries<QSeries<Cplx>>::from_terms(std::move(terms), s.ztrunc());
        out.set_log_z(s.log_z());
        return out;
    }
}

}  // namespace tnpf
