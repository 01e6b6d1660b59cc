#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tnpf/ring.hpp"

namespace tnpf {

// Truncated formal series in t = q^{1/24} over a coefficient field K.
// Exponents may be negative (finite Laurent tail). Terms with exponent
// >= trunc() are unknown, not zero; every operation computes the tightest
// truncation valid for its output.
template <class K>
class QSeries {
public:
    using Term = std::pair<long, K>;

    explicit QSeries(long trunc = 0) : trunc_(trunc) {}

    static QSeries zero(long trunc) { return QSeries(trunc); }
    static QSeries one(long trunc) { return monomial(0, field_traits<K>::one(), trunc); }
    static QSeries monomial(long e, K c, long trunc) {
        QSeries s(trunc);
        if (e < trunc && !field_traits<K>::is_zero(c)) s.c_.emplace_back(e, std::move(c));
        return s;
    }
    static QSeries from_terms(std::vector<Term> terms, long trunc) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        QSeries s(trunc);
        for (auto& t : terms) {
            if (t.first >= trunc) continue;
            if (!s.c_.empty() && s.c_.back().first == t.first)
                throw std::invalid_argument("QSeries: duplicate exponent");
            if (!field_traits<K>::is_zero(t.second)) s.c_.push_back(std::move(t));
        }
        return s;
    }

    long trunc() const { return trunc_; }
    bool is_structurally_zero() const { return c_.empty(); }
    // Smallest stored exponent; equals trunc() for a (known-)zero series.
    long lead() const { return c_.empty() ? trunc_ : c_.front().first; }
    const std::vector<Term>& terms() const { return c_; }

    // Coefficient of t^e. Querying at or beyond the truncation is a logic
    // error, not a zero.
    K coeff(long e) const {
        if (e >= trunc_) throw std::out_of_range("QSeries::coeff beyond truncation");
        auto it = std::lower_bound(c_.begin(), c_.end(), e,
                                   [](const Term& t, long x) { return t.first < x; });
        if (it != c_.end() && it->first == e) return it->second;
        return field_traits<K>::zero();
    }

    QSeries operator-() const {
        QSeries r(trunc_);
        r.c_.reserve(c_.size());
        for (const auto& [e, c] : c_) r.c_.emplace_back(e, -c);
        return r;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) { return merge(a, b, false); }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return merge(a, b, true); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        long t = std::min(a.trunc_ + b.lead(), b.trunc_ + a.lead());
        std::map<long, K> acc;
        for (const auto& [ea, ca] : a.c_) {
            if (ea + b.lead() >= t) break;
            for (const auto& [eb, cb] : b.c_) {
                long e = ea + eb;
                if (e >= t) break;
                auto [it, fresh] = acc.emplace(e, ca * cb);
                if (!fresh) it->second += ca * cb;
            }
        }
        QSeries r(t);
        for (auto& [e, c] : acc)
            if (!field_traits<K>::is_zero(c)) r.c_.emplace_back(e, std::move(c));
        return r;
    }

    QSeries scaled(const K& c) const {
        if (field_traits<K>::is_zero(c)) return QSeries(trunc_);
        QSeries r(trunc_);
        r.c_.reserve(c_.size());
        for (const auto& [e, x] : c_) {
            K y = x * c;
            if (!field_traits<K>::is_zero(y)) r.c_.emplace_back(e, std::move(y));
        }
        return r;
    }

    // Multiply by c * t^de.
    QSeries mul_monomial(long de, const K& c) const {
        QSeries r = scaled(c);
        for (auto& [e, x] : r.c_) e += de;
        r.trunc_ += de;
        return r;
    }

    QSeries truncated(long t) const {
        QSeries r(std::min(t, trunc_));
        for (const auto& [e, c] : c_) {
            if (e >= r.trunc_) break;
            r.c_.emplace_back(e, c);
        }
        return r;
    }

    // Inverse of a series whose leading coefficient is a unit.
    QSeries inverse() const {
        if (c_.empty()) throw std::domain_error("QSeries::inverse of zero series");
        long l = lead();
        long rel = trunc_ - l;  // relative orders known
        K c0 = c_.front().second;
        K c0inv = field_traits<K>::inv(c0);
        // u = s / (c0 t^l) = 1 + x, compute 1/u by the standard recurrence.
        std::vector<K> u(static_cast<size_t>(rel), field_traits<K>::zero());
        for (const auto& [e, c] : c_) u[static_cast<size_t>(e - l)] = c * c0inv;
        std::vector<K> y(static_cast<size_t>(rel), field_traits<K>::zero());
        y[0] = field_traits<K>::one();
        for (long e = 1; e < rel; ++e) {
            K s = field_traits<K>::zero();
            for (long j = 1; j <= e; ++j) {
                if (!field_traits<K>::is_zero(u[static_cast<size_t>(j)]))
                    s += u[static_cast<size_t>(j)] * y[static_cast<size_t>(e - j)];
            }
            y[static_cast<size_t>(e)] = -s;
        }
        QSeries r(rel - l);  // = trunc - 2*lead
        for (long e = 0; e < rel; ++e) {
            K c = y[static_cast<size_t>(e)] * c0inv;
            if (!field_traits<K>::is_zero(c)) r.c_.emplace_back(e - l, std::move(c));
        }
        return r;
    }

    QSeries pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        if (n == 0) return one(trunc_);
        // square-and-multiply; the min-rule in operator* keeps truncation tight
        QSeries r = one(1L << 40);
        QSeries b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n > 0) b = b * b;
        }
        return r;
    }

    // s^r for rational r: requires s = t^l * (1 + x) with l*r integral.
    QSeries pow_rational(const Rational& r) const {
        if (r.is_integer()) return pow(r.to_long());
        if (c_.empty()) throw std::domain_error("QSeries::pow_rational of zero series");
        long l = lead();
        if (!(c_.front().second == field_traits<K>::one()))
            throw std::domain_error("QSeries::pow_rational: leading coefficient must be 1");
        Rational le = r * Rational(l);
        if (!le.is_integer())
            throw std::domain_error("QSeries::pow_rational: fractional leading exponent");
        QSeries u = mul_monomial(-l, field_traits<K>::one());
        QSeries lg = u.log();
        QSeries res = lg.scaled(field_traits<K>::from_rational(r)).exp();
        return res.mul_monomial(le.to_long(), field_traits<K>::one());
    }

    // exp of a series with strictly positive leading exponent. For K = Cplx a
    // constant term is allowed and split off numerically.
    QSeries exp() const {
        QSeries s = *this;
        K pre = field_traits<K>::one();
        if (!c_.empty() && c_.front().first <= 0) {
            if (c_.front().first < 0)
                throw std::domain_error("QSeries::exp of series with negative exponents");
            if constexpr (field_traits<K>::exact) {
                throw std::domain_error("QSeries::exp requires zero constant term in exact mode");
            } else {
                pre = std::exp(c_.front().second);
                s.c_.erase(s.c_.begin());
            }
        }
        QSeries r = one(trunc_);
        QSeries term = one(trunc_);
        long l = s.lead();
        if (!s.c_.empty()) {
            for (long m = 1; m * l < trunc_; ++m) {
                term = (term * s).scaled(field_traits<K>::from_rational(Rational(1, m)));
                term = term.truncated(trunc_);
                if (term.is_structurally_zero()) break;
                r = r + term;
            }
        }
        return r.scaled(pre);
    }

    // log of a series with constant term 1 (K = Cplx: any unit constant term).
    QSeries log() const {
        if (c_.empty() || lead() != 0)
            throw std::domain_error("QSeries::log requires unit constant term");
        K c0 = c_.front().second;
        K pre = field_traits<K>::zero();
        QSeries x = *this;
        if (!(c0 == field_traits<K>::one())) {
            if constexpr (field_traits<K>::exact) {
                throw std::domain_error("QSeries::log requires constant term 1 in exact mode");
            } else {
                pre = std::log(c0);
                x = x.scaled(field_traits<K>::inv(c0));
            }
        }
        x.c_.erase(x.c_.begin());  // x = series - 1, lead >= 1
        QSeries r = monomial(0, pre, trunc_);
        QSeries term = one(trunc_);
        long l = x.lead();
        if (!x.c_.empty()) {
            for (long m = 1; m * l < trunc_; ++m) {
                term = (term * x).truncated(trunc_);
                if (term.is_structurally_zero()) break;
                Rational c(m % 2 == 1 ? 1 : -1, m);
                r = r + term.scaled(field_traits<K>::from_rational(c));
            }
        }
        return r;
    }

    // Numeric evaluation at t = t0 (t = q^{1/24}).
    Cplx eval(const Cplx& t0) const {
        Cplx acc(0.0, 0.0);
        for (const auto& [e, c] : c_)
            acc += field_traits<K>::to_cplx(c) * std::pow(t0, static_cast<double>(e));
        return acc;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [e, c] : c_) m = std::max(m, field_traits<K>::abs(c));
        return m;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

private:
    static QSeries merge(const QSeries& a, const QSeries& b, bool sub) {
        QSeries r(std::min(a.trunc_, b.trunc_));
        r.c_.reserve(a.c_.size() + b.c_.size());
        auto ia = a.c_.begin(), ib = b.c_.begin();
        while (ia != a.c_.end() || ib != b.c_.end()) {
            long ea = ia != a.c_.end() ? ia->first : r.trunc_;
            long eb = ib != b.c_.end() ? ib->first : r.trunc_;
            if (ea >= r.trunc_ && eb >= r.trunc_) break;
            if (ea < eb) {
                r.c_.emplace_back(ea, ia->second);
                ++ia;
            } else if (eb < ea) {
                r.c_.emplace_back(eb, sub ? -ib->second : ib->second);
                ++ib;
            } else {
                K c = sub ? K(ia->second - ib->second) : K(ia->second + ib->second);
                if (!field_traits<K>::is_zero(c)) r.c_.emplace_back(ea, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::vector<Term> c_;
    long trunc_;
};

inline QSeries<Cplx> to_cplx(const QSeries<Rational>& s) {
    QSeries<Cplx> r(s.trunc());
    std::vector<QSeries<Cplx>::Term> terms;
    terms.reserve(s.terms().size());
    for (const auto& [e, c] : s.terms()) terms.emplace_back(e, Cplx(c.to_double(), 0.0));
    return QSeries<Cplx>::from_terms(std::move(terms), s.trunc());
}

// Largest coefficient magnitude of (a - b) over the common known window.
template <class K>
double max_abs_diff(const QSeries<K>& a, const QSeries<K>& b) {
    return (a - b).max_abs();
}

}  // namespace tnpf
