#pragma once

#include <gmpxx.h>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tnpf {

// Exact rational coefficient value. Thin wrapper over GMP's mpq_class with
// eager operators, so the type composes cleanly inside templated series code
// (mpq_class's expression templates do not).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) {}
    explicit Rational(const mpz_class& n) : v_(n) {}
    // Accepts "n" or "n/d" with arbitrary-precision decimal digits.
    explicit Rational(const std::string& s) : v_(s) { v_.canonicalize(); }

    const mpq_class& raw() const { return v_; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    bool is_integer() const { return v_.get_den() == 1; }
    // Requires an integer value that fits in long.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw std::domain_error("Rational: not a small integer");
        return v_.get_num().get_si();
    }
    double to_double() const { return v_.get_d(); }

    std::string str() const { return v_.get_str(); }
    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    static Rational pow(const Rational& b, long e) {
        if (e == 0) return Rational(1);
        mpz_class num = b.v_.get_num(), den = b.v_.get_den();
        if (e < 0) {
            if (b.is_zero()) throw std::domain_error("Rational: 0^negative");
            std::swap(num, den);
            e = -e;
        }
        mpz_class rn, rd;
        mpz_pow_ui(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
        mpq_class r(rn, rd);
        r.canonicalize();
        return Rational(r);
    }

    static Rational factorial(unsigned long n) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(f);
    }

    // Generalized binomial: n may be any integer, k >= 0.
    static Rational binomial(long n, long k) {
        if (k < 0) return Rational(0);
        mpz_class num = 1;
        for (long j = 0; j < k; ++j) num *= mpz_class(n - j);
        mpz_class den;
        mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(k));
        mpq_class r(num, den);
        r.canonicalize();
        return Rational(r);
    }

    // If *this is the square of a rational, stores the nonnegative root and
    // returns true.
    bool sqrt_exact(Rational& out) const {
        if (sign() < 0) return false;
        const mpz_class& num = v_.get_num();
        const mpz_class& den = v_.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            return false;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        out = Rational(mpq_class(rn, rd));
        return true;
    }

private:
    mpq_class v_;
};

}  // namespace tnpf
