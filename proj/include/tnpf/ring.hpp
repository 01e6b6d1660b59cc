#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tnpf/rational.hpp"

namespace tnpf {

using Cplx = std::complex<double>;

// Errors surfaced to the CLI with dedicated exit codes.
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient field operations for K in {Rational, Cplx}. Exact fields drop
// coefficients only when they are exactly zero; float equality is always
// tolerance-based downstream.
template <class K>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational from_rational(const Rational& r) { return r; }
    static double abs(const Rational& x) { return std::abs(x.to_double()); }
    static Rational inv(const Rational& x) { return Rational(1) / x; }
    static Cplx to_cplx(const Rational& x) { return Cplx(x.to_double(), 0.0); }
};

template <>
struct field_traits<Cplx> {
    static constexpr bool exact = false;
    static Cplx zero() { return Cplx(0.0, 0.0); }
    static Cplx one() { return Cplx(1.0, 0.0); }
    static bool is_zero(const Cplx& x) { return x == Cplx(0.0, 0.0); }
    static Cplx from_rational(const Rational& r) { return Cplx(r.to_double(), 0.0); }
    static double abs(const Cplx& x) { return std::abs(x); }
    static Cplx inv(const Cplx& x) {
        if (x == Cplx(0.0, 0.0)) throw std::domain_error("Cplx: division by zero");
        return Cplx(1.0, 0.0) / x;
    }
    static Cplx to_cplx(const Cplx& x) { return x; }
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace tnpf
