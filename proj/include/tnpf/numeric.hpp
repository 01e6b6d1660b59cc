#pragma once

#include <vector>

#include "tnpf/ring.hpp"

namespace tnpf {

// Numeric evaluation of the elliptic layer at a fixed tau in the upper half
// plane. All values are cached per instance; instances are immutable after
// construction and safe to share across threads.
//
// P_n is evaluated by reducing z into the fundamental cell
// {x*2pi*i + y*2pi*i*tau : x,y in [-1/2,1/2)} (n >= 2; n = 1 reduces mod
// 2pi*i only) and summing the z-series, whose radius is the nearest nonzero
// lattice point. theta_1 and the prime form are entire and evaluated at face
// value via the Gaussian sum.
class NumericContext {
public:
    explicit NumericContext(Cplx tau);

    Cplx tau() const { return tau_; }
    Cplx q() const { return q_; }

    Cplx eisenstein(long k) const;
    Cplx eta() const { return eta_; }
    Cplx eta_pow(long l) const;
    Cplx q_pow(const Rational& e) const;  // q^e

    Cplx theta1(Cplx z) const;
    Cplx prime_form(Cplx z) const;  // K(z,tau) = -i theta_1 / eta^3
    Cplx prime_form_pow(Cplx z, long m) const;

    // Lattice reduction helpers (exposed for the verification suites).
    Cplx reduce_full(Cplx z) const;
    Cplx reduce_two_pi_i(Cplx z) const;

    Cplx pn(long n, Cplx z) const;
    Cplx c_coeff(long r, long s) const;
    Cplx d_coeff(long r, long s, Cplx z) const;

    static constexpr long kmax = 120;          // E_k cutoff for the P_n series
    static constexpr double pole_margin = 1e-6;

private:
    Cplx tau_;
    Cplx q_;
    Cplx eta_;
    std::vector<Cplx> ek_;  // ek_[k] = E_k(tau), k <= kmax
};

}  // namespace tnpf
