#pragma once

#include "tnpf/lattice.hpp"
#include "tnpf/multipoly.hpp"

namespace tnpf {

// Generating-function identities for rank-1 one-point functions, checked as
// exact identities in truncated polynomial rings over q-series.

// Z(exp(sum_{m>=1} a[-m] s^m / m).1) over M (x) e^beta, expanded through
// s^order as a one-variable polynomial with q-series coefficients. Every
// one-point value comes from the closed formula.
MultiPoly<Rational> module_exponential_series(const LatticeData& lat, const LatticeVector& beta,
                                              long order, long trunc);

// Left side of the prime-form product identity:
//   sum_v prod_k (1/e_k!) ((1/k) sum_i lambda_i z_i^k)^{e_k} Z_M(v),
// summed over rank-1 Fock monomials of weight <= order.
MultiPoly<Rational> prime_form_product_lhs(const LatticeData& lat,
                                           const std::vector<Rational>& lambdas, long order,
                                           long trunc);

// Right side: (1/eta) prod_{i<j} (K(z_ij)/z_ij)^{lambda_i lambda_j}, expanded
// via exp(-sum_{i<j} lambda_i lambda_j sum_k E_k z_ij^k / k).
MultiPoly<Rational> prime_form_product_rhs(const std::vector<Rational>& lambdas, long order,
                                           long trunc);

struct GeneratingCheck {
    bool exact_equal;
    double max_abs_residual;
};

// Z_N(exp(...)) = q^{(beta,beta)/2} exp((a,beta) s) Z_M(exp(...)) through
// s^order. Needs exact orthonormal pairings.
GeneratingCheck check_module_exponential_identity(const LatticeData& lat,
                                                  const LatticeVector& beta, long order,
                                                  long trunc);

// lhs == rhs of the prime-form product identity; requires sum lambda_i = 0.
GeneratingCheck check_prime_form_product_identity(const LatticeData& lat,
                                                  const std::vector<Rational>& lambdas,
                                                  long order, long trunc);

}  // namespace tnpf
