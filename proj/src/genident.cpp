#include "tnpf/genident.hpp"

#include <functional>

#include "tnpf/elliptic.hpp"
#include "tnpf/npoint.hpp"

namespace tnpf {

namespace {

// partitions of weight <= order as exponent vectors e[k] of a[-k]^{e_k}
void for_each_partition(long order, const std::function<void(const std::map<long, int>&)>& f) {
    std::map<long, int> cur;
    std::function<void(long, long)> rec = [&](long budget, long maxpart) {
        f(cur);
        for (long k = std::min(budget, maxpart); k >= 1; --k) {
            ++cur[k];
            rec(budget - k, k);
            if (--cur[k] == 0) cur.erase(k);
        }
    };
    rec(order, order);
}

FockMonomial monomial_from_partition(const std::map<long, int>& e) {
    FockMonomial m;
    for (const auto& [k, cnt] : e) m.push_back({1, k, cnt});
    return normalize_monomial(m);
}

}  // namespace

MultiPoly<Rational> module_exponential_series(const LatticeData& lat, const LatticeVector& beta,
                                              long order, long trunc) {
    if (lat.rank() != 1)
        throw std::invalid_argument("module_exponential_series: rank-1 only");
    MultiPoly<Rational> out(1, order, trunc);
    for_each_partition(order, [&](const std::map<long, int>& e) {
        long w = 0;
        Rational coeff(1);
        for (const auto& [k, cnt] : e) {
            w += k * cnt;
            coeff /= Rational::pow(Rational(k), cnt) * Rational::factorial(static_cast<unsigned long>(cnt));
        }
        QSeries<Rational> z = onepoint_module_rational(lat, beta, monomial_from_partition(e), trunc);
        out.add_term({static_cast<int>(w)}, z.scaled(coeff));
    });
    return out;
}

MultiPoly<Rational> prime_form_product_lhs(const LatticeData& lat,
                                           const std::vector<Rational>& lambdas, long order,
                                           long trunc) {
    const int n = static_cast<int>(lambdas.size());
    LatticeVector zero{std::vector<long>(1, 0)};
    // B_k = (1/k) sum_i lambda_i z_i^k
    std::vector<MultiPoly<Rational>> bk;  // index k-1
    for (long k = 1; k <= order; ++k) {
        MultiPoly<Rational> b(n, order, trunc);
        for (int i = 0; i < n; ++i) {
            MultiPoly<Rational>::Key key(static_cast<size_t>(n), 0);
            key[static_cast<size_t>(i)] = static_cast<int>(k);
            b.add_term(key, QSeries<Rational>::monomial(0, lambdas[static_cast<size_t>(i)] / Rational(k), trunc));
        }
        bk.push_back(std::move(b));
    }
    MultiPoly<Rational> out(n, order, trunc);
    for_each_partition(order, [&](const std::map<long, int>& e) {
        QSeries<Rational> z =
            onepoint_module_rational(lat, zero, monomial_from_partition(e), trunc);
        if (z.is_structurally_zero()) return;
        MultiPoly<Rational> term = MultiPoly<Rational>::one(n, order, trunc);
        for (const auto& [k, cnt] : e) {
            for (int c = 0; c < cnt; ++c) term = term * bk[static_cast<size_t>(k - 1)];
            term = term.scaled_rational(Rational(1) /
                                        Rational::factorial(static_cast<unsigned long>(cnt)));
        }
        out = out + term.scaled(z);
    });
    return out;
}

MultiPoly<Rational> prime_form_product_rhs(const std::vector<Rational>& lambdas, long order,
                                           long trunc) {
    const int n = static_cast<int>(lambdas.size());
    // exponent: -sum_{i<j} lambda_i lambda_j sum_{k>=2} E_k (z_i - z_j)^k / k
    MultiPoly<Rational> arg(n, order, trunc);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational lij = lambdas[static_cast<size_t>(i)] * lambdas[static_cast<size_t>(j)];
            if (lij.is_zero()) continue;
            for (long k = 2; k <= order; k += 2) {
                auto ek = eisenstein(k, trunc);
                if (ek.is_structurally_zero()) continue;
                // (z_i - z_j)^k expanded by binomials
                for (long m = 0; m <= k; ++m) {
                    MultiPoly<Rational>::Key key(static_cast<size_t>(n), 0);
                    key[static_cast<size_t>(i)] = static_cast<int>(m);
                    key[static_cast<size_t>(j)] = static_cast<int>(k - m);
                    Rational c = -lij * Rational::binomial(k, m) *
                                 Rational((k - m) % 2 == 0 ? 1 : -1) / Rational(k);
                    MultiPoly<Rational> piece(n, order, trunc);
                    piece.add_term(key, ek.scaled(c));
                    arg = arg + piece;
                }
            }
        }
    auto eta_inv = eta_series(trunc).inverse();
    return arg.exp().scaled(eta_inv);
}

namespace {

GeneratingCheck residual_check(const MultiPoly<Rational>& a, const MultiPoly<Rational>& b) {
    MultiPoly<Rational> diff = a - b;
    return GeneratingCheck{diff.is_structurally_zero(), diff.max_abs()};
}

}  // namespace

GeneratingCheck check_module_exponential_identity(const LatticeData& lat,
                                                  const LatticeVector& beta, long order,
                                                  long trunc) {
    MultiPoly<Rational> lhs = module_exponential_series(lat, beta, order, trunc);
    MultiPoly<Rational> zm =
        module_exponential_series(lat, LatticeVector{{0}}, order, trunc);
    // q^{(beta,beta)/2} exp((a,beta) s)
    Rational abeta = lat.pairing_exact(1, beta);
    long h24 = 12 * lat.norm(beta);
    MultiPoly<Rational> expb(1, order, trunc);
    Rational c(1);
    for (long m = 0; m <= order; ++m) {
        expb.add_term({static_cast<int>(m)},
                      QSeries<Rational>::monomial(h24, c, trunc + h24));
        c *= abeta / Rational(m + 1);
    }
    return residual_check(lhs, expb * zm);
}

GeneratingCheck check_prime_form_product_identity(const LatticeData& lat,
                                                  const std::vector<Rational>& lambdas,
                                                  long order, long trunc) {
    Rational sum(0);
    for (const auto& l : lambdas) sum += l;
    if (!sum.is_zero())
        throw std::invalid_argument("prime-form product identity needs sum lambda_i = 0");
    return residual_check(prime_form_product_lhs(lat, lambdas, order, trunc),
                          prime_form_product_rhs(lambdas, order, trunc));
}

}  // namespace tnpf
