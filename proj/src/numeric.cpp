#include "tnpf/numeric.hpp"

#include <cmath>
#include <mutex>

#include "tnpf/elliptic.hpp"
#include "tnpf/modular.hpp"

namespace tnpf {

namespace {

// Exact E_k q-expansions through q^11, shared by every context.
const std::vector<QSeries<Rational>>& exact_ek_table() {
    static std::once_flag flag;
    static std::vector<QSeries<Rational>> table;
    std::call_once(flag, [] {
        table.reserve(NumericContext::kmax + 1);
        table.emplace_back(QSeries<Rational>::zero(264));  // k = 0 unused
        for (long k = 1; k <= NumericContext::kmax; ++k) table.push_back(eisenstein(k, 264));
    });
    return table;
}

}  // namespace

NumericContext::NumericContext(Cplx tau) : tau_(tau) {
    if (!(tau.imag() > 0.0))
        throw std::domain_error("NumericContext: tau must have positive imaginary part");
    q_ = std::exp(Cplx(0.0, kTwoPi) * tau);
    const auto& exact = exact_ek_table();
    Cplx t = std::exp(Cplx(0.0, kTwoPi) * tau / 24.0);
    ek_.resize(static_cast<size_t>(kmax) + 1, Cplx(0.0, 0.0));
    for (long k = 1; k <= kmax; ++k) ek_[static_cast<size_t>(k)] = exact[static_cast<size_t>(k)].eval(t);
    // eta(tau) = t * prod (1 - q^n); |q| < 1 so the tail is geometric
    Cplx prod(1.0, 0.0);
    Cplx qn(1.0, 0.0);
    double aq = std::abs(q_);
    long nmax = aq > 0.0 ? static_cast<long>(std::ceil(-40.0 / std::log(aq))) + 2 : 2;
    for (long n = 1; n <= nmax; ++n) {
        qn *= q_;
        prod *= (Cplx(1.0, 0.0) - qn);
    }
    eta_ = t * prod;
}

Cplx NumericContext::eisenstein(long k) const {
    if (k < 1) throw std::invalid_argument("eisenstein: k must be >= 1");
    if (k % 2 == 1) return Cplx(0.0, 0.0);
    if (k > kmax) throw std::invalid_argument("eisenstein: k beyond numeric cutoff");
    return ek_[static_cast<size_t>(k)];
}

Cplx NumericContext::eta_pow(long l) const {
    Cplx r(1.0, 0.0);
    Cplx b = l >= 0 ? eta_ : Cplx(1.0, 0.0) / eta_;
    for (long i = 0; i < std::labs(l); ++i) r *= b;
    return r;
}

Cplx NumericContext::q_pow(const Rational& e) const {
    return std::exp(Cplx(0.0, kTwoPi) * tau_ * e.to_double());
}

Cplx NumericContext::theta1(Cplx z) const {
    // sum_n exp(pi i tau (n+1/2)^2 + (n+1/2)(z + i pi)); cutoff chosen so the
    // dropped Gaussian tail is below 1e-16 of the largest retained scale.
    double imt = tau_.imag();
    double rez = std::abs(z.real());
    long nc = 4;
    auto bound = [&](double x) { return -M_PI * imt * x * x + x * rez; };
    while (nc < 512 && bound(static_cast<double>(nc) + 0.5) > -40.0) ++nc;
    Cplx s(0.0, 0.0);
    for (long n = -nc; n <= nc; ++n) {
        double h = static_cast<double>(n) + 0.5;
        Cplx expo = Cplx(0.0, M_PI) * tau_ * (h * h) + h * (z + Cplx(0.0, M_PI));
        s += std::exp(expo);
    }
    return s;
}

Cplx NumericContext::prime_form(Cplx z) const {
    return Cplx(0.0, -1.0) * theta1(z) / eta_pow(3);
}

Cplx NumericContext::prime_form_pow(Cplx z, long m) const {
    if (m == 0) return Cplx(1.0, 0.0);
    Cplx k = prime_form(z);
    if (m < 0 && std::abs(k) < 1e-300) throw pole_error("prime form pole: z on the period lattice");
    Cplx b = m > 0 ? k : Cplx(1.0, 0.0) / k;
    Cplx r(1.0, 0.0);
    for (long i = 0; i < std::labs(m); ++i) r *= b;
    return r;
}

Cplx NumericContext::reduce_full(Cplx z) const {
    // z = 2 pi i (x + y tau), x and y real
    Cplx zp = z / Cplx(0.0, kTwoPi);
    double y = zp.imag() / tau_.imag();
    double x = zp.real() - y * tau_.real();
    double xr = x - std::floor(x + 0.5);
    double yr = y - std::floor(y + 0.5);
    return Cplx(0.0, kTwoPi) * (Cplx(xr, 0.0) + Cplx(yr, 0.0) * tau_);
}

Cplx NumericContext::reduce_two_pi_i(Cplx z) const {
    double m = std::floor(z.imag() / kTwoPi + 0.5);
    return z - Cplx(0.0, kTwoPi * m);
}

Cplx NumericContext::pn(long n, Cplx z) const {
    if (n < 1) throw std::invalid_argument("pn: n must be >= 1");
    Cplx zr = n == 1 ? reduce_two_pi_i(z) : reduce_full(z);
    if (std::abs(zr) < pole_margin) throw pole_error("P_n pole: z on the period lattice");
    if (n == 1 && std::abs(zr) > 0.98 * kTwoPi)
        throw pole_error("P_1: reduced point outside the series radius");
    Cplx zinv = Cplx(1.0, 0.0) / zr;
    Cplx acc(1.0, 0.0);
    for (long i = 0; i < n; ++i) acc *= zinv;
    double sign = n % 2 == 0 ? 1.0 : -1.0;
    // binom(k-1, n-1) built incrementally over even k
    Cplx zk = std::pow(zr, static_cast<double>(2 - n));
    for (long k = 2; k <= kmax; ++k) {
        if (k % 2 == 0) {
            double b = 1.0;
            for (long j = 1; j <= n - 1; ++j)
                b *= static_cast<double>(k - j) / static_cast<double>(j);
            acc += sign * b * ek_[static_cast<size_t>(k)] * zk;
        }
        zk *= zr;
    }
    return acc;
}

Cplx NumericContext::c_coeff(long r, long s) const {
    double pre = cd_prefactor(r, s).to_double();
    return Cplx(pre, 0.0) * eisenstein(s == 0 ? r : r + s);
}

Cplx NumericContext::d_coeff(long r, long s, Cplx z) const {
    double pre = cd_prefactor(r, s).to_double();
    return Cplx(pre, 0.0) * pn(s == 0 ? r : r + s, z);
}

}  // namespace tnpf
