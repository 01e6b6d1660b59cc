#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "tnpf/elliptic.hpp"

using namespace tnpf;
using QS = QSeries<Rational>;
using ZS = ZSeries<QS>;

TEST_CASE("p0 coefficients") {
    auto p0 = p0_series<Rational>(8, 264);
    CHECK(p0.log_z() == -1);
    CHECK(p0.coeff_ptr(1) == nullptr);
    REQUIRE(p0.coeff_ptr(2) != nullptr);
    CHECK(p0.coeff_ptr(2)->coeff(0) == Rational(-1, 24));  // E_2/2 constant term
    CHECK(p0.coeff_ptr(3) == nullptr);                     // E_3 = 0
    REQUIRE(p0.coeff_ptr(4) != nullptr);
    CHECK(p0.coeff_ptr(4)->coeff(0) == Rational(1, 2880));  // E_4/4
}

TEST_CASE("pn principal parts and tails") {
    long T = 264, Z = 10;
    auto p2 = pn_series<Rational>(2, Z, T);
    CHECK(p2.lead() == -2);
    CHECK(p2.coeff_ptr(-2)->coeff(0) == Rational(1));
    // z^0 coefficient of P_2 is E_2
    CHECK((*p2.coeff_ptr(0) - eisenstein(2, T)).is_structurally_zero());
    CHECK(p2.coeff_ptr(-1) == nullptr);
    CHECK(p2.coeff_ptr(1) == nullptr);  // odd tail absent
    auto p3 = pn_series<Rational>(3, Z, T);
    CHECK(p3.lead() == -3);
    CHECK(p3.coeff_ptr(-3)->coeff(0) == Rational(1));

    // derivative relation: P_{n+1} = -(1/n) d/dz P_n
    for (long n = 1; n <= 4; ++n) {
        auto pn = pn_series<Rational>(n, Z, T);
        auto pn1 = pn_series<Rational>(n + 1, Z - 1, T);
        auto d = pn.derivative().scaled_rational(Rational(-1, n));
        auto diff = d - pn1.truncated(d.ztrunc());
        CHECK(diff.truncated(std::min(d.ztrunc(), pn1.ztrunc())).is_structurally_zero());
    }
}

TEST_CASE("P_1 equals Weierstrass zeta minus E_2 z") {
    // zeta(z) = 1/z - sum_{k>=4 even} E_k z^{k-1} in this normalization, so
    // P_1 + E_2 z must have exactly that expansion.
    long T = 264, Z = 9;
    auto p1 = pn_series<Rational>(1, Z, T);
    auto zeta = p1 + ZS::monomial(1, eisenstein(2, T), Z);
    CHECK(zeta.coeff_ptr(-1)->coeff(0) == Rational(1));
    CHECK(zeta.coeff_ptr(1) == nullptr);  // E_2 cancelled
    REQUIRE(zeta.coeff_ptr(3) != nullptr);
    CHECK((*zeta.coeff_ptr(3) + eisenstein(4, T)).is_structurally_zero());
    REQUIRE(zeta.coeff_ptr(5) != nullptr);
    CHECK((*zeta.coeff_ptr(5) + eisenstein(6, T)).is_structurally_zero());
}

TEST_CASE("c coefficients") {
    long T = 200;
    CHECK((c_coeff<Rational>(1, 1, T) - eisenstein(2, T)).is_structurally_zero());
    CHECK((c_coeff<Rational>(2, 2, T) + eisenstein(4, T).scaled(Rational(6))).is_structurally_zero());
    CHECK(c_coeff<Rational>(1, 2, T).is_structurally_zero());  // E_3 = 0
    CHECK((c_coeff<Rational>(1, 0, T) - eisenstein(1, T)).is_structurally_zero());
    CHECK((c_coeff<Rational>(2, 0, T) + eisenstein(2, T)).is_structurally_zero());
    CHECK_THROWS_AS(c_coeff<Rational>(0, 1, T), std::invalid_argument);
    // C(r,s) = (-1)^{r+s} C(s,r)
    for (long r = 1; r <= 6; ++r)
        for (long s = 1; s <= 6; ++s) {
            auto lhs = c_coeff<Rational>(r, s, T);
            auto rhs = c_coeff<Rational>(s, r, T).scaled(Rational((r + s) % 2 == 0 ? 1 : -1));
            CHECK((lhs - rhs).is_structurally_zero());
        }
}

TEST_CASE("d coefficients and the reflection identity") {
    long T = 200, Z = 8;
    auto d11 = d_coeff<Rational>(1, 1, Z, T);
    auto p2 = pn_series<Rational>(2, Z, T);
    CHECK((d11 - p2).truncated(Z).max_abs() == 0.0);
    auto d10 = d_coeff<Rational>(1, 0, Z, T);
    auto p1 = pn_series<Rational>(1, Z, T);
    CHECK((d10 - p1).truncated(Z).max_abs() == 0.0);
    auto d21 = d_coeff<Rational>(2, 1, Z, T);
    auto p3 = pn_series<Rational>(3, Z, T).scaled_rational(Rational(-2));
    CHECK((d21 - p3).truncated(Z).max_abs() == 0.0);
    // D(r,s,z) = D(s,r,-z): flip z -> -z on the series
    for (long r = 1; r <= 4; ++r)
        for (long s = 1; s <= 4; ++s) {
            auto lhs = d_coeff<Rational>(r, s, Z, T);
            auto rhs = d_coeff<Rational>(s, r, Z, T);
            for (const auto& [e, c] : rhs.terms()) {
                Rational sign(((e % 2) + 2) % 2 == 0 ? 1 : -1);
                auto le = lhs.coeff_or(e, QS::zero(c.trunc()));
                CHECK((le - c.scaled(sign)).is_structurally_zero());
            }
        }
}

TEST_CASE("prime form series") {
    long T = 264, Z = 10;
    auto k = prime_form_series<Rational>(Z, T);
    CHECK(k.lead() == 1);
    CHECK(k.coeff_ptr(1)->coeff(0) == Rational(1));
    CHECK(k.coeff_ptr(2) == nullptr);
    // z^3 coefficient is -E_2/2
    REQUIRE(k.coeff_ptr(3) != nullptr);
    CHECK((*k.coeff_ptr(3) + eisenstein(2, T).scaled(Rational(1, 2))).is_structurally_zero());
}

TEST_CASE("prime form equals -i theta1 / eta^3 as exact bivariate series") {
    long T = 121, Z = 9;  // through z^8 and q^5 = t^120
    auto k = prime_form_series<Rational>(Z, T);
    auto th = minus_i_theta1_series<Rational>(Z, T + 6);
    auto eta3inv = eta_series(T + 6).pow(3).inverse();
    std::vector<ZS::Term> terms;
    for (const auto& [e, c] : th.terms()) terms.emplace_back(e, c * eta3inv);
    auto rhs = ZS::from_terms(std::move(terms), Z);
    for (long e = -1; e < Z; ++e) {
        const QS* a = k.coeff_ptr(e);
        const QS* b = rhs.coeff_ptr(e);
        if (a == nullptr && b == nullptr) continue;
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        long t = std::min({a->trunc(), b->trunc(), T});
        CHECK((a->truncated(t) - b->truncated(t)).is_structurally_zero());
    }
}

TEST_CASE("P2 re-expansion reproduces D(r,s,z) coefficients") {
    // coefficient of w1^{r-1} w2^{s-1} in P_2(z + w1 - w2), via z-derivatives
    // of the P_2 series, must equal D(r,s,z). Uses
    // P_2^{(m)} = (-1)^m (m+1)! P_{m+2}.
    long T = 200, Z = 8;
    for (long r = 1; r + 1 <= 6; ++r)
        for (long s = 1; r + s <= 6; ++s) {
            long j = r + s - 2;  // total derivative order
            auto p2 = pn_series<Rational>(2, Z + j + 1, T);
            ZS der = p2;
            for (long m = 0; m < j; ++m) der = der.derivative();
            // multiply by binom(j, s-1) (-1)^{s-1} / j!
            Rational c = Rational::binomial(j, s - 1) * Rational((s % 2 == 1) ? 1 : -1) /
                         Rational::factorial(static_cast<unsigned long>(j));
            ZS lhs = der.scaled_rational(c);
            ZS rhs = d_coeff<Rational>(r, s, lhs.ztrunc(), T);
            CHECK((lhs - rhs.truncated(lhs.ztrunc())).max_abs() == 0.0);
        }
}
