#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "tnpf/qseries.hpp"

using namespace tnpf;
using QS = QSeries<Rational>;

TEST_CASE("rational basics") {
    Rational a(1, 3), b(2, 6);
    CHECK(a == b);
    CHECK((a + b) == Rational(2, 3));
    CHECK((a * Rational(3)) == Rational(1));
    CHECK(Rational::binomial(-3, 2) == Rational(6));
    CHECK(Rational::binomial(5, 2) == Rational(10));
    CHECK(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
    Rational r;
    CHECK(Rational(9, 4).sqrt_exact(r));
    CHECK(r == Rational(3, 2));
    CHECK_FALSE(Rational(2).sqrt_exact(r));
    CHECK_THROWS_AS(Rational(1, 1) / Rational(0), std::domain_error);
}

TEST_CASE("ring laws on random operands") {
    testutil::Rng rng(42);
    for (int it = 0; it < 60; ++it) {
        QS a = testutil::random_qseries(rng, 40, 6);
        QS b = testutil::random_qseries(rng, 40, 6);
        QS c = testutil::random_qseries(rng, 40, 6);
        QS lhs = (a + b) * c;
        QS rhs = a * c + b * c;
        CHECK((lhs - rhs).truncated(std::min(lhs.trunc(), rhs.trunc())).is_structurally_zero());
        QS assoc1 = (a * b) * c;
        QS assoc2 = a * (b * c);
        long t = std::min(assoc1.trunc(), assoc2.trunc());
        CHECK((assoc1.truncated(t) - assoc2.truncated(t)).is_structurally_zero());
        CHECK(((a + b) - (b + a)).is_structurally_zero());
    }
}

TEST_CASE("truncation tracks leading exponents through products") {
    QS a = QS::monomial(2, Rational(1), 10);  // known through t^9
    QS b = QS::monomial(3, Rational(1), 12);
    QS p = a * b;
    CHECK(p.trunc() == 13);  // min(10+3, 12+2)
    CHECK(p.coeff(5) == Rational(1));
}

TEST_CASE("geometric series inverse") {
    // (1-q)^{-1} = 1 + q + q^2 + ...  (q = t^24)
    QS one_minus_q = QS::one(250) - QS::monomial(24, Rational(1), 250);
    QS inv = one_minus_q.inverse();
    for (long n = 0; n < 10; ++n) CHECK(inv.coeff(24 * n) == Rational(1));
    CHECK(inv.coeff(12) == Rational(0));
    QS prod = one_minus_q * inv;
    CHECK(prod.coeff(0) == Rational(1));
    CHECK((prod - QS::one(prod.trunc())).is_structurally_zero());
}

TEST_CASE("inverse of series with nonzero lead") {
    testutil::Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        QS a = testutil::random_qseries(rng, 30, 5);
        if (a.is_structurally_zero() || a.terms().front().second.is_zero()) continue;
        QS inv = a.inverse();
        QS prod = a * inv;
        QS diff = prod - QS::one(prod.trunc());
        CHECK(diff.is_structurally_zero());
    }
}

TEST_CASE("exp and log are inverse") {
    QS s = QS::monomial(1, Rational(1, 2), 20) + QS::monomial(3, Rational(-2, 3), 20);
    QS e = s.exp();
    CHECK(e.coeff(0) == Rational(1));
    QS back = e.log();
    CHECK((back - s).is_structurally_zero());
    CHECK_THROWS_AS(QS::one(10).scaled(Rational(2)).log(), std::domain_error);
    CHECK_THROWS_AS((QS::one(10) + QS::monomial(1, Rational(1), 10)).exp(), std::domain_error);
}

TEST_CASE("exp(0) is 1") {
    QS z = QS::zero(15);
    QS e = z.exp();
    CHECK(e.coeff(0) == Rational(1));
    CHECK(e.terms().size() == 1);
}

TEST_CASE("integer and rational powers") {
    QS s = QS::one(40) + QS::monomial(24, Rational(1), 40);
    QS s3 = s.pow(3);
    CHECK(s3.coeff(24) == Rational(3));
    QS sm1 = s.pow(-1);
    CHECK(sm1.coeff(24) == Rational(-1));
    // (s^a)(s^b) = s^{a+b}
    QS lhs = s.pow(2) * s.pow(3);
    QS rhs = s.pow(5);
    long t = std::min(lhs.trunc(), rhs.trunc());
    CHECK((lhs.truncated(t) - rhs.truncated(t)).is_structurally_zero());
    // fractional power of a monomial-led series
    QS m = QS::monomial(2, Rational(1), 30) + QS::monomial(26, Rational(4), 30);
    QS h = m.pow_rational(Rational(1, 2));
    QS sq = h * h;
    long t2 = std::min(sq.trunc(), m.trunc());
    CHECK((sq.truncated(t2) - m.truncated(t2)).is_structurally_zero());
    CHECK_THROWS_AS(QS::monomial(1, Rational(1), 30).pow_rational(Rational(1, 2)),
                    std::domain_error);
}

TEST_CASE("coeff query beyond truncation throws") {
    QS a = QS::one(5);
    CHECK_THROWS_AS(a.coeff(5), std::out_of_range);
}
