#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "tnpf/fock.hpp"
#include "tnpf/modular.hpp"
#include "tnpf/lattice.hpp"
#include "tnpf/oracle.hpp"

using namespace tnpf;

TEST_CASE("gram validation") {
    CHECK_THROWS_AS(make_lattice({{1}}), std::invalid_argument);            // odd diagonal
    CHECK_THROWS_AS(make_lattice({{2, 1}, {0, 2}}), std::invalid_argument);  // not symmetric
    CHECK_THROWS_AS(make_lattice({{2, 3}, {3, 2}}), std::invalid_argument);  // not pos def
    LatticeData ok = make_lattice({{2, -1}, {-1, 2}});
    CHECK(ok.rank() == 2);
}

TEST_CASE("inner products") {
    LatticeData g2 = make_lattice({{2}});
    CHECK(g2.inner({{1}}, {{1}}) == 2);
    CHECK(g2.inner({{1}}, {{-1}}) == -2);
    LatticeData a2 = make_lattice({{2, 1}, {1, 2}});
    CHECK(a2.inner({{1, 0}}, {{0, 1}}) == 1);
    CHECK_THROWS_AS(g2.inner({{1, 2}}, {{1}}), std::invalid_argument);
}

TEST_CASE("orthonormal pairings") {
    LatticeData g2 = make_lattice({{2}});
    CHECK(g2.pairing(1, {{1}}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(g2.pairing(1, {{0}}) == 0.0);
    CHECK_FALSE(g2.has_exact_pairings());
    LatticeData g4 = make_lattice({{4}});
    CHECK(g4.has_exact_pairings());
    CHECK(g4.pairing_exact(1, {{1}}) == Rational(2));
    CHECK(g4.pairing_exact(1, {{-3}}) == Rational(-6));
    // sum_r (a_r, u)(a_r, v) = (u, v)
    testutil::Rng rng(5);
    LatticeData a2 = make_lattice({{2, -1}, {-1, 2}});
    for (int it = 0; it < 20; ++it) {
        LatticeVector u{{rng.uniform(-3, 3), rng.uniform(-3, 3)}};
        LatticeVector v{{rng.uniform(-3, 3), rng.uniform(-3, 3)}};
        double s = 0.0;
        for (int r = 1; r <= 2; ++r) s += a2.pairing(r, u) * a2.pairing(r, v);
        CHECK(s == doctest::Approx(static_cast<double>(a2.inner(u, v))).epsilon(1e-10));
    }
}

TEST_CASE("cocycle identities") {
    LatticeData g2 = make_lattice({{2}});
    for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n) CHECK(g2.cocycle({{m}}, {{n}}) == 1);
    LatticeData a2 = make_lattice({{2, -1}, {-1, 2}});
    CHECK(a2.cocycle({{1, 0}}, {{0, 0}}) == 1);
    CHECK(a2.cocycle({{1, 0}}, {{0, 1}}) * a2.cocycle({{0, 1}}, {{1, 0}}) == -1);
    // bimultiplicativity and the commutator on random vectors, rank <= 3
    LatticeData g3 = make_lattice({{2, 0, -1}, {0, 4, 1}, {-1, 1, 6}});
    testutil::Rng rng(17);
    for (int it = 0; it < 100; ++it) {
        LatticeVector a{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        LatticeVector b{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        LatticeVector c{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}};
        CHECK(g3.cocycle(a, b + c) == g3.cocycle(a, b) * g3.cocycle(a, c));
        long par = ((g3.inner(a, b) % 2) + 2) % 2;
        CHECK(g3.cocycle(a, b) * g3.cocycle(b, a) == (par == 0 ? 1 : -1));
    }
    // correction hook: eps'(a,b) = eps(a,b) c(a) c(b) / c(a+b)
    LatticeData a2c = make_lattice({{2, -1}, {-1, 2}});
    a2c.set_cocycle_correction([](const LatticeVector& v) {
        long n = v.coords[0];
        return n % 2 == 0 ? 1 : -1;
    });
    LatticeVector x{{1, 0}}, y{{1, 1}};
    int expect = a2.cocycle(x, y) * (-1) * (-1) * 1;  // c(x) c(y) / c(x+y), c((2,1)) = 1
    CHECK(a2c.cocycle(x, y) == expect);
}

TEST_CASE("mode_apply basics") {
    using FS = FockState<Rational>;
    FS vac = FS::vacuum();
    FS a1 = mode_apply(1, -1, vac, Rational(0));
    // a[1] a[-1] 1 = 1
    FS back = mode_apply(1, 1, a1, Rational(0));
    REQUIRE(back.terms.size() == 1);
    CHECK(back.terms.begin()->first.empty());
    CHECK(back.terms.begin()->second == Rational(1));
    // a[2] a[-1] 1 = 0
    CHECK(mode_apply(1, 2, a1, Rational(0)).is_zero());
    // a[2] a[-2] 1 = 2
    FS a2 = mode_apply(1, -2, vac, Rational(0));
    FS c = mode_apply(1, 2, a2, Rational(0));
    CHECK(c.terms.begin()->second == Rational(2));
    // zero mode eigenvalue (a, alpha) = sqrt(2) on gram [2], alpha = (1)
    LatticeData g2 = make_lattice({{2}});
    FockState<Cplx> vc = FockState<Cplx>::vacuum();
    FockState<Cplx> z = mode_apply(1, 0L, vc, Cplx(g2.pairing(1, {{1}}), 0.0));
    CHECK(std::abs(z.terms.begin()->second - Cplx(std::sqrt(2.0), 0.0)) < 1e-14);
}

TEST_CASE("mode commutator law on random states") {
    // a_r[m] a_s[n] v - a_s[n] a_r[m] v = m (a_r,a_s) delta_{m,-n} v
    testutil::Rng rng(23);
    for (int it = 0; it < 40; ++it) {
        FockMonomial mono;
        int nparts = static_cast<int>(rng.uniform(0, 3));
        for (int i = 0; i < nparts; ++i)
            mono.push_back({static_cast<int>(rng.uniform(1, 2)), rng.uniform(1, 3), 1});
        auto v = FockState<Rational>::monomial_state(normalize_monomial(mono));
        int r = static_cast<int>(rng.uniform(1, 2)), s = static_cast<int>(rng.uniform(1, 2));
        long m = rng.uniform(-3, 3), n = rng.uniform(-3, 3);
        if (m == 0 || n == 0) continue;
        auto ab = mode_apply(r, m, mode_apply(s, n, v, Rational(0)), Rational(0));
        auto ba = mode_apply(s, n, mode_apply(r, m, v, Rational(0)), Rational(0));
        FockState<Rational> comm = ab;
        for (const auto& [mm, cc] : ba.terms) comm.add_term(mm, -cc);
        FockState<Rational> expect;
        if (r == s && m == -n) expect = v.scaled(Rational(m));
        CHECK(comm.terms == expect.terms);
    }
}

TEST_CASE("square to round conversion") {
    // conversion coefficients: a[-1] = a(-1) + 1/2 a(0) - 1/12 a(1) + ...
    CHECK(square_round_coeff(-1, 1) == Rational(1));
    CHECK(square_round_coeff(0, 1) == Rational(1, 2));
    CHECK(square_round_coeff(1, 1) == Rational(-1, 12));
    CHECK(square_round_coeff(-2, 2) == Rational(1));
    CHECK(square_round_coeff(-1, 2) == Rational(1));
    CHECK(square_round_coeff(-3, 1) == Rational(0));

    std::vector<Rational> zeros{Rational(0)};
    // vacuum -> vacuum
    auto v0 = square_to_round<Rational>({}, zeros);
    REQUIRE(v0.terms.size() == 1);
    CHECK(v0.terms.begin()->second == Rational(1));
    // a[-1].1 -> a(-1).1
    auto v1 = square_to_round<Rational>({{1, 1, 1}}, zeros);
    REQUIRE(v1.terms.size() == 1);
    CHECK(v1.terms.begin()->first == FockMonomial{{1, 1, 1}});
    CHECK(v1.terms.begin()->second == Rational(1));
    // a[-2].1 -> a(-2).1 + a(-1).1
    auto v2 = square_to_round<Rational>({{1, 2, 1}}, zeros);
    REQUIRE(v2.terms.size() == 2);
    CHECK(v2.terms.at(FockMonomial{{1, 1, 1}}) == Rational(1));
    CHECK(v2.terms.at(FockMonomial{{1, 2, 1}}) == Rational(1));
    // a[-1]^2 . 1 -> a(-1)^2 . 1 - 1/12
    auto v11 = square_to_round<Rational>({{1, 1, 2}}, zeros);
    CHECK(v11.terms.at(FockMonomial{{1, 1, 2}}) == Rational(1));
    CHECK(v11.terms.at(FockMonomial{}) == Rational(-1, 12));
}

TEST_CASE("square to round preserves the leading weight sector") {
    testutil::Rng rng(31);
    std::vector<Rational> zeros{Rational(0), Rational(0)};
    for (int it = 0; it < 25; ++it) {
        FockMonomial mono;
        int nparts = static_cast<int>(rng.uniform(1, 3));
        for (int i = 0; i < nparts; ++i)
            mono.push_back({static_cast<int>(rng.uniform(1, 2)), rng.uniform(1, 4), 1});
        mono = normalize_monomial(mono);
        long w = monomial_weight(mono);
        auto round = square_to_round<Rational>(mono, zeros);
        // weight-w component is exactly the same monomial with coefficient 1
        bool found = false;
        for (const auto& [m, c] : round.terms) {
            CHECK(monomial_weight(m) <= w);
            if (monomial_weight(m) == w) {
                CHECK(m == mono);
                CHECK(c == Rational(1));
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("graded basis dimensions") {
    LatticeData g2 = make_lattice({{2}});
    GradedModuleBasis b(g2, {{0}}, 3);
    CHECK(b.dim_at(0) == 1);
    CHECK(b.dim_at(1) == 1);
    CHECK(b.dim_at(2) == 2);
    CHECK(b.dim_at(3) == 3);
    LatticeData d2 = make_lattice({{2, 0}, {0, 2}});
    GradedModuleBasis b2(d2, {{0, 0}}, 2);
    CHECK(b2.dim_at(2) == 5);
    GradedModuleBasis b0(g2, {{0}}, 0);
    CHECK(b0.states().size() == 1);
    CHECK_THROWS_AS(GradedModuleBasis(g2, {{0}}, 11), size_error);
}

TEST_CASE("zero mode examples") {
    LatticeData g4 = make_lattice({{4}});
    GradedModuleBasis basis(g4, {{1}}, 4);
    std::vector<Rational> pair{g4.pairing_exact(1, {{1}})};  // = 2
    // o(a(-1).1) = a(0) acts as (a,beta) = 2
    auto v = FockState<Rational>::monomial_state({{1, 1, 1}});
    auto op = zero_mode(v, basis, pair);
    for (size_t i = 0; i < basis.states().size(); ++i) {
        REQUIRE(op.columns[i].size() == 1);
        CHECK(op.columns[i].begin()->first == static_cast<int>(i));
        CHECK(op.columns[i].begin()->second == Rational(2));
    }
    // o(1) = Id
    auto idop = zero_mode(FockState<Rational>::vacuum(), basis, pair);
    for (size_t i = 0; i < basis.states().size(); ++i) {
        REQUIRE(idop.columns[i].size() == 1);
        CHECK(idop.columns[i].begin()->second == Rational(1));
    }
}

TEST_CASE("brute partition function equals 1/eta") {
    LatticeData g2 = make_lattice({{2}});
    GradedModuleBasis basis(g2, {{0}}, 8);
    auto z = brute_partition_function<Rational>(basis);
    auto eta_inv = eta_series(24 * 9).inverse();
    for (long w = 0; w <= 8; ++w) CHECK(z.coeff(24 * w - 1) == eta_inv.coeff(24 * w - 1));
}

TEST_CASE("brute trace of a[-1]^2 matches E_2/eta") {
    LatticeData g2 = make_lattice({{2}});
    GradedModuleBasis basis(g2, {{0}}, 8);
    auto tr = brute_trace<Rational>({{1, 1, 2}}, basis);
    auto expect = eisenstein(2, 24 * 9) * eta_series(24 * 9 + 2).inverse();
    for (long w = 0; w <= 8; ++w) CHECK(tr.coeff(24 * w - 1) == expect.coeff(24 * w - 1));
}

TEST_CASE("brute trace over a charged module picks up (a,beta)") {
    // v = a[-1].1, beta = (1) in gram [2]: trace = sqrt(2) q^{1}/eta
    LatticeData g2 = make_lattice({{2}});
    GradedModuleBasis basis(g2, {{1}}, 6);
    auto tr = brute_trace<Cplx>({{1, 1, 1}}, basis);
    auto eta_inv = eta_series(300).inverse();
    double s2 = std::sqrt(2.0);
    for (long w = 0; w <= 6; ++w) {
        Cplx got = tr.coeff(24 * w + 12 * 2 - 1);
        double expect = s2 * eta_inv.coeff(24 * w - 1).to_double();
        CHECK(std::abs(got - Cplx(expect, 0.0)) < 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("brute trace is linear") {
    LatticeData g2 = make_lattice({{2}});
    GradedModuleBasis basis(g2, {{0}}, 6);
    testutil::Rng rng(41);
    auto t1 = brute_trace<Rational>({{1, 1, 2}}, basis);          // a[-1]^2
    auto t2 = brute_trace<Rational>({{1, 2, 2}}, basis);          // a[-2]^2
    Rational c1 = testutil::random_rational(rng), c2 = testutil::random_rational(rng);
    FockState<Rational> combo;
    combo.add_term({{1, 1, 2}}, c1);
    combo.add_term({{1, 2, 2}}, c2);
    // trace of the combination, via zero_mode on the summed round state
    std::vector<Rational> pair{Rational(0)};
    FockState<Rational> round;
    for (const auto& [m, c] : combo.terms) {
        auto r = square_to_round<Rational>(m, {Rational(0)});
        for (const auto& [mm, cc] : r.terms) round.add_term(mm, cc * c);
    }
    auto op = zero_mode(round, basis, pair);
    for (long w = 0; w <= 6; ++w) {
        Rational tr(0);
        for (int idx : basis.by_weight()[static_cast<size_t>(w)]) {
            auto it = op.columns[static_cast<size_t>(idx)].find(idx);
            if (it != op.columns[static_cast<size_t>(idx)].end()) tr += it->second;
        }
        CHECK(tr == c1 * t1.coeff(24 * w - 1) + c2 * t2.coeff(24 * w - 1));
    }
}
