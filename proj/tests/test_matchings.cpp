#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "testutil.hpp"
#include "tnpf/matchings.hpp"

using namespace tnpf;

static LabelledSet make_set(const std::vector<long>& labels) {
    LabelledSet s;
    int uid = 0;
    for (long l : labels) s.elements.push_back({1, 1, l, uid++});
    return s;
}

TEST_CASE("involution counts match the telephone recurrence") {
    // T(n) = T(n-1) + (n-1) T(n-2)
    std::vector<std::uint64_t> tel{1, 1};
    for (int n = 2; n <= 12; ++n)
        tel.push_back(tel[static_cast<size_t>(n - 1)] +
                      static_cast<std::uint64_t>(n - 1) * tel[static_cast<size_t>(n - 2)]);
    for (int n = 0; n <= 10; ++n) {
        auto s = make_set(std::vector<long>(static_cast<size_t>(n), 1));
        CHECK(count_involutions(s, 12) == tel[static_cast<size_t>(n)]);
    }
}

TEST_CASE("fpf counts match double factorials") {
    auto dfact = [](int n) {
        std::uint64_t r = 1;
        for (int k = n - 1; k > 0; k -= 2) r *= static_cast<std::uint64_t>(k);
        return r;
    };
    for (int n = 0; n <= 12; n += 2) {
        auto s = make_set(std::vector<long>(static_cast<size_t>(n), 3));
        CHECK(count_fpf(s, 12) == dfact(n));
    }
    for (int n = 1; n <= 11; n += 2) {
        auto s = make_set(std::vector<long>(static_cast<size_t>(n), 3));
        CHECK(count_fpf(s, 12) == 0);
    }
    CHECK(count_involutions(make_set({1, 1, 1}), 12) == 4);
    CHECK(count_involutions(make_set({1, 2, 3, 4}), 12) == 10);
    CHECK(count_fpf(make_set({1, 2, 3, 4}), 12) == 3);
    CHECK(count_fpf(make_set({1, 2, 3, 4, 5, 6}), 12) == 15);
}

TEST_CASE("cap enforcement") {
    auto s = make_set(std::vector<long>(13, 1));
    CHECK_THROWS_AS(count_involutions(s, 12), size_error);
    // cap can be raised to the hard limit but not beyond
    auto s14 = make_set(std::vector<long>(14, 1));
    CHECK_THROWS_AS(count_fpf(s14, 12), size_error);
    CHECK(count_fpf(s14, 16) > 0);
    auto s17 = make_set(std::vector<long>(17, 1));
    CHECK_THROWS_AS(count_involutions(s17, 99), size_error);
}

TEST_CASE("every emitted involution covers each uid exactly once") {
    auto s = make_set({1, 1, 2, 3, 3});
    enumerate_involutions(s, 12, [&](const Involution& inv) {
        std::vector<int> seen(s.size(), 0);
        for (auto [a, b] : inv.pairs) {
            CHECK(a != b);
            ++seen[static_cast<size_t>(a)];
            ++seen[static_cast<size_t>(b)];
        }
        for (int f : inv.fixed) ++seen[static_cast<size_t>(f)];
        for (int c : seen) CHECK(c == 1);
    });
}

TEST_CASE("enumeration is deterministic") {
    auto s = make_set({1, 2, 2, 4});
    std::vector<std::vector<std::pair<int, int>>> order1, order2;
    enumerate_involutions(s, 12, [&](const Involution& i) { order1.push_back(i.pairs); });
    enumerate_involutions(s, 12, [&](const Involution& i) { order2.push_back(i.pairs); });
    CHECK(order1 == order2);
    // lexicographic by smallest unpaired uid: the first involution pairs 0-1
    REQUIRE(!order1.empty());
    CHECK(order1.front() == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
}

TEST_CASE("aut orders") {
    Matching single;
    single.edges[{1, 2}] = 1;
    CHECK(aut_order(single) == Rational(1));
    Matching equal_labels;
    equal_labels.edges[{3, 3}] = 1;
    CHECK(aut_order(equal_labels) == Rational(2));
    Matching two_copies;
    two_copies.edges[{1, 1}] = 2;
    CHECK(aut_order(two_copies) == Rational(8));  // 2! * 2^2
    Matching mixed;
    mixed.edges[{1, 2}] = 3;
    mixed.edges[{4, 4}] = 1;
    CHECK(aut_order(mixed) == Rational(12));  // 3! * (2^1)
}

TEST_CASE("class sum with 1/|Aut| weights equals labelled sum over e_k!") {
    // For a multiset with e_k copies of label k and any edge weight function
    // x(E), sum over isomorphism classes of X(mu)/|Aut(mu)| equals
    // (1/prod e_k!) sum over labelled fpf involutions of X(mu_phi).
    auto check_profile = [](const std::vector<long>& labels) {
        auto s = make_set(labels);
        auto xweight = [](const Matching& m) {
            Rational r(1);
            for (const auto& [lab, mult] : m.edges) {
                Rational x = Rational(2 * lab.first + 1, 3) + Rational(lab.second * lab.second, 5);
                r *= Rational::pow(x, mult);
            }
            return r;
        };
        Rational labelled(0);
        std::map<std::vector<std::pair<long, long>>, Matching> classes;
        enumerate_fpf(s, 12, [&](const Involution& inv) {
            Matching m = Matching::from_involution(s, inv);
            labelled += xweight(m);
            std::vector<std::pair<long, long>> key(m.edges.size() == 0 ? 0 : 0);
            for (const auto& [lab, mult] : m.edges)
                for (int i = 0; i < mult; ++i) key.push_back(lab);
            classes.emplace(key, m);
        });
        std::map<long, int> mult;
        for (long l : labels) ++mult[l];
        Rational perm(1);
        for (auto& [l, e] : mult) perm *= Rational::factorial(static_cast<unsigned long>(e));
        Rational class_sum(0);
        for (auto& [key, m] : classes) class_sum += xweight(m) / aut_order(m);
        CHECK(class_sum == labelled / perm);
    };
    check_profile({1, 1, 2, 2});            // e = (2,2), prod e! = 4
    check_profile({1, 1, 1, 1, 2, 2});      // prod e! = 48
    check_profile({1, 1, 1, 3, 3, 5});      // prod e! = 12
    check_profile({2, 2, 2, 2});            // prod e! = 24
    check_profile({1, 2, 3, 4});            // all distinct
}
