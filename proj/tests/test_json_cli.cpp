#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tnpf/json_io.hpp"

using namespace tnpf;
namespace fs = std::filesystem;

namespace {

fs::path golden_dir() {
    // tests run from the build tree; the corpus lives in the source tree
    fs::path p = fs::path(TNPF_SOURCE_DIR) / "data" / "golden";
    REQUIRE(fs::exists(p));
    return p;
}

Json load(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("every golden problem reproduces its frozen output") {
    for (const auto& entry : fs::directory_iterator(golden_dir())) {
        if (!entry.is_regular_file()) continue;
        CAPTURE(entry.path().filename().string());
        OwnedProblem owned = problem_from_json(load(entry.path()));
        NPointResult r = npoint_full(owned.problem);
        Json got = result_to_json(r);
        Json expect = load(golden_dir() / "expected" / entry.path().filename());
        if (got.at("mode") == "numeric") {
            Cplx g(got["value"][0].get<double>(), got["value"][1].get<double>());
            Cplx e(expect["value"][0].get<double>(), expect["value"][1].get<double>());
            CHECK(std::abs(g - e) <= 1e-12 * std::max(1.0, std::abs(e)));
        } else {
            CHECK(got == expect);
        }
    }
}

TEST_CASE("frozen values pin known closed forms") {
    // (a,beta) q^h / eta for the charged current
    Json r = load(golden_dir() / "expected" / "module_1pt_current_gram4.json");
    auto q = qseries_rational_from_json(r);
    CHECK(q.coeff(47) == Rational(2));
    CHECK(q.coeff(71) == Rational(2));
    CHECK(q.coeff(95) == Rational(4));
    // rank-2 orthogonal-direction state vanishes over the vacuum module
    Json z = load(golden_dir() / "expected" / "rank2_1pt_boson_zero.json");
    CHECK(qseries_rational_from_json(z).is_structurally_zero());
    // rank-2 module value (a_1,beta)(a_2,beta) q^h / eta^2 = 4 q^4 / eta^2
    Json m = load(golden_dir() / "expected" / "rank2_1pt_module_diag4.json");
    auto mq = qseries_rational_from_json(m);
    CHECK(mq.coeff(96 - 2) == Rational(4));
    // partition function of the A2 module beta=(1,0): q^{(beta,beta)/2}/eta^2
    Json p = load(golden_dir() / "expected" / "zn_partition_rank2.json");
    auto pq = qseries_rational_from_json(p);
    CHECK(pq.coeff(24 - 2) == Rational(1));
    CHECK(pq.coeff(48 - 2) == Rational(2));
}

TEST_CASE("rational results round-trip exactly") {
    for (const char* name :
         {"boson_1pt_weight2.json", "boson_2pt_currents_formal.json",
          "lattice_2pt_rank1_formal.json", "mixed_2pt_gram4_formal.json"}) {
        CAPTURE(name);
        OwnedProblem owned = problem_from_json(load(golden_dir() / name));
        NPointResult r = npoint_full(owned.problem);
        REQUIRE(r.mode == EvalMode::Rational);
        NPointResult back = rational_result_from_json(result_to_json(r));
        REQUIRE(back.has_formal_z == r.has_formal_z);
        // exact coefficientwise equality
        const auto& a = r.zq;
        const auto& b = back.zq;
        CHECK(a.terms().size() == b.terms().size());
        for (size_t i = 0; i < a.terms().size(); ++i) {
            CHECK(a.terms()[i].first == b.terms()[i].first);
            CHECK((a.terms()[i].second - b.terms()[i].second).is_structurally_zero());
        }
    }
}

TEST_CASE("problem serialization round-trips") {
    OwnedProblem owned =
        problem_from_json(load(golden_dir() / "mixed_2pt_gram4_formal.json"));
    Json j = problem_to_json(owned.problem);
    OwnedProblem again = problem_from_json(j);
    CHECK(problem_to_json(again.problem) == j);
}

TEST_CASE("schema violations carry pointers") {
    Json bad = load(golden_dir() / "boson_1pt_vacuum.json");
    bad.erase("beta");
    CHECK_THROWS_AS(problem_from_json(bad), schema_error);
    Json bad2 = load(golden_dir() / "boson_1pt_vacuum.json");
    bad2["insertions"][0]["fock"] = Json::array({Json::array({0, 1, 1})});
    try {
        problem_from_json(bad2);
        FAIL("expected schema_error");
    } catch (const schema_error& e) {
        CHECK(e.pointer == "/insertions/0/fock/0");
    }
    Json bad3 = load(golden_dir() / "boson_1pt_vacuum.json");
    bad3["insertions"][0]["alpha"] = Json::array({1});  // charge sum nonzero
    CHECK_THROWS_AS(problem_from_json(bad3), schema_error);
}

TEST_CASE("verification report schema") {
    RunConfig cfg;
    SuiteReport rep = run_verify_suite("laurent", cfg);
    Json j = report_to_json(rep);
    CHECK(j.at("suite") == "laurent");
    CHECK(j.at("pass") == true);
    for (const auto& c : j.at("cases")) {
        CHECK(c.contains("suite"));
        CHECK(c.contains("case-id"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
}
