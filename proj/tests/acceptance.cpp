// Acceptance gate: runs every verification suite with its pinned tolerance
// and runtime budget and prints one pass/fail line per criterion.
#include <cstdio>
#include <string>

#include "tnpf/verify.hpp"

using namespace tnpf;

namespace {

struct Criterion {
    int number;
    const char* suite;
    const char* title;
    double budget_seconds;
};

const Criterion kCriteria[] = {
    {1, "foundations", "Eisenstein/eta foundations (partitions, E_2/E_4/E_6, odd E_k)", 1.0},
    {2, "primeform", "prime form exp(-P_0) = -i theta_1 / eta^3 through z^8, q^5", 5.0},
    {3, "oracle", "brute-force trace oracle vs closed formula (mode sum <= 6, q^8)", 30.0},
    {4, "zhu", "Zhu recursion residuals, 50 randomized instances", 60.0},
    {5, "generating", "exponential generating identities through weight 6", 60.0},
    {6, "elliptic", "elliptic suite: symmetry, translation, periods, multipliers", 10.0},
    {7, "laurent", "leading Laurent behaviour of 2-point functions", 5.0},
    {8, "theta", "Jacobi-form identity: module sum vs theta/(eta^l K^{(a,a)})", 20.0},
    {9, "fourier", "integral normalization (64-sample trapezoid)", 5.0},
    {10, "combinatorics", "involution/matching counts and Aut-weighted sums", 10.0},
};

}  // namespace

int main() {
    RunConfig cfg;
    int failed = 0;
    for (const Criterion& c : kCriteria) {
        SuiteReport rep = run_verify_suite(c.suite, cfg);
        bool in_budget = rep.seconds < c.budget_seconds;
        bool pass = rep.pass && in_budget;
        std::printf("[%2d/10] %s  %-62s (%zu checks, %.2f s < %.0f s)\n", c.number,
                    pass ? "PASS" : "FAIL", c.title, rep.checks.size(), rep.seconds,
                    c.budget_seconds);
        if (!rep.pass)
            for (const auto& chk : rep.checks)
                if (!chk.pass)
                    std::printf("        failing case %s: residual %.3e, tolerance %.3e\n",
                                chk.case_id.c_str(), chk.residual, chk.tolerance);
        if (!in_budget) std::printf("        over runtime budget\n");
        if (!pass) ++failed;
    }
    if (failed == 0)
        std::printf("ACCEPTANCE: 10/10 criteria passed\n");
    else
        std::printf("ACCEPTANCE: %d criteria FAILED\n", failed);
    return failed == 0 ? 0 : 1;
}
