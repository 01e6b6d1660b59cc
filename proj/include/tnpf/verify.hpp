#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnpf/ring.hpp"

namespace tnpf {

struct RunConfig {
    long trunc = 264;
    long zorder = 12;
    double tol = 1e-10;
    std::size_t inv_cap = 12;
    long basis_cap = 10;
    int threads = 1;
    std::uint64_t seed = 20240817;
};

struct CheckResult {
    std::string suite;
    std::string case_id;
    double residual;
    double tolerance;
    bool pass;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;
    double seconds = 0.0;

    void add(const std::string& case_id, double residual, double tolerance) {
        bool ok = residual <= tolerance;
        checks.push_back({suite, case_id, residual, tolerance, ok});
        pass = pass && ok;
    }
};

// Verification suites. Each one turns a family of identities the closed
// formulas must satisfy into executable checks with pinned tolerances; the
// acceptance gate runs all of them.
SuiteReport verify_foundations(const RunConfig& cfg);    // eta/partitions, E_k
SuiteReport verify_primeform(const RunConfig& cfg);      // exp(-P_0) = -i theta1 / eta^3
SuiteReport verify_oracle(const RunConfig& cfg);         // brute trace vs closed formula
SuiteReport verify_zhu(const RunConfig& cfg);            // recursion residuals
SuiteReport verify_generating(const RunConfig& cfg);     // exponential identities
SuiteReport verify_elliptic(const RunConfig& cfg);       // periodicity/symmetry suite
SuiteReport verify_laurent(const RunConfig& cfg);        // leading Laurent behaviour
SuiteReport verify_theta(const RunConfig& cfg);          // Jacobi-form identity
SuiteReport verify_fourier(const RunConfig& cfg);        // integral normalization
SuiteReport verify_combinatorics(const RunConfig& cfg);  // counts and Aut sums

std::vector<std::string> verify_suite_names();
SuiteReport run_verify_suite(const std::string& name, const RunConfig& cfg);

}  // namespace tnpf
