#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "tnpf/npoint.hpp"
#include "tnpf/verify.hpp"

namespace tnpf {

using Json = nlohmann::json;

// A problem together with the lattice it points into.
struct OwnedProblem {
    std::shared_ptr<LatticeData> lattice;
    NPointProblem problem;
};

// Schema:
// {
//   "gram": [[2]],
//   "beta": [0],
//   "tau": "formal" | [re, im],
//   "insertions": [
//     {"alpha": [0], "fock": [[dir, mode, exp], ...], "z": "formal" | 0 | [re, im]}
//   ],
//   "trunc": 264, "zorder": 12          (optional)
// }
// Schema violations throw schema_error with a JSON-pointer-style location.
struct schema_error : std::runtime_error {
    std::string pointer;
    schema_error(std::string ptr, const std::string& what)
        : std::runtime_error(what + " (at " + ptr + ")"), pointer(std::move(ptr)) {}
};

OwnedProblem problem_from_json(const Json& j);
Json problem_to_json(const NPointProblem& p);

Json qseries_to_json(const QSeries<Rational>& s);
Json qseries_to_json(const QSeries<Cplx>& s);
QSeries<Rational> qseries_rational_from_json(const Json& j);

Json result_to_json(const NPointResult& r);
// Rational results round-trip exactly through JSON.
NPointResult rational_result_from_json(const Json& j);

Json zseries_to_json(const ZSeries<QSeries<Rational>>& z);
Json zseries_to_json(const ZSeries<QSeries<Cplx>>& z);

Json report_to_json(const SuiteReport& rep);

std::string pretty_qseries(const QSeries<Rational>& s, long max_terms = 12);
std::string pretty_qseries(const QSeries<Cplx>& s, long max_terms = 12);

}  // namespace tnpf
