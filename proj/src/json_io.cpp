#include "tnpf/json_io.hpp"

#include <sstream>

namespace tnpf {

namespace {

Cplx cplx_from_json(const Json& j, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw schema_error(ptr, "expected [re, im]");
    return Cplx(j[0].get<double>(), j[1].get<double>());
}

Json cplx_to_json(const Cplx& c) { return Json::array({c.real(), c.imag()}); }

std::vector<long> long_vector_from_json(const Json& j, const std::string& ptr) {
    if (!j.is_array()) throw schema_error(ptr, "expected an array of integers");
    std::vector<long> v;
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer())
            throw schema_error(ptr + "/" + std::to_string(i), "expected an integer");
        v.push_back(j[i].get<long>());
    }
    return v;
}

}  // namespace

OwnedProblem problem_from_json(const Json& j) {
    if (!j.is_object()) throw schema_error("", "problem must be an object");
    if (!j.contains("gram")) throw schema_error("/gram", "missing Gram matrix");
    if (!j["gram"].is_array() || j["gram"].empty())
        throw schema_error("/gram", "expected a nonempty matrix");
    std::vector<std::vector<long>> gram;
    for (size_t i = 0; i < j["gram"].size(); ++i)
        gram.push_back(long_vector_from_json(j["gram"][i], "/gram/" + std::to_string(i)));
    OwnedProblem out;
    try {
        out.lattice = std::make_shared<LatticeData>(std::move(gram));
    } catch (const std::invalid_argument& e) {
        throw schema_error("/gram", e.what());
    }
    NPointProblem& p = out.problem;
    p.lattice = out.lattice.get();
    if (!j.contains("beta")) throw schema_error("/beta", "missing module label");
    p.beta = LatticeVector{long_vector_from_json(j["beta"], "/beta")};
    if (j.contains("tau")) {
        if (j["tau"].is_string() && j["tau"].get<std::string>() == "formal") {
            p.tau_formal = true;
        } else {
            p.tau_formal = false;
            p.tau = cplx_from_json(j["tau"], "/tau");
        }
    }
    if (!j.contains("insertions") || !j["insertions"].is_array())
        throw schema_error("/insertions", "expected an array");
    for (size_t i = 0; i < j["insertions"].size(); ++i) {
        const Json& ji = j["insertions"][i];
        std::string ptr = "/insertions/" + std::to_string(i);
        if (!ji.is_object()) throw schema_error(ptr, "expected an object");
        Insertion ins;
        if (!ji.contains("alpha")) throw schema_error(ptr + "/alpha", "missing lattice charge");
        ins.alpha = LatticeVector{long_vector_from_json(ji["alpha"], ptr + "/alpha")};
        if (ji.contains("fock")) {
            if (!ji["fock"].is_array()) throw schema_error(ptr + "/fock", "expected [[dir,mode,exp],...]");
            FockMonomial m;
            for (size_t k = 0; k < ji["fock"].size(); ++k) {
                auto triple = long_vector_from_json(ji["fock"][k], ptr + "/fock/" + std::to_string(k));
                if (triple.size() != 3)
                    throw schema_error(ptr + "/fock/" + std::to_string(k), "expected [dir, mode, exp]");
                if (triple[0] < 1 || triple[1] < 1 || triple[2] < 1)
                    throw schema_error(ptr + "/fock/" + std::to_string(k),
                                       "direction, mode and exponent must be positive");
                m.push_back({static_cast<int>(triple[0]), triple[1], static_cast<int>(triple[2])});
            }
            ins.state = normalize_monomial(std::move(m));
        }
        if (!ji.contains("z")) throw schema_error(ptr + "/z", "missing position");
        if (ji["z"].is_string() && ji["z"].get<std::string>() == "formal")
            ins.formal = true;
        else if (ji["z"].is_number())
            ins.z = Cplx(ji["z"].get<double>(), 0.0);
        else
            ins.z = cplx_from_json(ji["z"], ptr + "/z");
        p.insertions.push_back(std::move(ins));
    }
    if (j.contains("trunc")) p.trunc = j["trunc"].get<long>();
    if (j.contains("zorder")) p.zorder = j["zorder"].get<long>();
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw schema_error("", e.what());
    }
    return out;
}

Json problem_to_json(const NPointProblem& p) {
    Json j;
    j["gram"] = p.lattice->gram();
    j["beta"] = p.beta.coords;
    j["tau"] = p.tau_formal ? Json("formal") : cplx_to_json(p.tau);
    j["trunc"] = p.trunc;
    j["zorder"] = p.zorder;
    Json ins = Json::array();
    for (const auto& i : p.insertions) {
        Json ji;
        ji["alpha"] = i.alpha.coords;
        Json fock = Json::array();
        for (const auto& mp : i.state) fock.push_back(Json::array({mp.dir, mp.mode, mp.exp}));
        ji["fock"] = fock;
        ji["z"] = i.formal ? Json("formal") : cplx_to_json(i.z);
        ins.push_back(ji);
    }
    j["insertions"] = ins;
    return j;
}

Json qseries_to_json(const QSeries<Rational>& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(Json::array({e, c.num_str(), c.den_str()}));
    return Json{{"trunc", s.trunc()}, {"qseries", terms}};
}

Json qseries_to_json(const QSeries<Cplx>& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(Json::array({e, c.real(), c.imag()}));
    return Json{{"trunc", s.trunc()}, {"qseries", terms}};
}

QSeries<Rational> qseries_rational_from_json(const Json& j) {
    if (!j.contains("trunc") || !j.contains("qseries"))
        throw schema_error("", "expected {trunc, qseries}");
    std::vector<QSeries<Rational>::Term> terms;
    for (const auto& t : j["qseries"]) {
        Rational c(t[1].get<std::string>() + "/" + t[2].get<std::string>());
        terms.emplace_back(t[0].get<long>(), c);
    }
    return QSeries<Rational>::from_terms(std::move(terms), j["trunc"].get<long>());
}

template <class K>
static Json zseries_to_json_impl(const ZSeries<QSeries<K>>& z) {
    Json terms = Json::array();
    for (const auto& [e, c] : z.terms()) terms.push_back(Json::array({e, qseries_to_json(c)}));
    return Json{{"ztrunc", z.ztrunc() >= (1L << 39) ? Json(nullptr) : Json(z.ztrunc())},
                {"zseries", terms}};
}

Json zseries_to_json(const ZSeries<QSeries<Rational>>& z) { return zseries_to_json_impl(z); }
Json zseries_to_json(const ZSeries<QSeries<Cplx>>& z) { return zseries_to_json_impl(z); }

Json result_to_json(const NPointResult& r) {
    Json j;
    j["mode"] = eval_mode_name(r.mode);
    j["provenance"] = r.provenance;
    switch (r.mode) {
        case EvalMode::Rational:
            if (r.has_formal_z)
                j.update(zseries_to_json_impl(r.zq));
            else
                j.update(qseries_to_json(r.qseries_rational()));
            break;
        case EvalMode::FormalCplx:
            if (r.has_formal_z)
                j.update(zseries_to_json_impl(r.zc));
            else
                j.update(qseries_to_json(r.qseries_cplx()));
            break;
        case EvalMode::Numeric:
            j["value"] = cplx_to_json(r.value);
            break;
    }
    return j;
}

NPointResult rational_result_from_json(const Json& j) {
    if (j.at("mode").get<std::string>() != "rational")
        throw schema_error("/mode", "only rational results round-trip exactly");
    NPointResult r;
    r.mode = EvalMode::Rational;
    if (j.contains("zseries")) {
        r.has_formal_z = true;
        std::vector<ZSeries<QSeries<Rational>>::Term> terms;
        for (const auto& t : j["zseries"])
            terms.emplace_back(t[0].get<long>(), qseries_rational_from_json(t[1]));
        long zt = j["ztrunc"].is_null() ? (1L << 40) : j["ztrunc"].get<long>();
        r.zq = ZSeries<QSeries<Rational>>::from_terms(std::move(terms), zt);
    } else {
        r.has_formal_z = false;
        r.zq = ZSeries<QSeries<Rational>>::monomial(0, qseries_rational_from_json(j), 1L << 40);
    }
    return r;
}

Json report_to_json(const SuiteReport& rep) {
    Json cases = Json::array();
    for (const auto& c : rep.checks)
        cases.push_back(Json{{"suite", c.suite},
                             {"case-id", c.case_id},
                             {"residual", c.residual},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
    return Json{{"suite", rep.suite}, {"cases", cases}, {"pass", rep.pass},
                {"seconds", rep.seconds}};
}

namespace {

std::string q_power(long e24) {
    // t^e with t = q^{1/24}, printed as a reduced power of q
    long g = std::gcd(std::labs(e24), 24L);
    long num = e24 / g, den = 24 / g;
    std::ostringstream os;
    os << "q^";
    if (den == 1)
        os << num;
    else
        os << "(" << num << "/" << den << ")";
    return os.str();
}

}  // namespace

std::string pretty_qseries(const QSeries<Rational>& s, long max_terms) {
    std::ostringstream os;
    long shown = 0;
    for (const auto& [e, c] : s.terms()) {
        if (shown++ >= max_terms) {
            os << " + ...";
            break;
        }
        if (shown > 1) os << " + ";
        os << c.str() << "*" << q_power(e);
    }
    if (s.terms().empty()) os << "0";
    os << "  (+O(" << q_power(s.trunc()) << "))";
    return os.str();
}

std::string pretty_qseries(const QSeries<Cplx>& s, long max_terms) {
    std::ostringstream os;
    long shown = 0;
    for (const auto& [e, c] : s.terms()) {
        if (shown++ >= max_terms) {
            os << " + ...";
            break;
        }
        if (shown > 1) os << " + ";
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*" << q_power(e);
    }
    if (s.terms().empty()) os << "0";
    os << "  (+O(" << q_power(s.trunc()) << "))";
    return os.str();
}

}  // namespace tnpf
