#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tnpf/elliptic.hpp"
#include "tnpf/json_io.hpp"
#include "tnpf/modular.hpp"
#include "tnpf/numeric.hpp"
#include "tnpf/oracle.hpp"
#include "tnpf/verify.hpp"

using namespace tnpf;

namespace {

struct Options {
    RunConfig cfg;
    std::string format = "json";
};

Cplx parse_cplx(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("expected re,im");
    return Cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

void emit(const Options& opt, const Json& j, const std::string& pretty) {
    if (opt.format == "pretty")
        std::cout << pretty << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("", "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw schema_error("", std::string("invalid JSON: ") + e.what());
    }
    return j;
}

std::string pretty_zseries_rational(const ZSeries<QSeries<Rational>>& z) {
    std::ostringstream os;
    for (const auto& [e, c] : z.terms())
        os << "z^" << e << ": " << pretty_qseries(c) << "\n";
    if (z.ztrunc() < (1L << 39)) os << "(+O(z^" << z.ztrunc() << "))";
    return os.str();
}

int run_special(const Options& opt, const std::string& which, long k, long n, bool numeric,
                Cplx tau, Cplx z) {
    const long T = opt.cfg.trunc, Z = opt.cfg.zorder;
    if (which == "eisenstein") {
        auto s = eisenstein(k, T);
        emit(opt, qseries_to_json(s), "E_" + std::to_string(k) + " = " + pretty_qseries(s));
        return 0;
    }
    if (which == "eta") {
        auto s = eta_series(T);
        emit(opt, qseries_to_json(s), "eta = " + pretty_qseries(s));
        return 0;
    }
    if (which == "pn") {
        if (numeric) {
            NumericContext ctx(tau);
            Cplx v = ctx.pn(n, z);
            emit(opt, Json{{"value", {v.real(), v.imag()}}},
                 "P_" + std::to_string(n) + " = " + std::to_string(v.real()) + " + " +
                     std::to_string(v.imag()) + "i");
        } else {
            auto s = pn_series<Rational>(n, Z, T);
            emit(opt, zseries_to_json(s), pretty_zseries_rational(s));
        }
        return 0;
    }
    if (which == "primeform") {
        if (numeric) {
            NumericContext ctx(tau);
            Cplx v = ctx.prime_form(z);
            emit(opt, Json{{"value", {v.real(), v.imag()}}},
                 "K = " + std::to_string(v.real()) + " + " + std::to_string(v.imag()) + "i");
        } else {
            auto s = prime_form_series<Rational>(Z, T);
            emit(opt, zseries_to_json(s), pretty_zseries_rational(s));
        }
        return 0;
    }
    if (which == "theta1") {
        if (numeric) {
            NumericContext ctx(tau);
            Cplx v = ctx.theta1(z);
            emit(opt, Json{{"value", {v.real(), v.imag()}}},
                 "theta1 = " + std::to_string(v.real()) + " + " + std::to_string(v.imag()) + "i");
        } else {
            auto s = minus_i_theta1_series<Rational>(Z, T);
            emit(opt, zseries_to_json(s),
                 "-i*theta1 (exact series):\n" + pretty_zseries_rational(s));
        }
        return 0;
    }
    throw CLI::ValidationError("unknown special function " + which);
}

int run_eval(const Options& opt, const std::string& path) {
    OwnedProblem owned = problem_from_json(load_json_file(path));
    owned.problem.inv_cap = opt.cfg.inv_cap;
    owned.problem.threads = opt.cfg.threads;
    NPointResult r = npoint_full(owned.problem);
    std::string pretty;
    if (r.mode == EvalMode::Numeric) {
        pretty = "value = " + std::to_string(r.value.real()) + " + " +
                 std::to_string(r.value.imag()) + "i";
    } else if (r.has_formal_z && r.mode == EvalMode::Rational) {
        pretty = pretty_zseries_rational(r.zq);
    } else if (r.mode == EvalMode::Rational) {
        pretty = pretty_qseries(r.qseries_rational());
    } else {
        pretty = "(complex-q series; use json output)";
    }
    emit(opt, result_to_json(r), pretty);
    return 0;
}

int run_verify(const Options& opt, const std::string& suite) {
    std::vector<std::string> names;
    if (suite == "all")
        names = verify_suite_names();
    else
        names.push_back(suite);
    bool all_pass = true;
    Json out = Json::array();
    std::ostringstream pretty;
    for (const auto& name : names) {
        SuiteReport rep = run_verify_suite(name, opt.cfg);
        all_pass = all_pass && rep.pass;
        out.push_back(report_to_json(rep));
        pretty << "suite " << rep.suite << ": " << (rep.pass ? "pass" : "FAIL") << " ("
               << rep.checks.size() << " checks, " << rep.seconds << " s)\n";
        for (const auto& c : rep.checks)
            if (!c.pass)
                pretty << "  FAIL " << c.case_id << " residual " << c.residual << " tol "
                       << c.tolerance << "\n";
    }
    emit(opt, out, pretty.str());
    return all_pass ? 0 : 1;
}

int run_oracle(const Options& opt, const std::string& path, long W, bool dump_basis) {
    OwnedProblem owned = problem_from_json(load_json_file(path));
    const NPointProblem& p = owned.problem;
    GradedModuleBasis basis(*p.lattice, p.beta, W, opt.cfg.basis_cap);
    Json out;
    if (dump_basis) {
        Json states = Json::array();
        for (const auto& m : basis.states()) {
            Json mono = Json::array();
            for (const auto& mp : m) mono.push_back(Json::array({mp.dir, mp.mode, mp.exp}));
            states.push_back(Json{{"weight", monomial_weight(m)}, {"modes", mono}});
        }
        out["basis"] = states;
    }
    const FockMonomial& v = p.insertions.at(0).state;
    std::string pretty;
    if (p.lattice->has_exact_pairings() || p.beta.is_zero()) {
        auto tr = brute_trace<Rational>(v, basis);
        out.update(qseries_to_json(tr));
        out["mode"] = "rational";
        pretty = pretty_qseries(tr);
    } else {
        auto tr = brute_trace<Cplx>(v, basis);
        out.update(qseries_to_json(tr));
        out["mode"] = "complex-q";
        pretty = pretty_qseries(tr);
    }
    emit(opt, out, pretty);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "genus-one chiral n-point functions for free-boson and even-lattice "
        "vertex operator algebras"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may appear after the subcommand
    Options opt;
    app.add_option("--trunc", opt.cfg.trunc, "q-series truncation in t-units (t = q^{1/24})")
        ->envname("TNPF_TRUNC");
    app.add_option("--zorder", opt.cfg.zorder, "formal z truncation order")->envname("TNPF_ZORDER");
    app.add_option("--tol", opt.cfg.tol, "float comparison tolerance")
        ->envname("TNPF_TOL")
        ->check(CLI::PositiveNumber);
    app.add_option("--inv-cap", opt.cfg.inv_cap, "labelled-set size cap for involution sums")
        ->envname("TNPF_INV_CAP")
        ->check(CLI::PositiveNumber);
    app.add_option("--basis-cap", opt.cfg.basis_cap, "oracle weight cutoff cap")
        ->envname("TNPF_BASIS_CAP")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", opt.cfg.threads, "worker threads for involution folds")
        ->envname("TNPF_THREADS");
    app.add_option("--seed", opt.cfg.seed, "seed for randomized verification instances")
        ->envname("TNPF_SEED");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "pretty"}));

    auto* special = app.add_subcommand("special", "elliptic/modular building blocks");
    std::string which;
    long k = 2, n = 2;
    std::string tau_s, z_s;
    special->add_option("function", which, "eisenstein|eta|pn|primeform|theta1")->required();
    special->add_option("--k", k, "Eisenstein weight");
    special->add_option("--n", n, "P_n index");
    special->add_option("--tau", tau_s, "numeric tau as re,im (enables numeric mode)");
    special->add_option("--z", z_s, "numeric z as re,im");

    auto* npoint = app.add_subcommand("npoint", "n-point functions");
    auto* eval = npoint->add_subcommand("eval", "evaluate a problem file");
    std::string eval_path;
    eval->add_option("problem", eval_path, "problem JSON file")->required();
    auto* verify = npoint->add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name or 'all'")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force Fock-space traces");
    auto* trace = oracle->add_subcommand("trace", "graded trace of the first insertion's state");
    std::string trace_path;
    long W = 8;
    bool dump_basis = false;
    trace->add_option("problem", trace_path, "problem JSON file")->required();
    trace->add_option("--weight", W, "weight cutoff");
    trace->add_flag("--dump-basis", dump_basis, "include the graded basis in the output");

    CLI11_PARSE(app, argc, argv);

    if (opt.cfg.inv_cap > kDefaultInvolutionCap)
        std::cerr << "warning: involution cap " << opt.cfg.inv_cap
                  << " above the default " << kDefaultInvolutionCap
                  << "; enumeration grows superexponentially (hard limit "
                  << kHardInvolutionCap << ")\n";

    try {
        if (special->parsed()) {
            bool numeric = !tau_s.empty();
            Cplx tau = numeric ? parse_cplx(tau_s) : Cplx(0.0, 1.0);
            Cplx z = z_s.empty() ? Cplx(0.3, 0.2) : parse_cplx(z_s);
            return run_special(opt, which, k, n, numeric, tau, z);
        }
        if (npoint->parsed()) {
            if (eval->parsed()) return run_eval(opt, eval_path);
            if (verify->parsed()) return run_verify(opt, suite);
            std::cerr << "npoint needs a subcommand (eval|verify)\n";
            return 2;
        }
        if (oracle->parsed()) {
            if (trace->parsed()) return run_oracle(opt, trace_path, W, dump_basis);
            std::cerr << "oracle needs a subcommand (trace)\n";
            return 2;
        }
    } catch (const schema_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const pole_error& e) {
        std::cerr << "math domain error: " << e.what() << "\n";
        return 3;
    } catch (const size_error& e) {
        std::cerr << "math domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "math domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
