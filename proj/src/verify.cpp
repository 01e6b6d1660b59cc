#include "tnpf/verify.hpp"

#include <chrono>
#include <functional>

#include "tnpf/elliptic.hpp"
#include "tnpf/genident.hpp"
#include "tnpf/matchings.hpp"
#include "tnpf/modular.hpp"
#include "tnpf/npoint.hpp"
#include "tnpf/oracle.hpp"

namespace tnpf {

namespace {

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

double exact_residual(bool equal) { return equal ? 0.0 : 1.0; }

template <class F>
SuiteReport timed(const std::string& name, F&& body) {
    SuiteReport rep;
    rep.suite = name;
    auto t0 = std::chrono::steady_clock::now();
    body(rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<long long> partition_numbers(int n) {
    std::vector<long long> p(static_cast<size_t>(n) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int m = part; m <= n; ++m) p[static_cast<size_t>(m)] += p[static_cast<size_t>(m - part)];
    return p;
}

}  // namespace

SuiteReport verify_foundations(const RunConfig& cfg) {
    return timed("foundations", [&](SuiteReport& rep) {
        long T = std::max<long>(cfg.trunc, 24 * 21 + 2);
        auto eta_inv = eta_series(T).inverse();
        auto p = partition_numbers(20);
        bool ok = true;
        for (int n = 0; n <= 20; ++n)
            ok = ok && eta_inv.coeff(24 * n - 1) == Rational(p[static_cast<size_t>(n)]);
        rep.add("eta-inverse-counts-partitions-p0..p20", exact_residual(ok), 0.0);

        // first ten q-coefficients of E_2, E_4, E_6 against frozen divisor sums
        const long s1[10] = {1, 3, 4, 7, 6, 12, 8, 15, 13, 18};
        const long s3[10] = {1, 9, 28, 73, 126, 252, 344, 585, 757, 1134};
        const long s5[10] = {1, 33, 244, 1057, 3126, 8052, 16808, 33825, 59293, 103158};
        auto e2 = eisenstein(2, T);
        auto e4 = eisenstein(4, T);
        auto e6 = eisenstein(6, T);
        ok = e2.coeff(0) == Rational(-1, 12) && e4.coeff(0) == Rational(1, 720) &&
             e6.coeff(0) == Rational(-1, 30240);
        for (int n = 1; n <= 10; ++n) {
            ok = ok && e2.coeff(24 * n) == Rational(2 * s1[n - 1]);
            ok = ok && e4.coeff(24 * n) == Rational(2 * s3[n - 1], 6);
            ok = ok && e6.coeff(24 * n) == Rational(2 * s5[n - 1], 120);
        }
        rep.add("eisenstein-2-4-6-first-ten-coefficients", exact_residual(ok), 0.0);

        ok = true;
        for (long k = 1; k <= 15; k += 2) ok = ok && eisenstein(k, T).is_structurally_zero();
        rep.add("odd-eisenstein-vanishes", exact_residual(ok), 0.0);
    });
}

SuiteReport verify_primeform(const RunConfig& cfg) {
    return timed("primeform", [&](SuiteReport& rep) {
        (void)cfg;
        const long Z = 9, T = 121;  // through z^8 and q^5 = t^120
        auto lhs = prime_form_series<Rational>(Z, T);
        auto th = minus_i_theta1_series<Rational>(Z, T + 8);
        auto eta3inv = eta_series(T + 8).pow(3).inverse();
        bool ok = true;
        for (long e = -1; e < Z; ++e) {
            const QSeries<Rational>* a = lhs.coeff_ptr(e);
            const QSeries<Rational>* b = th.coeff_ptr(e);
            QSeries<Rational> rb = b ? (*b * eta3inv) : QSeries<Rational>::zero(T);
            QSeries<Rational> ra = a ? *a : QSeries<Rational>::zero(T);
            long t = std::min({ra.trunc(), rb.trunc(), T});
            ok = ok && (ra.truncated(t) - rb.truncated(t)).is_structurally_zero();
        }
        rep.add("exp(-P0)-equals-neg-i-theta1-over-eta-cubed-z8-q5", exact_residual(ok), 0.0);
    });
}

SuiteReport verify_oracle(const RunConfig& cfg) {
    return timed("oracle", [&](SuiteReport& rep) {
        LatticeData g2 = make_lattice({{2}});
        const long W = 8;
        std::vector<FockMonomial> monos;
        std::function<void(long, long, FockMonomial&)> gen = [&](long budget, long maxmode,
                                                                 FockMonomial& cur) {
            monos.push_back(normalize_monomial(cur));
            for (long mode = std::min(budget, maxmode); mode >= 1; --mode) {
                cur.push_back({1, mode, 1});
                gen(budget - mode, mode, cur);
                cur.pop_back();
            }
        };
        FockMonomial cur;
        gen(6, 6, cur);

        {
            GradedModuleBasis basis(g2, {{0}}, W, cfg.basis_cap);
            bool ok = true;
            for (const auto& m : monos) {
                auto brute = brute_trace<Rational>(m, basis);
                auto closed = onepoint_module_rational(g2, {{0}}, m, 24 * (W + 1), cfg.inv_cap);
                long t = std::min(brute.trunc(), closed.trunc());
                ok = ok && (brute.truncated(t) - closed.truncated(t)).is_structurally_zero();
            }
            rep.add("vacuum-module-exact-mode-sum-6-through-q8", exact_residual(ok), 0.0);
        }
        {
            GradedModuleBasis basis(g2, {{1}}, W, cfg.basis_cap);
            double worst = 0.0;
            for (const auto& m : monos) {
                auto brute = brute_trace<Cplx>(m, basis);
                auto closed = onepoint_module_cplx(g2, {{1}}, m, 24 * (W + 1), cfg.inv_cap);
                long t = std::min(brute.trunc(), closed.trunc());
                double scale = std::max(1.0, closed.max_abs());
                worst = std::max(worst,
                                 max_abs_diff(brute.truncated(t), closed.truncated(t)) / scale);
            }
            rep.add("charged-module-gram2-relative", worst, 1e-9);
        }
        {
            // rank 2, exact pairings, mode sums <= 4 across both directions
            LatticeData d4 = make_lattice({{4, 0}, {0, 4}});
            std::vector<FockMonomial> monos2;
            std::function<void(long, int, long, FockMonomial&)> gen2 =
                [&](long budget, int dir, long maxmode, FockMonomial& cur) {
                    if (dir > 2) {
                        monos2.push_back(normalize_monomial(cur));
                        return;
                    }
                    gen2(budget, dir + 1, budget, cur);
                    for (long mode = std::min(budget, maxmode); mode >= 1; --mode) {
                        cur.push_back({dir, mode, 1});
                        gen2(budget - mode, dir, mode, cur);
                        cur.pop_back();
                    }
                };
            FockMonomial cur2;
            gen2(4, 1, 4, cur2);
            bool ok = true;
            for (const auto& beta : {LatticeVector{{0, 0}}, LatticeVector{{1, 1}}}) {
                GradedModuleBasis basis(d4, beta, 5, cfg.basis_cap);
                for (const auto& m : monos2) {
                    NPointProblem p;
                    p.lattice = &d4;
                    p.beta = beta;
                    p.insertions = {Insertion{m, LatticeVector{{0, 0}}, false, Cplx(0, 0)}};
                    p.trunc = 24 * 6;
                    p.inv_cap = cfg.inv_cap;
                    auto closed = npoint_full(p).qseries_rational();
                    auto brute = brute_trace<Rational>(m, basis);
                    long t = std::min(closed.trunc(), brute.trunc());
                    ok = ok && (closed.truncated(t) - brute.truncated(t)).is_structurally_zero();
                }
            }
            rep.add("rank2-modules-exact-mode-sum-4", exact_residual(ok), 0.0);
        }
    });
}

namespace {

FockMonomial random_monomial(Rng& rng, int dir, long budget, long max_mode, bool nonempty) {
    FockMonomial m;
    long used = 0;
    long count = rng.uniform(nonempty ? 1 : 0, 3);
    for (long i = 0; i < count; ++i) {
        long mode = rng.uniform(1, max_mode);
        if (used + mode > budget) break;
        m.push_back({dir, mode, 1});
        used += mode;
    }
    if (nonempty && m.empty()) m.push_back({dir, 1, 1});
    return normalize_monomial(m);
}

}  // namespace

SuiteReport verify_zhu(const RunConfig& cfg) {
    return timed("zhu", [&](SuiteReport& rep) {
        LatticeData g4 = make_lattice({{4}});
        LatticeData d4 = make_lattice({{4, 0}, {0, 4}});
        LatticeData g2 = make_lattice({{2}});
        for (int i = 0; i < 50; ++i) {
            Rng rng(cfg.seed + 0x51ed270b * static_cast<std::uint64_t>(i + 1));
            int kind = i % 5;
            NPointProblem p;
            p.inv_cap = cfg.inv_cap;
            p.threads = cfg.threads;
            std::string id = "case-" + std::to_string(i);
            int dir = 1;
            if (kind == 0) {
                // rational, one point, possibly rank 2 and charged module
                bool rank2 = i % 2 == 0;
                p.lattice = rank2 ? &d4 : &g4;
                int l = rank2 ? 2 : 1;
                p.beta = rank2 ? LatticeVector{{rng.uniform(0, 1), rng.uniform(0, 1)}}
                               : LatticeVector{{rng.uniform(0, 1)}};
                dir = static_cast<int>(rng.uniform(1, l));
                FockMonomial v = random_monomial(rng, dir, 5, 4, true);
                if (rank2) {
                    auto extra = random_monomial(rng, 3 - dir, 4, 4, false);
                    for (auto& mp : extra) v.push_back(mp);
                    v = normalize_monomial(v);
                }
                p.insertions = {Insertion{v, LatticeVector{std::vector<long>(l, 0)}, false,
                                          Cplx(0, 0)}};
                p.trunc = 120;
                p.zorder = 8;
                id += "-rational-1pt";
            } else if (kind == 1) {
                // rational, two point, pure boson or charged module over gram [4]
                p.lattice = &g4;
                p.beta = LatticeVector{{rng.uniform(0, 1)}};
                FockMonomial v1 = random_monomial(rng, 1, 4, 4, true);
                FockMonomial v2 = random_monomial(rng, 1, 6 - monomial_degree(v1), 4, false);
                p.insertions = {Insertion{v1, LatticeVector{{0}}, true, Cplx(0, 0)},
                                Insertion{v2, LatticeVector{{0}}, false, Cplx(0, 0)}};
                p.trunc = 120;
                p.zorder = 8;
                id += "-rational-2pt";
            } else if (kind == 2) {
                // rational, two point, lattice charges
                p.lattice = &g4;
                p.beta = LatticeVector{{rng.uniform(-1, 1)}};
                long a = rng.uniform(1, 1);
                FockMonomial v1 = random_monomial(rng, 1, 4, 4, true);
                FockMonomial v2 = random_monomial(rng, 1, 4, 3, false);
                p.insertions = {Insertion{v1, LatticeVector{{a}}, true, Cplx(0, 0)},
                                Insertion{v2, LatticeVector{{-a}}, false, Cplx(0, 0)}};
                p.trunc = 120;
                p.zorder = 8;
                id += "-rational-lattice-2pt";
            } else if (kind == 3) {
                // formal tau, three numeric positions
                p.lattice = &g2;
                p.beta = LatticeVector{{rng.uniform(0, 1)}};
                FockMonomial v1 = random_monomial(rng, 1, 3, 3, true);
                FockMonomial v2 = random_monomial(rng, 1, 2, 2, false);
                FockMonomial v3 = random_monomial(rng, 1, 1, 1, false);
                p.insertions = {
                    Insertion{v1, LatticeVector{{0}}, false, Cplx(0.31, 0.12)},
                    Insertion{v2, LatticeVector{{0}}, false, Cplx(-0.42, 0.40)},
                    Insertion{v3, LatticeVector{{0}}, false, Cplx(0.11, -0.35)}};
                p.trunc = 96;
                id += "-formal-tau-3pt";
            } else {
                // fully numeric, lattice charges
                p.lattice = &g2;
                p.tau_formal = false;
                p.tau = i % 2 == 0 ? Cplx(0.3, 1.1) : Cplx(0.0, 1.0);
                p.beta = LatticeVector{{1}};
                FockMonomial v1 = random_monomial(rng, 1, 3, 3, true);
                p.insertions = {Insertion{v1, LatticeVector{{1}}, false, Cplx(0.31, 0.12)},
                                Insertion{{}, LatticeVector{{-1}}, false, Cplx(-0.52, 0.44)}};
                id += "-numeric-lattice-2pt";
            }
            // mode to split off: a factor of v1 in the chosen direction
            long P = 0;
            for (const auto& mp : p.insertions[0].state)
                if (mp.dir == dir) P = mp.mode;
            if (P == 0) {
                dir = p.insertions[0].state.front().dir;
                P = p.insertions[0].state.front().mode;
            }
            NPointResult r = zhu_recursion_residual(p, dir, P);
            if (r.mode == EvalMode::Rational) {
                rep.add(id, exact_residual(r.zq.is_structurally_zero()), 0.0);
            } else if (r.mode == EvalMode::FormalCplx) {
                NPointResult lhs = npoint_full(p);
                double scale = std::max(1.0, lhs.zc.max_abs());
                rep.add(id, r.zc.max_abs() / scale, 1e-9);
            } else {
                NPointResult lhs = npoint_full(p);
                double scale = std::max(1.0, std::abs(lhs.value));
                rep.add(id, std::abs(r.value) / scale, 1e-9);
            }
        }
    });
}

SuiteReport verify_generating(const RunConfig& cfg) {
    return timed("generating", [&](SuiteReport& rep) {
        (void)cfg;
        LatticeData g4 = make_lattice({{4}});
        for (const auto& beta : {LatticeVector{{1}}, LatticeVector{{-1}}, LatticeVector{{2}}}) {
            auto c = check_module_exponential_identity(g4, beta, 6, 168);
            rep.add("module-exponential-beta-" + std::to_string(beta.coords[0]),
                    exact_residual(c.exact_equal), 0.0);
        }
        LatticeData g2 = make_lattice({{2}});
        struct Case {
            std::vector<Rational> lambdas;
            const char* id;
        };
        std::vector<Case> cases = {
            {{Rational(1), Rational(-1)}, "prime-form-n2-lambda-1--1"},
            {{Rational(3, 2), Rational(-3, 2)}, "prime-form-n2-lambda-3/2--3/2"},
            {{Rational(1), Rational(1), Rational(-2)}, "prime-form-n3-lambda-1-1--2"},
            {{Rational(1, 2), Rational(1), Rational(-3, 2)}, "prime-form-n3-lambda-1/2-1--3/2"},
        };
        for (const auto& c : cases) {
            auto r = check_prime_form_product_identity(g2, c.lambdas, 6, 144);
            rep.add(c.id, exact_residual(r.exact_equal), 0.0);
        }
    });
}

namespace {

Cplx numeric_value(const NPointProblem& p) { return npoint_full(p, EvalMode::Numeric).value; }

}  // namespace

SuiteReport verify_elliptic(const RunConfig& cfg) {
    return timed("elliptic", [&](SuiteReport& rep) {
        const double tol = 1e-8;
        LatticeData g2 = make_lattice({{2}});
        LatticeData d2 = make_lattice({{2, 0}, {0, 2}});
        for (Cplx tau : {Cplx(0.3, 1.1), Cplx(0.0, 1.0)}) {
            std::string tag = tau.real() == 0.0 ? "tau-i" : "tau-0.3+1.1i";
            // rank-1 pure-lattice two point
            for (long b : {0L, 1L}) {
                NPointProblem p;
                p.lattice = &g2;
                p.tau_formal = false;
                p.tau = tau;
                p.beta = {{b}};
                p.insertions = {Insertion{{}, LatticeVector{{1}}, false, Cplx(0.41, 0.23)},
                                Insertion{{}, LatticeVector{{-1}}, false, Cplx(0.0, 0.0)}};
                Cplx base = numeric_value(p);
                std::string cid = tag + "-2pt-beta" + std::to_string(b);

                NPointProblem ps = p;
                std::swap(ps.insertions[0], ps.insertions[1]);
                rep.add(cid + "-permutation", std::abs(numeric_value(ps) / base - 1.0), tol);

                NPointProblem pt = p;
                for (auto& ins : pt.insertions) ins.z += Cplx(0.17, -0.31);
                rep.add(cid + "-translation", std::abs(numeric_value(pt) / base - 1.0), tol);

                rep.add(cid + "-period-2pii",
                        std::abs(quasi_periodicity_ratio(p, 0, Cplx(0.0, kTwoPi)) - 1.0), tol);

                // multiplier q^{(a,a)/2 + (a,beta)} q_1^{(a,a)} with z_2 = 0
                Cplx got = quasi_periodicity_ratio(p, 0, Cplx(0.0, kTwoPi) * tau);
                long aa = 2, ab = 2 * b;
                Cplx mult = std::exp(Cplx(0.0, kTwoPi) * tau * (aa / 2.0 + static_cast<double>(ab))) *
                            std::exp(static_cast<double>(aa) * p.insertions[0].z);
                rep.add(cid + "-quasi-period-multiplier", std::abs(got / mult - 1.0), tol);
            }
            // rank-2 three point with orthogonal first pair and third point at 0
            {
                NPointProblem p;
                p.lattice = &d2;
                p.tau_formal = false;
                p.tau = tau;
                p.beta = {{1, 0}};
                p.insertions = {
                    Insertion{{}, LatticeVector{{1, 0}}, false, Cplx(0.41, 0.23)},
                    Insertion{{}, LatticeVector{{0, 1}}, false, Cplx(-0.52, 0.34)},
                    Insertion{{}, LatticeVector{{-1, -1}}, false, Cplx(0.0, 0.0)}};
                Cplx base = numeric_value(p);
                std::string cid = tag + "-rank2-3pt";

                NPointProblem ps = p;
                std::swap(ps.insertions[0], ps.insertions[1]);
                rep.add(cid + "-permutation", std::abs(numeric_value(ps) / base - 1.0), tol);

                NPointProblem pt = p;
                for (auto& ins : pt.insertions) ins.z += Cplx(-0.21, 0.12);
                rep.add(cid + "-translation", std::abs(numeric_value(pt) / base - 1.0), tol);

                rep.add(cid + "-period-2pii",
                        std::abs(quasi_periodicity_ratio(p, 1, Cplx(0.0, kTwoPi)) - 1.0), tol);

                Cplx got = quasi_periodicity_ratio(p, 0, Cplx(0.0, kTwoPi) * tau);
                long aa = 2, ab = d2.inner(p.insertions[0].alpha, p.beta);
                Cplx mult = std::exp(Cplx(0.0, kTwoPi) * tau * (aa / 2.0 + static_cast<double>(ab))) *
                            std::exp(static_cast<double>(aa) * p.insertions[0].z);
                rep.add(cid + "-quasi-period-multiplier", std::abs(got / mult - 1.0), tol);
            }
            // boson states: Q_N path must stay invariant too
            {
                NPointProblem p;
                p.lattice = &g2;
                p.tau_formal = false;
                p.tau = tau;
                p.beta = {{1}};
                p.insertions = {Insertion{{{1, 1, 1}}, LatticeVector{{0}}, false, Cplx(0.37, 0.29)},
                                Insertion{{{1, 1, 1}}, LatticeVector{{0}}, false, Cplx(-0.44, -0.18)}};
                Cplx base = numeric_value(p);
                std::string cid = tag + "-boson-2pt";
                NPointProblem ps = p;
                std::swap(ps.insertions[0], ps.insertions[1]);
                rep.add(cid + "-permutation", std::abs(numeric_value(ps) / base - 1.0), tol);
                NPointProblem pt = p;
                for (auto& ins : pt.insertions) ins.z += Cplx(0.08, 0.21);
                rep.add(cid + "-translation", std::abs(numeric_value(pt) / base - 1.0), tol);
                rep.add(cid + "-period-2pii",
                        std::abs(quasi_periodicity_ratio(p, 0, Cplx(0.0, kTwoPi)) - 1.0), tol);
                Cplx got = quasi_periodicity_ratio(p, 0, Cplx(0.0, kTwoPi) * tau);
                rep.add(cid + "-quasi-period-trivial-multiplier", std::abs(got - 1.0), tol);
            }
        }
        // the general tau-shift law carries cross factors prod_j q_j^{(a_i,a_j)}
        {
            Cplx tau(0.3, 1.1);
            NPointProblem p;
            p.lattice = &g2;
            p.tau_formal = false;
            p.tau = tau;
            p.beta = {{1}};
            p.insertions = {Insertion{{}, LatticeVector{{1}}, false, Cplx(0.41, 0.23)},
                            Insertion{{}, LatticeVector{{1}}, false, Cplx(-0.52, 0.34)},
                            Insertion{{}, LatticeVector{{-2}}, false, Cplx(0.18, -0.27)}};
            Cplx got = quasi_periodicity_ratio(p, 0, Cplx(0.0, kTwoPi) * tau);
            long aa = 2;
            long ab = 2;  // (alpha_1, beta)
            Cplx mult = std::exp(Cplx(0.0, kTwoPi) * tau * (aa / 2.0 + static_cast<double>(ab))) *
                        std::exp(static_cast<double>(aa) * p.insertions[0].z);
            for (int j = 1; j < 3; ++j) {
                long aij = g2.inner(p.insertions[0].alpha,
                                    p.insertions[static_cast<size_t>(j)].alpha);
                mult *= std::exp(static_cast<double>(aij) * p.insertions[static_cast<size_t>(j)].z);
            }
            rep.add("general-multiplier-with-cross-factors", std::abs(got / mult - 1.0), 1e-8);
        }
        (void)cfg;
    });
}

SuiteReport verify_laurent(const RunConfig& cfg) {
    return timed("laurent", [&](SuiteReport& rep) {
        (void)cfg;
        // currents: z^{-2} coefficient of the 2-point equals the 0-point
        LatticeData g4 = make_lattice({{4}});
        for (long b : {0L, 1L}) {
            NPointProblem p;
            p.lattice = &g4;
            p.beta = {{b}};
            p.insertions = {Insertion{{{1, 1, 1}}, LatticeVector{{0}}, true, Cplx(0, 0)},
                            Insertion{{{1, 1, 1}}, LatticeVector{{0}}, false, Cplx(0, 0)}};
            p.trunc = 192;
            p.zorder = 8;
            NPointResult r = npoint_full(p);
            NPointProblem zero;
            zero.lattice = &g4;
            zero.beta = {{b}};
            zero.insertions = {Insertion{{}, LatticeVector{{0}}, false, Cplx(0, 0)}};
            zero.trunc = 192;
            QSeries<Rational> zpt = npoint_full(zero).qseries_rational();
            const QSeries<Rational>* c2 = r.zq.coeff_ptr(-2);
            bool ok = c2 != nullptr;
            if (ok) {
                long t = std::min(c2->trunc(), zpt.trunc());
                ok = (c2->truncated(t) - zpt.truncated(t)).is_structurally_zero();
            }
            rep.add("current-2pt-z^-2-coefficient-is-0pt-beta" + std::to_string(b),
                    exact_residual(ok), 0.0);
            rep.add("current-2pt-z^-1-coefficient-vanishes-beta" + std::to_string(b),
                    exact_residual(r.zq.coeff_ptr(-1) == nullptr), 0.0);
        }
        // lattice states: leading exponent (alpha_1, alpha_2), coefficient
        // eps(alpha_1,alpha_2) times the merged one-point
        struct LatCase {
            LatticeData lat;
            LatticeVector alpha, beta;
            const char* id;
        };
        std::vector<LatCase> cases;
        cases.push_back({make_lattice({{2}}), {{1}}, {{1}}, "lattice-2pt-rank1"});
        cases.push_back({make_lattice({{2, -1}, {-1, 2}}), {{1, 0}}, {{0, 0}}, "lattice-2pt-rank2"});
        for (auto& c : cases) {
            NPointProblem p;
            p.lattice = &c.lat;
            p.beta = c.beta;
            p.insertions = {Insertion{{}, c.alpha, true, Cplx(0, 0)},
                            Insertion{{}, -c.alpha, false, Cplx(0, 0)}};
            p.trunc = 192;
            p.zorder = 6;
            NPointResult r = npoint_full(p);
            long expect_lead = c.lat.inner(c.alpha, -c.alpha);
            rep.add(std::string(c.id) + "-leading-exponent",
                    exact_residual(r.zq.lead() == expect_lead), 0.0);
            NPointProblem merged;
            merged.lattice = &c.lat;
            merged.beta = c.beta;
            merged.insertions = {
                Insertion{{}, LatticeVector{std::vector<long>(c.alpha.coords.size(), 0)}, false,
                          Cplx(0, 0)}};
            merged.trunc = 192;
            QSeries<Rational> one = npoint_full(merged).qseries_rational();
            int eps = c.lat.cocycle(c.alpha, -c.alpha);
            const QSeries<Rational>* lead = r.zq.coeff_ptr(expect_lead);
            bool ok = lead != nullptr;
            if (ok) {
                QSeries<Rational> expect = one.scaled(Rational(eps));
                long t = std::min(lead->trunc(), expect.trunc());
                ok = (lead->truncated(t) - expect.truncated(t)).is_structurally_zero();
            }
            rep.add(std::string(c.id) + "-leading-coefficient", exact_residual(ok), 0.0);
        }
    });
}

SuiteReport verify_theta(const RunConfig& cfg) {
    return timed("theta", [&](SuiteReport& rep) {
        (void)cfg;
        struct Case {
            LatticeData lat;
            LatticeVector alpha;
            const char* id;
        };
        std::vector<Case> cases;
        cases.push_back({make_lattice({{2}}), {{1}}, "rank1-gram2"});
        cases.push_back({make_lattice({{2, -1}, {-1, 2}}), {{1, 0}}, "rank2-A2"});
        const long T = 2 + 24 * 6;  // compare through q^5 with margin
        const long Z = 10;
        for (auto& c : cases) {
            int l = c.lat.rank();
            long aa = c.lat.norm(c.alpha);
            auto vectors = enumerate_lattice_vectors(c.lat, 12);
            ZSeries<QSeries<Rational>> sum = ZSeries<QSeries<Rational>>::zero(1L << 40);
            for (const auto& beta : vectors) {
                NPointProblem p;
                p.lattice = &c.lat;
                p.beta = beta;
                p.insertions = {Insertion{{}, c.alpha, true, Cplx(0, 0)},
                                Insertion{{}, -c.alpha, false, Cplx(0, 0)}};
                p.trunc = T + 24;
                p.zorder = Z + static_cast<long>(aa);
                sum = sum + npoint_full(p).zq;
            }
            // sum * eta^l * K^{(alpha,alpha)} must equal the theta series
            auto etal = eta_series(T + 24).pow(l);
            auto kpow = prime_form_series<Rational>(Z + aa, T + 24).pow(aa);
            std::vector<ZSeries<QSeries<Rational>>::Term> scaled;
            for (const auto& [e, q] : sum.terms()) scaled.emplace_back(e, q * etal);
            auto lhs = ZSeries<QSeries<Rational>>::from_terms(std::move(scaled), sum.ztrunc()) * kpow;
            auto theta = theta_lattice(c.lat, c.alpha, 6, Z, T);
            bool ok = true;
            for (long e = 0; e < Z; ++e) {
                const QSeries<Rational>* a = lhs.coeff_ptr(e);
                const QSeries<Rational>* b = theta.coeff_ptr(e);
                long t = std::min({a ? a->trunc() : (1L << 40), b ? b->trunc() : (1L << 40), T});
                QSeries<Rational> qa = a ? a->truncated(t) : QSeries<Rational>::zero(t);
                QSeries<Rational> qb = b ? b->truncated(t) : QSeries<Rational>::zero(t);
                ok = ok && (qa - qb).is_structurally_zero();
            }
            rep.add(std::string("module-sum-equals-theta-over-eta-K-") + c.id,
                    exact_residual(ok), 1e-9);
        }
    });
}

SuiteReport verify_fourier(const RunConfig& cfg) {
    return timed("fourier", [&](SuiteReport& rep) {
        (void)cfg;
        LatticeData g2 = make_lattice({{2}});
        Cplx tau(0.3, 1.1);
        auto deleted = [](const NPointProblem& p, int i) {
            NPointProblem q = p;
            q.insertions.erase(q.insertions.begin() + i);
            return q;
        };
        struct Case {
            int n;
            long beta;
            const char* id;
        };
        std::vector<Case> cases = {{1, 1, "n1-beta1"}, {2, 0, "n2-beta0"},
                                   {2, 1, "n2-beta1"}, {3, 1, "n3-beta1"}};
        // spectators sit far from the vertical integration path through z_1:
        // the trapezoid error decays like exp(-distance * samples)
        const Cplx zs[3] = {Cplx(0.37, 0.41), Cplx(-0.83, 0.40), Cplx(1.65, -0.30)};
        for (const auto& c : cases) {
            NPointProblem p;
            p.lattice = &g2;
            p.tau_formal = false;
            p.tau = tau;
            p.beta = {{c.beta}};
            for (int i = 0; i < c.n; ++i)
                p.insertions.push_back(Insertion{{{1, 1, 1}}, LatticeVector{{0}}, false, zs[i]});
            Cplx i64 = fourier_normalization(p, 0, 64);
            Cplx i128 = fourier_normalization(p, 0, 128);
            Cplx expect = c.n == 1
                              ? Cplx(g2.pairing(1, p.beta), 0.0) *
                                    numeric_value([&] {
                                        NPointProblem q = deleted(p, 0);
                                        q.insertions.push_back(Insertion{
                                            {}, LatticeVector{{0}}, false, Cplx(0.0, 0.0)});
                                        return q;
                                    }())
                              : Cplx(g2.pairing(1, p.beta), 0.0) * numeric_value(deleted(p, 0));
            double scale = std::max(1.0, std::abs(expect));
            double resid = std::max(std::abs(i64 - expect), std::abs(i64 - i128)) / scale;
            rep.add(std::string("integral-normalization-") + c.id, resid, 1e-8);
        }
    });
}

SuiteReport verify_combinatorics(const RunConfig& cfg) {
    return timed("combinatorics", [&](SuiteReport& rep) {
        // telephone numbers and double factorials through size 12
        std::vector<std::uint64_t> tel{1, 1};
        for (int n = 2; n <= 12; ++n)
            tel.push_back(tel[static_cast<size_t>(n - 1)] +
                          static_cast<std::uint64_t>(n - 1) * tel[static_cast<size_t>(n - 2)]);
        bool ok = true;
        for (int n = 0; n <= 12; ++n) {
            LabelledSet s;
            for (int i = 0; i < n; ++i) s.elements.push_back({1, 1, 1, i});
            if (n <= 10) ok = ok && count_involutions(s, cfg.inv_cap) == tel[static_cast<size_t>(n)];
            std::uint64_t df = 1;
            for (int k = n - 1; k > 0; k -= 2) df *= static_cast<std::uint64_t>(k);
            std::uint64_t expect = n % 2 == 0 ? df : 0;
            ok = ok && count_fpf(s, cfg.inv_cap) == expect;
        }
        rep.add("involution-and-fpf-counts-size-le-12", exact_residual(ok), 0.0);

        // 1/|Aut| class sums against labelled sums
        auto xweight = [](const Matching& m) {
            Rational r(1);
            for (const auto& [lab, mult] : m.edges) {
                Rational x = Rational(3 * lab.first + 1, 2) + Rational(lab.second * lab.second, 7);
                r *= Rational::pow(x, mult);
            }
            return r;
        };
        std::vector<std::vector<long>> profiles = {
            {1, 1, 2, 2}, {1, 1, 1, 1, 2, 2}, {2, 2, 2, 2}, {1, 1, 1, 3, 3, 5}, {1, 1, 2, 2, 3, 3}};
        bool all_ok = true;
        for (const auto& labels : profiles) {
            LabelledSet s;
            int uid = 0;
            for (long l : labels) s.elements.push_back({1, 1, l, uid++});
            Rational labelled(0);
            std::map<std::vector<std::pair<long, long>>, Matching> classes;
            enumerate_fpf(s, cfg.inv_cap, [&](const Involution& inv) {
                Matching m = Matching::from_involution(s, inv);
                labelled += xweight(m);
                std::vector<std::pair<long, long>> key;
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
            all_ok = all_ok && class_sum == labelled / perm;
        }
        rep.add("aut-weighted-class-sum-equals-labelled-sum", exact_residual(all_ok), 0.0);
    });
}

std::vector<std::string> verify_suite_names() {
    return {"foundations", "primeform", "oracle",  "zhu",     "generating",
            "elliptic",    "laurent",   "theta",   "fourier", "combinatorics"};
}

SuiteReport run_verify_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "foundations") return verify_foundations(cfg);
    if (name == "primeform") return verify_primeform(cfg);
    if (name == "oracle") return verify_oracle(cfg);
    if (name == "zhu") return verify_zhu(cfg);
    if (name == "generating") return verify_generating(cfg);
    if (name == "elliptic") return verify_elliptic(cfg);
    if (name == "laurent") return verify_laurent(cfg);
    if (name == "theta") return verify_theta(cfg);
    if (name == "fourier") return verify_fourier(cfg);
    if (name == "combinatorics") return verify_combinatorics(cfg);
    throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace tnpf
