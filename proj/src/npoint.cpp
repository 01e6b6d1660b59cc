#include "tnpf/npoint.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

namespace tnpf {

void NPointProblem::validate() const {
    if (lattice == nullptr) throw std::invalid_argument("NPointProblem: no lattice");
    if (static_cast<int>(beta.coords.size()) != lattice->rank())
        throw std::invalid_argument("NPointProblem: beta rank mismatch");
    LatticeVector sum{std::vector<long>(static_cast<size_t>(lattice->rank()), 0)};
    for (const auto& ins : insertions) {
        if (static_cast<int>(ins.alpha.coords.size()) != lattice->rank())
            throw std::invalid_argument("NPointProblem: alpha rank mismatch");
        for (const auto& mp : ins.state)
            if (mp.dir < 1 || mp.dir > lattice->rank())
                throw std::invalid_argument("NPointProblem: state direction out of range");
        sum = sum + ins.alpha;
    }
    if (!sum.is_zero())
        throw std::invalid_argument("NPointProblem: lattice charges must sum to zero");
    (void)formal_index();
    if (!tau_formal && !(tau.imag() > 0.0))
        throw std::invalid_argument("NPointProblem: tau must lie in the upper half plane");
}

const char* eval_mode_name(EvalMode m) {
    switch (m) {
        case EvalMode::Rational: return "rational";
        case EvalMode::FormalCplx: return "complex-q";
        case EvalMode::Numeric: return "numeric";
    }
    return "?";
}

EvalMode select_mode(const NPointProblem& p) {
    if (!p.tau_formal) return EvalMode::Numeric;
    bool positions_ok = true;
    for (const auto& ins : p.insertions)
        if (!ins.formal && ins.z != Cplx(0.0, 0.0)) positions_ok = false;
    bool need_pairings = false;
    bool any_alpha = !p.beta.is_zero();
    for (const auto& ins : p.insertions)
        if (!ins.alpha.is_zero()) any_alpha = true;
    for (const auto& ins : p.insertions)
        if (!ins.state.empty() && any_alpha) need_pairings = true;
    bool pairings_ok = !need_pairings || p.lattice->has_exact_pairings();
    return positions_ok && pairings_ok ? EvalMode::Rational : EvalMode::FormalCplx;
}

QSeries<Rational> NPointResult::qseries_rational() const {
    if (mode != EvalMode::Rational) throw std::logic_error("result is not rational");
    if (has_formal_z) throw std::logic_error("result has a formal variable");
    return zq.coeff_or(0, QSeries<Rational>::zero(zq.ztrunc() > 0 ? (1L << 40) : (1L << 40)));
}

QSeries<Cplx> NPointResult::qseries_cplx() const {
    if (mode == EvalMode::Numeric) throw std::logic_error("result is numeric");
    if (has_formal_z) throw std::logic_error("result has a formal variable");
    if (mode == EvalMode::Rational) return to_cplx(qseries_rational());
    return zc.coeff_or(0, QSeries<Cplx>::zero(1L << 40));
}

// --- RationalCtx ------------------------------------------------------------

RationalCtx::RationalCtx(const NPointProblem& p)
    : p_(&p), lat_(p.lattice), T_(p.trunc), Z_(p.zorder) {
    pos_.reserve(p.insertions.size());
    for (const auto& ins : p.insertions) {
        if (ins.formal)
            pos_.push_back(Pos::Formal);
        else if (ins.z == Cplx(0.0, 0.0))
            pos_.push_back(Pos::Zero);
        else
            throw std::domain_error("rational mode requires every position to be formal or 0");
    }
}

RationalCtx::Value RationalCtx::d_value(long r, long s, int i, int j) const {
    if (pos(i) == Pos::Formal && pos(j) == Pos::Zero) return d_coeff<Rational>(r, s, Z_, T_);
    if (pos(i) == Pos::Zero && pos(j) == Pos::Formal)
        return detail::z_parity_flip(d_coeff<Rational>(r, s, Z_, T_));
    throw pole_error("coincident insertion points (both at z = 0)");
}

RationalCtx::Value RationalCtx::exp_beta_z(int i, long c) const {
    if (pos(i) == Pos::Zero) return v_one();
    std::vector<Value::Term> terms;
    Rational p(1);
    for (long m = 0; m < Z_; ++m) {
        terms.emplace_back(m, S::monomial(0, p, T_));
        p *= Rational(c, m + 1);
    }
    return Value::from_terms(std::move(terms), Z_);
}

RationalCtx::Value RationalCtx::prime_pow(int i, int j, long e) const {
    if (e == 0) return v_one();
    if (pos(i) == Pos::Zero && pos(j) == Pos::Zero)
        throw pole_error("coincident insertion points (both at z = 0)");
    Value k = prime_form_series<Rational>(Z_, T_);
    if (pos(i) == Pos::Zero) k = detail::z_parity_flip(k);  // K(-z) = -K(z)
    return k.pow(e);
}

RationalCtx::S RationalCtx::module_prefactor() const {
    long h24 = 12 * lat_->norm(p_->beta);
    return eta_series(T_).pow(-lat_->rank()).mul_monomial(h24, Rational(1));
}

// --- CplxFormalCtx ----------------------------------------------------------

CplxFormalCtx::CplxFormalCtx(const NPointProblem& p)
    : p_(&p), lat_(p.lattice), T_(p.trunc), Z_(p.zorder), formal_(p.formal_index()) {
    z_.reserve(p.insertions.size());
    for (const auto& ins : p.insertions) z_.push_back(ins.formal ? Cplx(0.0, 0.0) : ins.z);
    ek_.reserve(static_cast<size_t>(NumericContext::kmax) + 1);
    ek_.push_back(QSeries<Cplx>::zero(T_));
    for (long k = 1; k <= NumericContext::kmax; ++k) ek_.push_back(to_cplx(eisenstein(k, T_)));
}

CplxFormalCtx::S CplxFormalCtx::c_value(long r, long s) const {
    Rational pre = cd_prefactor(r, s);
    return ek(s == 0 ? r : r + s).scaled(Cplx(pre.to_double(), 0.0));
}

CplxFormalCtx::S CplxFormalCtx::pn_scalar(long n, Cplx z0) const {
    if (std::abs(z0) < 1e-9) throw pole_error("P_n pole: coincident numeric positions");
    if (std::abs(z0) > kZWindow)
        throw std::domain_error("numeric position outside the formal-tau evaluation window");
    Cplx zp = std::pow(z0, static_cast<double>(-n));
    S acc = S::monomial(0, zp, T_);
    double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (long k = 2; k <= NumericContext::kmax; k += 2) {
        double b = 1.0;
        for (long j = 1; j <= n - 1; ++j) b *= static_cast<double>(k - j) / static_cast<double>(j);
        Cplx c = sign * b * std::pow(z0, static_cast<double>(k - n));
        acc = acc + ek(k).scaled(c);
    }
    return acc;
}

CplxFormalCtx::S CplxFormalCtx::prime_form_scalar(Cplx z0) const {
    if (std::abs(z0) > kZWindow)
        throw std::domain_error("numeric position outside the formal-tau evaluation window");
    S arg = S::zero(T_);
    Cplx zk = z0 * z0;
    for (long k = 2; k <= NumericContext::kmax; ++k) {
        if (k % 2 == 0) arg = arg + ek(k).scaled(-zk / static_cast<double>(k));
        zk *= z0;
    }
    return arg.exp().scaled(z0);
}

CplxFormalCtx::Value CplxFormalCtx::d_value(long r, long s, int i, int j) const {
    Rational pre = cd_prefactor(r, s);
    long n = s == 0 ? r : r + s;
    bool fi = p_->insertions[static_cast<size_t>(i)].formal;
    bool fj = p_->insertions[static_cast<size_t>(j)].formal;
    if (!fi && !fj) {
        Cplx dz = z_[static_cast<size_t>(i)] - z_[static_cast<size_t>(j)];
        return v_scalar(pn_scalar(n, dz).scaled(Cplx(pre.to_double(), 0.0)));
    }
    if (fi && fj) throw std::logic_error("two formal positions");
    Cplx c = fi ? z_[static_cast<size_t>(j)] : z_[static_cast<size_t>(i)];
    if (c == Cplx(0.0, 0.0)) {
        auto series = d_coeff<Cplx>(r, s, Z_, T_);
        return fi ? series : detail::z_parity_flip(series);
    }
    // P_n(zeta - c) = sum_m (-1)^m binom(n+m-1, m) P_{n+m}(-c) zeta^m   (i formal)
    // P_n(c - zeta) = sum_m        binom(n+m-1, m) P_{n+m}(c)  zeta^m   (j formal)
    std::vector<Value::Term> terms;
    for (long m = 0; m < Z_; ++m) {
        Rational b = Rational::binomial(n + m - 1, m) * pre;
        if (m % 2 == 1 && fi) b = -b;
        S coeff = pn_scalar(n + m, fi ? -c : c).scaled(Cplx(b.to_double(), 0.0));
        terms.emplace_back(m, std::move(coeff));
    }
    return Value::from_terms(std::move(terms), Z_);
}

CplxFormalCtx::Value CplxFormalCtx::exp_beta_z(int i, long c) const {
    if (p_->insertions[static_cast<size_t>(i)].formal) {
        std::vector<Value::Term> terms;
        Rational p(1);
        for (long m = 0; m < Z_; ++m) {
            terms.emplace_back(m, S::monomial(0, Cplx(p.to_double(), 0.0), T_));
            p *= Rational(c, m + 1);
        }
        return Value::from_terms(std::move(terms), Z_);
    }
    Cplx v = std::exp(static_cast<double>(c) * z_[static_cast<size_t>(i)]);
    return v_scalar(S::monomial(0, v, T_));
}

CplxFormalCtx::Value CplxFormalCtx::prime_pow(int i, int j, long e) const {
    if (e == 0) return v_one();
    bool fi = p_->insertions[static_cast<size_t>(i)].formal;
    bool fj = p_->insertions[static_cast<size_t>(j)].formal;
    if (!fi && !fj) {
        Cplx dz = z_[static_cast<size_t>(i)] - z_[static_cast<size_t>(j)];
        if (std::abs(dz) < 1e-9 && e < 0)
            throw pole_error("prime form pole: coincident numeric positions");
        return v_scalar(prime_form_scalar(dz).pow(e));
    }
    Cplx c = fi ? z_[static_cast<size_t>(j)] : z_[static_cast<size_t>(i)];
    if (c != Cplx(0.0, 0.0))
        throw std::invalid_argument(
            "prime-form powers between a formal and a nonzero numeric position are not supported");
    Value k = prime_form_series<Cplx>(Z_, T_);
    if (!fi) k = detail::z_parity_flip(k);
    return k.pow(e);
}

CplxFormalCtx::S CplxFormalCtx::module_prefactor() const {
    long h24 = 12 * lat_->norm(p_->beta);
    return to_cplx(eta_series(T_)).pow(-lat_->rank()).mul_monomial(h24, Cplx(1.0, 0.0));
}

// --- NumericEngineCtx -------------------------------------------------------

NumericEngineCtx::NumericEngineCtx(const NPointProblem& p)
    : p_(&p), lat_(p.lattice), num_(p.tau) {
    if (p.tau_formal) throw std::invalid_argument("numeric mode requires numeric tau");
    for (const auto& ins : p.insertions) {
        if (ins.formal) throw std::invalid_argument("numeric mode requires numeric positions");
        z_.push_back(ins.z);
    }
}

// --- Q_N enumeration --------------------------------------------------------

namespace detail {

template <class Ctx>
std::optional<typename Ctx::Value> singleton_gamma(const NPointProblem& p, Ctx& ctx, int dir,
                                                   const QnElement& el) {
    using Value = typename Ctx::Value;
    Value acc = ctx.v_zero();
    if (el.label == 1 && !p.beta.is_zero()) acc = acc + ctx.v_scalar(ctx.pairing(dir, p.beta));
    const auto& alpha_k = p.insertions[static_cast<size_t>(el.block)].alpha;
    if (!alpha_k.is_zero())
        acc = acc + ctx.v_scalar(ctx.c_value(el.label, 0) * ctx.pairing(dir, alpha_k));
    for (int l = el.block + 1; l < p.n(); ++l) {
        const auto& alpha_l = p.insertions[static_cast<size_t>(l)].alpha;
        if (alpha_l.is_zero()) continue;
        acc = acc + ctx.d_value(el.label, 0, el.block, l).scaled(ctx.pairing(dir, alpha_l));
    }
    if (acc.is_structurally_zero()) return std::nullopt;
    return acc;
}

// Pair weights are resolved lazily: enumeration paths killed by a vanishing
// singleton never request their gamma (and coincident numeric positions only
// fault if an involution actually pairs across them).
template <class Ctx>
struct PairGammaTable {
    using Value = typename Ctx::Value;
    enum class State : char { Unknown, Zero, Set };

    const NPointProblem* p;
    Ctx* ctx;
    const std::vector<QnElement>* elems;
    std::vector<std::vector<State>> state;
    std::vector<std::vector<Value>> val;
    std::mutex mu;

    PairGammaTable(const NPointProblem& prob, Ctx& c, const std::vector<QnElement>& e)
        : p(&prob), ctx(&c), elems(&e) {
        state.assign(e.size(), std::vector<State>(e.size(), State::Unknown));
        val.assign(e.size(), std::vector<Value>(e.size()));
    }

    const Value* get(size_t u, size_t v) {
        std::lock_guard<std::mutex> lock(mu);
        if (state[u][v] == State::Unknown) {
            const auto& a = (*elems)[u];
            const auto& b = (*elems)[v];
            Value g = a.block == b.block
                          ? ctx->v_scalar(ctx->c_value(a.label, b.label))
                          : (a.block < b.block
                                 ? ctx->d_value(a.label, b.label, a.block, b.block)
                                 : ctx->d_value(b.label, a.label, b.block, a.block));
            if (g.is_structurally_zero()) {
                state[u][v] = State::Zero;
            } else {
                val[u][v] = std::move(g);
                state[u][v] = State::Set;
            }
        }
        return state[u][v] == State::Set ? &val[u][v] : nullptr;
    }
};

template <class Ctx>
struct QnEnumerator {
    using Value = typename Ctx::Value;
    PairGammaTable<Ctx>& pair_gamma;
    const std::vector<std::optional<Value>>& single_gamma;
    size_t m;
    std::vector<char> used;
    std::optional<Value> acc;

    void add(const Value& v) {
        if (!acc)
            acc = v;
        else
            acc = *acc + v;
    }

    void rec(size_t from, const Value& running) {
        size_t u = from;
        while (u < m && used[u]) ++u;
        if (u == m) {
            add(running);
            return;
        }
        used[u] = 1;
        for (size_t v = u + 1; v < m; ++v) {
            if (used[v]) continue;
            const Value* g = pair_gamma.get(u, v);
            if (!g) continue;
            used[v] = 1;
            rec(u + 1, running * (*g));
            used[v] = 0;
        }
        if (single_gamma[u]) rec(u + 1, running * (*single_gamma[u]));
        used[u] = 0;
    }
};

template <class Ctx>
typename Ctx::Value qn_direction_sum(const NPointProblem& p, Ctx& ctx,
                                     const std::vector<QnElement>& elems, int dir) {
    using Value = typename Ctx::Value;
    const size_t m = elems.size();
    PairGammaTable<Ctx> pair_gamma(p, ctx, elems);
    std::vector<std::optional<Value>> single_gamma(m);
    for (size_t u = 0; u < m; ++u) single_gamma[u] = singleton_gamma(p, ctx, dir, elems[u]);

    if (m == 0) return ctx.v_one();
    // branch on the fate of element 0; branches can run on worker threads and
    // are reduced in branch order so float results are reproducible
    struct Branch {
        size_t partner;  // m = fixed point
        const Value* gamma;
    };
    std::vector<Branch> branches;
    for (size_t v = 1; v < m; ++v)
        if (const Value* g = pair_gamma.get(0, v)) branches.push_back({v, g});
    if (single_gamma[0]) branches.push_back({m, &*single_gamma[0]});
    if (branches.empty()) return ctx.v_zero();

    std::vector<std::optional<Value>> results(branches.size());
    auto run_branch = [&](size_t bi) {
        QnEnumerator<Ctx> en{pair_gamma, single_gamma, m, std::vector<char>(m, 0), {}};
        en.used[0] = 1;
        const Branch& br = branches[bi];
        if (br.partner < m) en.used[br.partner] = 1;
        en.rec(1, *br.gamma);
        results[bi] = std::move(en.acc);
    };
    int nthreads = std::min<int>(p.threads, static_cast<int>(branches.size()));
    if (nthreads > 1 && m >= 6) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        for (int t = 0; t < nthreads; ++t)
            workers.emplace_back([&] {
                for (size_t bi = next.fetch_add(1); bi < branches.size(); bi = next.fetch_add(1))
                    run_branch(bi);
            });
        for (auto& w : workers) w.join();
    } else {
        for (size_t bi = 0; bi < branches.size(); ++bi) run_branch(bi);
    }
    std::optional<Value> total;
    for (auto& r : results) {
        if (!r) continue;
        total = total ? std::optional<Value>(*total + *r) : r;
    }
    return total ? *total : ctx.v_zero();
}

template typename RationalCtx::Value qn_direction_sum(const NPointProblem&, RationalCtx&,
                                                      const std::vector<QnElement>&, int);
template typename CplxFormalCtx::Value qn_direction_sum(const NPointProblem&, CplxFormalCtx&,
                                                        const std::vector<QnElement>&, int);
template typename NumericEngineCtx::Value qn_direction_sum(const NPointProblem&,
                                                           NumericEngineCtx&,
                                                           const std::vector<QnElement>&, int);

}  // namespace detail

// --- npoint_full ------------------------------------------------------------

namespace {

NPointResult finish_rational(const NPointProblem& p, RationalCtx& ctx,
                             ZSeries<QSeries<Rational>> v, const char* provenance) {
    NPointResult r;
    r.mode = EvalMode::Rational;
    r.has_formal_z = p.formal_index() >= 0;
    r.zq = std::move(v);
    r.provenance = std::string(provenance) + " (rational)";
    (void)ctx;
    return r;
}

NPointResult finish_cplx(const NPointProblem& p, ZSeries<QSeries<Cplx>> v,
                         const char* provenance) {
    NPointResult r;
    r.mode = EvalMode::FormalCplx;
    r.has_formal_z = p.formal_index() >= 0;
    r.zc = std::move(v);
    r.provenance = std::string(provenance) + " (complex-q)";
    return r;
}

NPointResult finish_numeric(ZSeries<Cplx> v, const char* provenance) {
    NPointResult r;
    r.mode = EvalMode::Numeric;
    r.has_formal_z = false;
    const Cplx* c = v.coeff_ptr(0);
    r.value = c ? *c : Cplx(0.0, 0.0);
    r.provenance = std::string(provenance) + " (numeric)";
    return r;
}

}  // namespace

NPointResult npoint_full(const NPointProblem& p, EvalMode mode) {
    p.validate();
    switch (mode) {
        case EvalMode::Rational: {
            RationalCtx ctx(p);
            return finish_rational(p, ctx, npoint_value(p, ctx), "closed formula");
        }
        case EvalMode::FormalCplx: {
            CplxFormalCtx ctx(p);
            return finish_cplx(p, npoint_value(p, ctx), "closed formula");
        }
        case EvalMode::Numeric: {
            NumericEngineCtx ctx(p);
            return finish_numeric(npoint_value(p, ctx), "closed formula");
        }
    }
    throw std::logic_error("unreachable");
}

NPointResult npoint_full(const NPointProblem& p) { return npoint_full(p, select_mode(p)); }

// --- onepoint_module ----------------------------------------------------------

namespace {

template <class K>
QSeries<K> onepoint_module_impl(const LatticeData& lat, const LatticeVector& beta,
                                const FockMonomial& v, long T, std::size_t cap) {
    if (lat.rank() != 1)
        throw std::invalid_argument("onepoint_module: rank-1 route only");
    K abeta;
    if constexpr (field_traits<K>::exact)
        abeta = lat.pairing_exact(1, beta);
    else
        abeta = Cplx(lat.pairing(1, beta), 0.0);

    // Phi as a label multiset; Lambda = label-1 elements. Subsets of Lambda of
    // equal size contribute identically, so they collapse to binomial weights.
    std::vector<long> labels;
    long e1 = 0;
    for (const auto& mp : v) {
        if (mp.dir != 1) throw std::invalid_argument("onepoint_module: rank-1 route only");
        for (int e = 0; e < mp.exp; ++e) {
            if (mp.mode == 1)
                ++e1;
            else
                labels.push_back(mp.mode);
        }
    }
    std::map<std::pair<long, long>, QSeries<K>> c_cache;
    auto cval = [&](long a, long b) -> const QSeries<K>& {
        auto key = std::minmax(a, b);
        auto it = c_cache.find(key);
        if (it == c_cache.end())
            it = c_cache.emplace(key, c_coeff<K>(key.first, key.second, T)).first;
        return it->second;
    };

    QSeries<K> total = QSeries<K>::zero(T);
    K abeta_pow = field_traits<K>::one();
    for (long d = 0; d <= e1; ++d) {
        // |Delta| = d label-1 elements fixed by the involution
        LabelledSet s;
        int uid = 0;
        for (long i = 0; i < e1 - d; ++i) s.elements.push_back({1, 1, 1, uid++});
        for (long l : labels) s.elements.push_back({1, 1, l, uid++});
        QSeries<K> fpf_sum = QSeries<K>::zero(T);
        enumerate_fpf(s, cap, [&](const Involution& inv) {
            QSeries<K> g = QSeries<K>::one(T);
            for (auto [x, y] : inv.pairs)
                g = g * cval(s.elements[static_cast<size_t>(x)].label,
                             s.elements[static_cast<size_t>(y)].label);
            fpf_sum = fpf_sum + g;
        });
        total = total + fpf_sum.scaled(
                            abeta_pow * field_traits<K>::from_rational(Rational::binomial(e1, d)));
        abeta_pow = abeta_pow * abeta;
    }
    long h24 = 12 * lat.norm(beta);
    QSeries<K> pre = eta_series_k<K>(T).pow(-1).mul_monomial(h24, field_traits<K>::one());
    return pre * total;
}

}  // namespace

QSeries<Rational> onepoint_module_rational(const LatticeData& lat, const LatticeVector& beta,
                                           const FockMonomial& v, long trunc, std::size_t cap) {
    return onepoint_module_impl<Rational>(lat, beta, v, trunc, cap);
}

QSeries<Cplx> onepoint_module_cplx(const LatticeData& lat, const LatticeVector& beta,
                                   const FockMonomial& v, long trunc, std::size_t cap) {
    return onepoint_module_impl<Cplx>(lat, beta, v, trunc, cap);
}

// --- current_generating -------------------------------------------------------

namespace {

template <class Ctx>
typename Ctx::Value current_generating_value(const NPointProblem& p, Ctx& ctx) {
    using Value = typename Ctx::Value;
    const int n = p.n();
    // Delta runs over subsets of the n label-1 elements (one per insertion)
    Value total = ctx.v_zero();
    typename Ctx::S abeta = ctx.pairing(1, p.beta);
    bool abeta_zero = p.beta.is_zero();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int d = __builtin_popcount(mask);
        if (abeta_zero && d > 0) continue;
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (!(mask & (1u << i))) rest.push_back(i);
        if (rest.size() % 2 != 0) continue;
        LabelledSet s;
        int uid = 0;
        for (int b : rest) s.elements.push_back({b, 1, 1, uid++});
        std::optional<Value> fsum;
        enumerate_fpf(s, p.inv_cap, [&](const Involution& inv) {
            std::optional<Value> g;
            for (auto [x, y] : inv.pairs) {
                int bi = s.elements[static_cast<size_t>(x)].block;
                int bj = s.elements[static_cast<size_t>(y)].block;
                Value pv = ctx.d_value(1, 1, std::min(bi, bj), std::max(bi, bj));
                g = g ? std::optional<Value>(*g * pv) : std::optional<Value>(pv);
            }
            if (!g) g = ctx.v_one();
            fsum = fsum ? std::optional<Value>(*fsum + *g) : g;
        });
        if (!fsum) continue;
        Value term = *fsum;
        for (int i = 0; i < d; ++i) term = term * ctx.v_scalar(abeta);
        total = total + term;
    }
    return total * ctx.v_scalar(ctx.module_prefactor());
}

}  // namespace

NPointResult current_generating(const NPointProblem& p) {
    p.validate();
    if (p.lattice->rank() != 1)
        throw std::invalid_argument("current_generating: rank-1 only");
    for (const auto& ins : p.insertions) {
        if (!ins.alpha.is_zero())
            throw std::invalid_argument("current_generating: pure module insertions only");
        FockMonomial a{{1, 1, 1}};
        if (ins.state != a)
            throw std::invalid_argument("current_generating: every state must be the current a");
    }
    EvalMode mode = select_mode(p);
    switch (mode) {
        case EvalMode::Rational: {
            RationalCtx ctx(p);
            NPointResult r;
            r.mode = mode;
            r.has_formal_z = p.formal_index() >= 0;
            r.zq = current_generating_value(p, ctx);
            r.provenance = "current generating function (rational)";
            return r;
        }
        case EvalMode::FormalCplx: {
            CplxFormalCtx ctx(p);
            NPointResult r;
            r.mode = mode;
            r.has_formal_z = p.formal_index() >= 0;
            r.zc = current_generating_value(p, ctx);
            r.provenance = "current generating function (complex-q)";
            return r;
        }
        case EvalMode::Numeric: {
            NumericEngineCtx ctx(p);
            NPointResult r;
            r.mode = mode;
            ZSeries<Cplx> v = current_generating_value(p, ctx);
            const Cplx* c = v.coeff_ptr(0);
            r.value = c ? *c : Cplx(0.0, 0.0);
            r.provenance = "current generating function (numeric)";
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

// --- theta_lattice --------------------------------------------------------------

std::vector<LatticeVector> enumerate_lattice_vectors(const LatticeData& lat, long max_norm) {
    if (max_norm < 0) return {};
    long bound = static_cast<long>(
        std::floor(std::sqrt(static_cast<double>(max_norm) / lat.min_eigenvalue()) + 1e-9));
    std::vector<LatticeVector> out;
    LatticeVector cur{std::vector<long>(static_cast<size_t>(lat.rank()), 0)};
    struct Rec {
        const LatticeData& lat;
        long bound, max_norm;
        std::vector<LatticeVector>& out;
        void go(LatticeVector& cur, int i) {
            if (i == lat.rank()) {
                if (lat.norm(cur) <= max_norm) out.push_back(cur);
                return;
            }
            for (long x = -bound; x <= bound; ++x) {
                cur.coords[static_cast<size_t>(i)] = x;
                go(cur, i + 1);
            }
            cur.coords[static_cast<size_t>(i)] = 0;
        }
    } rec{lat, bound, max_norm, out};
    rec.go(cur, 0);
    return out;
}

ZSeries<QSeries<Rational>> theta_lattice(const LatticeData& lat, const LatticeVector& alpha,
                                         long B, long zorder, long trunc) {
    if (B < 0) throw std::invalid_argument("theta_lattice: negative norm cutoff");
    auto vectors = enumerate_lattice_vectors(lat, 2 * B);
    std::map<long, std::map<long, Rational>> acc;  // z-exponent -> t-exponent -> coeff
    for (const auto& beta : vectors) {
        long te = 12 * lat.norm(beta);
        if (te >= trunc) continue;
        long ba = lat.inner(beta, alpha);
        Rational p(1);
        for (long m = 0; m < zorder; ++m) {
            if (!p.is_zero()) acc[m][te] += p;
            p *= Rational(ba, m + 1);
        }
    }
    std::vector<ZSeries<QSeries<Rational>>::Term> terms;
    for (auto& [ze, inner] : acc) {
        std::vector<QSeries<Rational>::Term> qt;
        for (auto& [te, c] : inner)
            if (!c.is_zero()) qt.emplace_back(te, c);
        auto qs = QSeries<Rational>::from_terms(std::move(qt), trunc);
        if (!qs.is_structurally_zero()) terms.emplace_back(ze, std::move(qs));
    }
    return ZSeries<QSeries<Rational>>::from_terms(std::move(terms), zorder);
}

// --- Zhu recursion residual ------------------------------------------------------

namespace {

template <class Ctx>
typename Ctx::Value zhu_residual_value(const NPointProblem& p, Ctx& ctx, int dir, long P) {
    using Value = typename Ctx::Value;
    NPointProblem base = p;
    FockMonomial v1 = p.insertions[0].state;
    if (remove_one_mode(v1, dir, P) == 0)
        throw std::invalid_argument("zhu residual: first state lacks the requested mode");
    base.insertions[0].state = v1;

    Value lhs = npoint_value(p, ctx);

    // scalar term: (a, delta_{P,1} beta + C(P,0) alpha_1 + sum_k D(P,0,z_1k) alpha_k)
    Value scalar = ctx.v_zero();
    if (P == 1 && !p.beta.is_zero()) scalar = scalar + ctx.v_scalar(ctx.pairing(dir, p.beta));
    const auto& alpha1 = p.insertions[0].alpha;
    if (!alpha1.is_zero())
        scalar = scalar + ctx.v_scalar(ctx.c_value(P, 0) * ctx.pairing(dir, alpha1));
    for (int k = 1; k < p.n(); ++k) {
        const auto& ak = p.insertions[static_cast<size_t>(k)].alpha;
        if (ak.is_zero()) continue;
        scalar = scalar + ctx.d_value(P, 0, 0, k).scaled(ctx.pairing(dir, ak));
    }
    std::optional<Value> rhs;
    auto rhs_add = [&](const Value& v) { rhs = rhs ? std::optional<Value>(*rhs + v) : v; };
    if (!scalar.is_structurally_zero()) rhs_add(scalar * npoint_value(base, ctx));

    // C(j, P) e_j F(v1 with one a_dir[-j] removed, ...)
    for (const auto& mp : v1) {
        if (mp.dir != dir) continue;
        NPointProblem q = base;
        FockMonomial w = v1;
        int mult = remove_one_mode(w, dir, mp.mode);
        q.insertions[0].state = w;
        Value coeff = ctx.v_scalar(ctx.c_value(mp.mode, P)).scaled_rational(Rational(mult));
        if (!coeff.is_structurally_zero()) rhs_add(coeff * npoint_value(q, ctx));
    }

    // D(m, P, z_k1) e_m F(..., v_k with one a_dir[-m] removed, ...)
    for (int k = 1; k < p.n(); ++k) {
        for (const auto& mp : p.insertions[static_cast<size_t>(k)].state) {
            if (mp.dir != dir) continue;
            NPointProblem q = base;
            FockMonomial w = q.insertions[static_cast<size_t>(k)].state;
            int mult = remove_one_mode(w, dir, mp.mode);
            q.insertions[static_cast<size_t>(k)].state = w;
            Value coeff = ctx.d_value(mp.mode, P, k, 0).scaled_rational(Rational(mult));
            if (!coeff.is_structurally_zero()) rhs_add(coeff * npoint_value(q, ctx));
        }
    }
    return rhs ? lhs - *rhs : lhs;
}

}  // namespace

Cplx quasi_periodicity_ratio(const NPointProblem& p, int i, Cplx shift) {
    p.validate();
    if (p.tau_formal) throw std::invalid_argument("quasi_periodicity_ratio: numeric tau required");
    Cplx base = npoint_full(p, EvalMode::Numeric).value;
    if (std::abs(base) < 1e-300) throw pole_error("quasi_periodicity_ratio: base value vanishes");
    NPointProblem q = p;
    q.insertions[static_cast<size_t>(i)].z += shift;
    return npoint_full(q, EvalMode::Numeric).value / base;
}

Cplx fourier_normalization(const NPointProblem& p, int i, int samples) {
    p.validate();
    if (p.tau_formal) throw std::invalid_argument("fourier_normalization: numeric tau required");
    // the integration path must stay away from every other insertion point
    const Cplx zi = p.insertions[static_cast<size_t>(i)].z;
    for (int j = 0; j < p.n(); ++j) {
        if (j == i) continue;
        double dre = std::abs((zi - p.insertions[static_cast<size_t>(j)].z).real());
        if (dre < 0.05)
            throw pole_error("fourier_normalization: integration path passes near a pole");
    }
    Cplx acc(0.0, 0.0);
    for (int k = 0; k < samples; ++k) {
        NPointProblem q = p;
        q.insertions[static_cast<size_t>(i)].z += Cplx(0.0, kTwoPi * k / samples);
        acc += npoint_full(q, EvalMode::Numeric).value;
    }
    return acc / static_cast<double>(samples);
}

NPointResult zhu_recursion_residual(const NPointProblem& p, int dir, long P) {
    p.validate();
    EvalMode mode = select_mode(p);
    switch (mode) {
        case EvalMode::Rational: {
            RationalCtx ctx(p);
            NPointResult r;
            r.mode = mode;
            r.has_formal_z = p.formal_index() >= 0;
            r.zq = zhu_residual_value(p, ctx, dir, P);
            r.provenance = "zhu recursion residual (rational)";
            return r;
        }
        case EvalMode::FormalCplx: {
            CplxFormalCtx ctx(p);
            NPointResult r;
            r.mode = mode;
            r.has_formal_z = p.formal_index() >= 0;
            r.zc = zhu_residual_value(p, ctx, dir, P);
            r.provenance = "zhu recursion residual (complex-q)";
            return r;
        }
        case EvalMode::Numeric: {
            NumericEngineCtx ctx(p);
            NPointResult r;
            r.mode = mode;
            ZSeries<Cplx> v = zhu_residual_value(p, ctx, dir, P);
            const Cplx* c = v.coeff_ptr(0);
            r.value = c ? *c : Cplx(0.0, 0.0);
            r.provenance = "zhu recursion residual (numeric)";
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace tnpf
