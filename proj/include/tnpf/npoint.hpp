#pragma once

#include <string>
#include <vector>

#include "tnpf/elliptic.hpp"
#include "tnpf/fock.hpp"
#include "tnpf/lattice.hpp"
#include "tnpf/matchings.hpp"
#include "tnpf/numeric.hpp"
#include "tnpf/oracle.hpp"

namespace tnpf {

// One vertex-operator insertion v (x) e^alpha at position z. The boson part
// is a square-bracket Fock monomial; at most one insertion may sit at the
// formal position.
struct Insertion {
    FockMonomial state;
    LatticeVector alpha;
    bool formal = false;
    Cplx z{0.0, 0.0};
};

struct NPointProblem {
    const LatticeData* lattice = nullptr;
    LatticeVector beta;
    std::vector<Insertion> insertions;
    bool tau_formal = true;
    Cplx tau{0.0, 1.0};
    long trunc = 264;
    long zorder = 12;
    std::size_t inv_cap = kDefaultInvolutionCap;
    int threads = 1;

    int n() const { return static_cast<int>(insertions.size()); }
    int formal_index() const {  // -1 when every position is numeric
        int f = -1;
        for (int i = 0; i < n(); ++i)
            if (insertions[static_cast<size_t>(i)].formal) {
                if (f >= 0) throw std::invalid_argument("at most one formal position");
                f = i;
            }
        return f;
    }
    void validate() const;
};

enum class EvalMode { Rational, FormalCplx, Numeric };

// z-truncation used for values that are exact polynomials in z (scalars,
// plain exponents of the formal variable are not among them)
inline constexpr long kZInf = 1L << 40;

const char* eval_mode_name(EvalMode m);

// Chooses the coefficient field per problem: exact rationals whenever every
// required quantity is rational (formal tau, positions in {formal, 0}, and
// orthonormal pairings either unneeded or exactly rational).
EvalMode select_mode(const NPointProblem& p);

struct NPointResult {
    EvalMode mode = EvalMode::Rational;
    bool has_formal_z = false;
    ZSeries<QSeries<Rational>> zq;
    ZSeries<QSeries<Cplx>> zc;
    Cplx value{0.0, 0.0};
    std::string provenance;

    // Collapse to the z^0 coefficient when no formal variable is present.
    QSeries<Rational> qseries_rational() const;
    QSeries<Cplx> qseries_cplx() const;
};

namespace detail {

inline Rational parity_sign(long e) { return Rational(((e % 2) + 2) % 2 == 0 ? 1 : -1); }

template <class S>
ZSeries<S> z_parity_flip(const ZSeries<S>& v) {
    std::vector<typename ZSeries<S>::Term> terms;
    for (const auto& [e, c] : v.terms())
        terms.emplace_back(e, scalar_traits<S>::scale_rational(c, parity_sign(e)));
    return ZSeries<S>::from_terms(std::move(terms), v.ztrunc());
}

}  // namespace detail

// --- Evaluation contexts -------------------------------------------------
//
// Each context resolves the elliptic building blocks against its coefficient
// field and the problem's positions. Engine code is generic over them.

class RationalCtx {
public:
    using S = QSeries<Rational>;
    using Value = ZSeries<S>;

    RationalCtx(const NPointProblem& p);

    long T() const { return T_; }
    long Z() const { return Z_; }
    S s_one() const { return S::one(T_); }
    S s_zero() const { return S::zero(T_); }
    // scalars are exact in z, so they carry an unbounded z-truncation
    Value v_one() const { return Value::monomial(0, s_one(), kZInf); }
    Value v_zero() const { return Value::zero(kZInf); }
    Value v_scalar(const S& s) const { return Value::monomial(0, s, kZInf); }

    S c_value(long r, long s) const { return c_coeff<Rational>(r, s, T_); }
    Value d_value(long r, long s, int i, int j) const;
    S pairing(int dir, const LatticeVector& v) const {
        return S::monomial(0, lat_->pairing_exact(dir, v), T_);
    }
    Value exp_beta_z(int i, long c) const;
    Value prime_pow(int i, int j, long e) const;
    S module_prefactor() const;  // q^{(beta,beta)/2} eta^{-l}

private:
    enum class Pos { Formal, Zero };
    Pos pos(int i) const { return pos_[static_cast<size_t>(i)]; }

    const NPointProblem* p_;
    const LatticeData* lat_;
    long T_, Z_;
    std::vector<Pos> pos_;
};

class CplxFormalCtx {
public:
    using S = QSeries<Cplx>;
    using Value = ZSeries<S>;

    CplxFormalCtx(const NPointProblem& p);

    long T() const { return T_; }
    long Z() const { return Z_; }
    S s_one() const { return S::one(T_); }
    S s_zero() const { return S::zero(T_); }
    Value v_one() const { return Value::monomial(0, s_one(), kZInf); }
    Value v_zero() const { return Value::zero(kZInf); }
    Value v_scalar(const S& s) const { return Value::monomial(0, s, kZInf); }

    S c_value(long r, long s) const;
    Value d_value(long r, long s, int i, int j) const;
    S pairing(int dir, const LatticeVector& v) const {
        return S::monomial(0, Cplx(lat_->pairing(dir, v), 0.0), T_);
    }
    Value exp_beta_z(int i, long c) const;
    Value prime_pow(int i, int j, long e) const;
    S module_prefactor() const;

    // P_n(z0) with formal tau and numeric z0: the k-truncated coefficientwise
    // expansion; |z0| must stay within the documented window.
    S pn_scalar(long n, Cplx z0) const;
    S prime_form_scalar(Cplx z0) const;

    static constexpr double kZWindow = 3.0;

private:
    const NPointProblem* p_;
    const LatticeData* lat_;
    long T_, Z_;
    int formal_ = -1;
    std::vector<Cplx> z_;
    const QSeries<Cplx>& ek(long k) const { return ek_[static_cast<size_t>(k)]; }
    std::vector<QSeries<Cplx>> ek_;
};

class NumericEngineCtx {
public:
    using S = Cplx;
    using Value = ZSeries<Cplx>;

    NumericEngineCtx(const NPointProblem& p);

    S s_one() const { return Cplx(1.0, 0.0); }
    S s_zero() const { return Cplx(0.0, 0.0); }
    Value v_one() const { return Value::monomial(0, s_one(), kZInf); }
    Value v_zero() const { return Value::zero(kZInf); }
    Value v_scalar(const S& s) const { return Value::monomial(0, s, kZInf); }

    S c_value(long r, long s) const { return num_.c_coeff(r, s); }
    Value d_value(long r, long s, int i, int j) const {
        return v_scalar(num_.d_coeff(r, s, z_[static_cast<size_t>(i)] - z_[static_cast<size_t>(j)]));
    }
    S pairing(int dir, const LatticeVector& v) const {
        return Cplx(lat_->pairing(dir, v), 0.0);
    }
    Value exp_beta_z(int i, long c) const {
        return v_scalar(std::exp(static_cast<double>(c) * z_[static_cast<size_t>(i)]));
    }
    Value prime_pow(int i, int j, long e) const {
        return v_scalar(
            num_.prime_form_pow(z_[static_cast<size_t>(i)] - z_[static_cast<size_t>(j)], e));
    }
    S module_prefactor() const {
        return num_.q_pow(Rational(lat_->norm(p_->beta), 2)) * num_.eta_pow(-lat_->rank());
    }

    const NumericContext& numeric() const { return num_; }

private:
    const NPointProblem* p_;
    const LatticeData* lat_;
    NumericContext num_;
    std::vector<Cplx> z_;
};

// --- Engine ---------------------------------------------------------------

namespace detail {

struct QnElement {
    int block;   // 0-based insertion index
    long label;  // mode label
};

template <class Ctx>
typename Ctx::Value qn_direction_sum(const NPointProblem& p, Ctx& ctx,
                                     const std::vector<QnElement>& elems, int dir);

}  // namespace detail

// Q_N = prod_r sum_{phi in Inv(Phi^r)} Gamma(phi) (empty set: 1).
template <class Ctx>
typename Ctx::Value qn_value(const NPointProblem& p, Ctx& ctx) {
    typename Ctx::Value total = ctx.v_one();
    for (int r = 1; r <= p.lattice->rank(); ++r) {
        std::vector<detail::QnElement> elems;
        for (int b = 0; b < p.n(); ++b)
            for (const auto& mp : p.insertions[static_cast<size_t>(b)].state)
                if (mp.dir == r)
                    for (int e = 0; e < mp.exp; ++e) elems.push_back({b, mp.mode});
        if (elems.empty()) continue;
        if (elems.size() > p.inv_cap)
            throw size_error("q_n: labelled set size " + std::to_string(elems.size()) +
                             " exceeds cap " + std::to_string(p.inv_cap));
        total = total * detail::qn_direction_sum(p, ctx, elems, r);
    }
    return total;
}

// F_N(e^{alpha_1},z_1;...) = q^{(beta,beta)/2} eta^{-l} prod_r exp((beta,alpha_r) z_r)
//   prod_{i<j} eps(alpha_i, alpha_j) K(z_ij)^{(alpha_i,alpha_j)}.
template <class Ctx>
typename Ctx::Value lattice_factor_value(const NPointProblem& p, Ctx& ctx) {
    typename Ctx::Value v = ctx.v_scalar(ctx.module_prefactor());
    int sign = 1;
    for (int i = 0; i < p.n(); ++i) {
        long c = p.lattice->inner(p.beta, p.insertions[static_cast<size_t>(i)].alpha);
        if (c != 0) v = v * ctx.exp_beta_z(i, c);
    }
    for (int i = 0; i < p.n(); ++i)
        for (int j = i + 1; j < p.n(); ++j) {
            const auto& ai = p.insertions[static_cast<size_t>(i)].alpha;
            const auto& aj = p.insertions[static_cast<size_t>(j)].alpha;
            long e = p.lattice->inner(ai, aj);
            sign *= p.lattice->cocycle(ai, aj);
            if (e != 0) v = v * ctx.prime_pow(i, j, e);
        }
    if (sign < 0) v = -v;
    return v;
}

template <class Ctx>
typename Ctx::Value npoint_value(const NPointProblem& p, Ctx& ctx) {
    return qn_value(p, ctx) * lattice_factor_value(p, ctx);
}

// --- Public API -----------------------------------------------------------

// Full n-point function via the closed formula, in the automatically selected
// (or caller-forced) coefficient field.
NPointResult npoint_full(const NPointProblem& p);
NPointResult npoint_full(const NPointProblem& p, EvalMode mode);

// Rank-1 one-point function of a square-bracket monomial over M (x) e^beta,
// via the independent subset/fixed-point-free-involution route.
QSeries<Rational> onepoint_module_rational(const LatticeData& lat, const LatticeVector& beta,
                                           const FockMonomial& v, long trunc,
                                           std::size_t cap = kDefaultInvolutionCap);
QSeries<Cplx> onepoint_module_cplx(const LatticeData& lat, const LatticeVector& beta,
                                   const FockMonomial& v, long trunc,
                                   std::size_t cap = kDefaultInvolutionCap);

// n-point generating function with every state the weight-one current a:
// (q^{(beta,beta)/2}/eta) sum_{Delta subset Phi} (a,beta)^{|Delta|}
//   sum_{phi0 in F(Phi\Delta)} prod P_2(z_ij).   Rank 1.
NPointResult current_generating(const NPointProblem& p);

// Theta series of the lattice: sum over beta in L with (beta,beta) <= 2B of
// q^{(beta,beta)/2} exp((beta,alpha) z), as a z-series over exact q-series.
ZSeries<QSeries<Rational>> theta_lattice(const LatticeData& lat, const LatticeVector& alpha,
                                         long B, long zorder, long trunc);
std::vector<LatticeVector> enumerate_lattice_vectors(const LatticeData& lat, long max_norm);

// Residual of the Zhu recursion for the mode a_dir[-p] split off the first
// insertion. Zero (exactly, or within tolerance) when the closed formula is
// self-consistent.
NPointResult zhu_recursion_residual(const NPointProblem& p, int dir, long P);

// F(... z_i + shift ...) / F(... z_i ...) for a fully numeric problem; the
// quasi-periodicity laws predict 1 for shift 2*pi*i and
// q^{(alpha_i,alpha_i)/2 + (alpha_i,beta)} q_i^{(alpha_i,alpha_i)} (times
// cross factors prod_{j != i} q_j^{(alpha_i,alpha_j)}) for shift 2*pi*i*tau.
Cplx quasi_periodicity_ratio(const NPointProblem& p, int i, Cplx shift);

// (1/2pi i) Int_0^{2pi i} F dz_i as the mean over uniform samples along the
// period segment; rejects paths that pass too close to another insertion.
Cplx fourier_normalization(const NPointProblem& p, int i, int samples = 64);

}  // namespace tnpf
