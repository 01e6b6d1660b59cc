#include "tnpf/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace tnpf {

namespace {

// Symmetric Jacobi eigenvalue sweep; ranks here are tiny.
double symmetric_min_eigenvalue(std::vector<std::vector<double>> a) {
    const size_t n = a.size();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    double m = a[0][0];
    for (size_t i = 1; i < n; ++i) m = std::min(m, a[i][i]);
    return m;
}

}  // namespace

LatticeData::LatticeData(std::vector<std::vector<long>> gram) : gram_(std::move(gram)) {
    const size_t n = gram_.size();
    if (n == 0) throw std::invalid_argument("LatticeData: empty Gram matrix");
    for (const auto& row : gram_)
        if (row.size() != n) throw std::invalid_argument("LatticeData: Gram matrix not square");
    for (size_t i = 0; i < n; ++i) {
        if (gram_[i][i] % 2 != 0)
            throw std::invalid_argument("LatticeData: lattice not even (odd diagonal entry)");
        for (size_t j = 0; j < n; ++j)
            if (gram_[i][j] != gram_[j][i])
                throw std::invalid_argument("LatticeData: Gram matrix not symmetric");
    }

    // double-precision Cholesky; failure means the form is not positive
    // definite
    chol_.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double s = static_cast<double>(gram_[i][j]);
            for (size_t k = 0; k < j; ++k) s -= chol_[i][k] * chol_[j][k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::invalid_argument("LatticeData: Gram matrix not positive definite");
                chol_[i][i] = std::sqrt(s);
            } else {
                chol_[i][j] = s / chol_[j][j];
            }
        }
    }
    // residual check: gram = L L^T within 1e-12
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (size_t k = 0; k < n; ++k) s += chol_[i][k] * chol_[j][k];
            if (std::abs(s - static_cast<double>(gram_[i][j])) > 1e-12 * std::max(1.0, std::abs(s)))
                throw std::runtime_error("LatticeData: Cholesky residual too large");
        }

    // exact rational Cholesky when every pivot is a rational square
    std::vector<std::vector<Rational>> ex(n, std::vector<Rational>(n, Rational(0)));
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
        for (size_t j = 0; j <= i && ok; ++j) {
            Rational s(gram_[i][j]);
            for (size_t k = 0; k < j; ++k) s -= ex[i][k] * ex[j][k];
            if (i == j) {
                Rational root;
                if (!s.sqrt_exact(root)) {
                    ok = false;
                    break;
                }
                ex[i][i] = root;
            } else {
                ex[i][j] = s / ex[j][j];
            }
        }
    }
    if (ok) exact_chol_ = std::move(ex);

    min_eig_ = n == 1 ? static_cast<double>(gram_[0][0])
                      : symmetric_min_eigenvalue([&] {
                            std::vector<std::vector<double>> a(n, std::vector<double>(n));
                            for (size_t i = 0; i < n; ++i)
                                for (size_t j = 0; j < n; ++j)
                                    a[i][j] = static_cast<double>(gram_[i][j]);
                            return a;
                        }());
}

long LatticeData::inner(const LatticeVector& a, const LatticeVector& b) const {
    const size_t n = gram_.size();
    if (a.coords.size() != n || b.coords.size() != n)
        throw std::invalid_argument("LatticeData::inner: rank mismatch");
    long s = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s += a.coords[i] * gram_[i][j] * b.coords[j];
    return s;
}

double LatticeData::pairing(int r, const LatticeVector& v) const {
    const size_t n = gram_.size();
    if (r < 1 || static_cast<size_t>(r) > n)
        throw std::invalid_argument("LatticeData::pairing: bad direction");
    if (v.coords.size() != n) throw std::invalid_argument("LatticeData::pairing: rank mismatch");
    // (a_r, v) = (cholesky^T coords)_r
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += chol_[i][static_cast<size_t>(r - 1)] * static_cast<double>(v.coords[i]);
    return s;
}

Rational LatticeData::pairing_exact(int r, const LatticeVector& v) const {
    if (v.is_zero()) return Rational(0);
    if (!exact_chol_)
        throw std::domain_error("LatticeData: orthonormal pairings are irrational for this Gram matrix");
    const size_t n = gram_.size();
    if (r < 1 || static_cast<size_t>(r) > n)
        throw std::invalid_argument("LatticeData::pairing_exact: bad direction");
    Rational s(0);
    for (size_t i = 0; i < n; ++i)
        s += (*exact_chol_)[i][static_cast<size_t>(r - 1)] * Rational(v.coords[i]);
    return s;
}

int LatticeData::cocycle(const LatticeVector& a, const LatticeVector& b) const {
    const size_t n = gram_.size();
    long parity = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j)  // i > j entries carry (-1)^{(b_i,b_j)}
            parity += gram_[i][j] * a.coords[i] * b.coords[j];
    int eps = (parity % 2 + 2) % 2 == 0 ? 1 : -1;
    if (correction_) eps *= correction_(a) * correction_(b) * correction_(a + b);
    return eps;
}

}  // namespace tnpf
