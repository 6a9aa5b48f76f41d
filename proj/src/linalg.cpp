#include "hchain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hchain/errors.hpp"

namespace hchain {

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {
    if (dim == 0) throw validation_error("SymMatrix: dimension must be at least 1");
}

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) throw validation_error("SymMatrix: dimension must be at least 1");
    if (entries_.size() != dim * dim)
        throw validation_error("SymMatrix: entry count does not match dimension");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const double avg = 0.5 * (entries_[i * dim_ + j] + entries_[j * dim_ + i]);
            entries_[i * dim_ + j] = avg;
            entries_[j * dim_ + i] = avg;
        }
}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
    return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = value;
}

double SymMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
    return t;
}

double SymMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::fabs(v));
    return m;
}

double SymMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : entries_) s += v * v;
    return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

// General row-major product c = a * b, all n x n.
std::vector<double> matmul(std::size_t n, const double* a, const double* b) {
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) continue;
            const double* brow = b + k * n;
            double* crow = c.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    return c;
}

}  // namespace

EigenDecomposition eigh_symmetric(const SymMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<double> a(m.data().begin(), m.data().end());
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;

    const double norm = m.frobenius_norm();
    const double target = 1e-13 * norm;
    constexpr int kMaxSweeps = 100;

    if (norm > 0.0) {
        int sweep = 0;
        while (off_diagonal_norm(a, n) > target) {
            if (++sweep > kMaxSweeps) {
                std::ostringstream os;
                os << "eigh_symmetric: Jacobi iteration did not converge for dimension " << n
                   << " (off-diagonal residual " << off_diagonal_norm(a, n) << ")";
                throw numeric_error(os.str());
            }
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t r = p + 1; r < n; ++r) {
                    const double apr = a[p * n + r];
                    if (apr == 0.0) continue;
                    const double app = a[p * n + p];
                    const double arr = a[r * n + r];
                    const double tau = (arr - app) / (2.0 * apr);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    for (std::size_t k = 0; k < n; ++k) {
                        if (k == p || k == r) continue;
                        const double akp = a[k * n + p];
                        const double akr = a[k * n + r];
                        a[k * n + p] = c * akp - s * akr;
                        a[k * n + r] = s * akp + c * akr;
                        a[p * n + k] = a[k * n + p];
                        a[r * n + k] = a[k * n + r];
                    }
                    a[p * n + p] = app - t * apr;
                    a[r * n + r] = arr + t * apr;
                    a[p * n + r] = 0.0;
                    a[r * n + p] = 0.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double qkp = q[k * n + p];
                        const double qkr = q[k * n + r];
                        q[k * n + p] = c * qkp - s * qkr;
                        q[k * n + r] = s * qkp + c * qkr;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t lhs, std::size_t rhs) { return a[lhs * n + lhs] < a[rhs * n + rhs]; });

    EigenDecomposition e;
    e.dim = n;
    e.eigenvalues.resize(n);
    e.eigenvectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        e.eigenvalues[k] = a[order[k] * n + order[k]];
        for (std::size_t i = 0; i < n; ++i) e.eigenvectors[i * n + k] = q[i * n + order[k]];
    }
    return e;
}

SymMatrix matrix_function(const EigenDecomposition& e, const std::function<double(double)>& f) {
    const std::size_t n = e.dim;
    std::vector<double> fv(n);
    for (std::size_t k = 0; k < n; ++k) {
        fv[k] = f(e.eigenvalues[k]);
        if (!std::isfinite(fv[k])) {
            std::ostringstream os;
            os << "matrix_function: map is not finite at eigenvalue " << e.eigenvalues[k]
               << " (index " << k << ")";
            throw numeric_error(os.str());
        }
    }
    // M_ij = sum_k Q_ik f_k Q_jk; rows of the scaled matrix stay contiguous.
    std::vector<double> scaled(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) scaled[i * n + k] = e.eigenvectors[i * n + k] * fv[k];

    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            const double* si = scaled.data() + i * n;
            const double* qj = e.eigenvectors.data() + j * n;
            for (std::size_t k = 0; k < n; ++k) acc += si[k] * qj[k];
            out[i * n + j] = acc;
            out[j * n + i] = acc;
        }
    }
    return SymMatrix(n, std::move(out));
}

std::vector<double> circulant_eigenvalues(std::span<const double> first_row) {
    const std::size_t n = first_row.size();
    if (n == 0) throw validation_error("circulant_eigenvalues: empty row");
    for (std::size_t j = 1; j < n; ++j) {
        if (std::fabs(first_row[j] - first_row[n - j]) > 1e-12) {
            std::ostringstream os;
            os << "circulant_eigenvalues: row is not symmetric under j -> n-j at index " << j
               << " (" << first_row[j] << " vs " << first_row[n - j] << ")";
            throw validation_error(os.str());
        }
    }
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<double> lam(n, first_row[0]);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 1; 2 * l < n; ++l)
            lam[k] += 2.0 * first_row[l] * std::cos(two_pi * static_cast<double>(k * l) / static_cast<double>(n));
        if (n % 2 == 0) lam[k] += first_row[n / 2] * (k % 2 == 0 ? 1.0 : -1.0);
    }
    return lam;
}

SymMatrix sym_sandwich(const SymMatrix& s, const SymMatrix& a) {
    const std::size_t n = s.dim();
    if (a.dim() != n) throw validation_error("sym_sandwich: dimension mismatch");
    const auto sa = matmul(n, s.data().data(), a.data().data());
    auto sas = matmul(n, sa.data(), s.data().data());
    return SymMatrix(n, std::move(sas));  // constructor symmetrizes the rounding skew
}

SymMatrix sign_conjugate(const SymMatrix& a, std::span<const int> signs) {
    const std::size_t n = a.dim();
    if (signs.size() != n) throw validation_error("sign_conjugate: sign count does not match dimension");
    std::vector<double> out(a.data().begin(), a.data().end());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (signs[i] * signs[j] < 0) out[i * n + j] = -out[i * n + j];
    return SymMatrix(n, std::move(out));
}

}  // namespace hchain
