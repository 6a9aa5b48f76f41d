#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hchain {

/// Dense real symmetric matrix with full row-major storage.
///
/// The two triangles are kept exactly equal: the raw-data constructor averages
/// the off-diagonal pairs once, and set() always writes both mirror entries.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t dim);
    SymMatrix(std::size_t dim, std::vector<double> entries);

    static SymMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, double value);

    std::span<const double> data() const noexcept { return entries_; }

    double trace() const noexcept;
    double max_abs() const noexcept;
    double frobenius_norm() const noexcept;

private:
    std::size_t dim_;
    std::vector<double> entries_;
};

/// Spectral factorization M = Q diag(eigenvalues) Q^T with eigenvalues sorted
/// ascending (stable tie order) and column k of Q the matching eigenvector.
struct EigenDecomposition {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;  // row-major dim x dim, orthogonal

    double eigenvector(std::size_t row, std::size_t k) const {
        return eigenvectors[row * dim + k];
    }
};

/// Cyclic Jacobi diagonalization. Deterministic for identical input; throws
/// numeric_error if the off-diagonal norm has not dropped below
/// 1e-13 * ||M||_F after 100 sweeps.
EigenDecomposition eigh_symmetric(const SymMatrix& m);

/// Q diag(f(eigenvalue)) Q^T, symmetrized. Throws numeric_error when f is not
/// finite at some eigenvalue.
SymMatrix matrix_function(const EigenDecomposition& e, const std::function<double(double)>& f);

/// Eigenvalues of the symmetric circulant matrix with the given first row,
/// in Fourier order k = 0..n-1:
///
///   L_k = v_0 + sum_l 2 v_l cos(2 pi k l / n)
///
/// with the middle term counted once for even n. The row must satisfy
/// v_j == v_{n-j} to 1e-12.
std::vector<double> circulant_eigenvalues(std::span<const double> first_row);

/// S * A * S for symmetric S, A; the result is symmetrized explicitly.
SymMatrix sym_sandwich(const SymMatrix& s, const SymMatrix& a);

/// D * A * D for D = diag(signs), signs in {+1, -1}. Exact (entry sign flips only).
SymMatrix sign_conjugate(const SymMatrix& a, std::span<const int> signs);

}  // namespace hchain
