#include "hchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hchain/errors.hpp"

namespace hchain {

namespace {

EigenDecomposition positive_definite_eigh(const SymMatrix& v, const char* who) {
    EigenDecomposition e = eigh_symmetric(v);
    if (e.eigenvalues.front() <= 0.0) {
        std::ostringstream os;
        os << who << ": potential matrix is not positive definite (smallest eigenvalue "
           << e.eigenvalues.front() << ")";
        throw numeric_error(os.str());
    }
    return e;
}

// coth(beta sqrt(lambda) / 2), clamped to 1 once the argument exceeds 37
// (indistinguishable from 1 in double precision).
double thermal_factor(double beta, double lambda) {
    if (beta == std::numeric_limits<double>::infinity()) return 1.0;
    const double x = 0.5 * beta * std::sqrt(lambda);
    if (x > 37.0) return 1.0;
    return 1.0 / std::tanh(x);
}

// Q diag(fv) Q^T for a precomputed spectral scaling fv.
SymMatrix from_spectral_diag(const EigenDecomposition& e, const std::vector<double>& fv) {
    const std::size_t n = e.dim;
    std::vector<double> scaled(n * n), out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) scaled[i * n + k] = e.eigenvectors[i * n + k] * fv[k];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += scaled[i * n + k] * e.eigenvectors[j * n + k];
            out[i * n + j] = acc;
            out[j * n + i] = acc;
        }
    return SymMatrix(n, std::move(out));
}

CovariancePair covariance_from_spectrum(const EigenDecomposition& e, std::span<const double> factor) {
    const std::size_t n = e.dim;
    std::vector<double> fx(n), fp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(e.eigenvalues[k]);
        fx[k] = factor[k] / root;
        fp[k] = factor[k] * root;
    }
    return CovariancePair{from_spectral_diag(e, fx), from_spectral_diag(e, fp)};
}

}  // namespace

std::size_t ChainSpec::coupling_order() const noexcept {
    std::size_t m = couplings.size();
    while (m > 0 && couplings[m - 1] == 0.0) --m;
    return m;
}

void ChainSpec::validate() const {
    if (n == 0) throw validation_error("chain: oscillator count must be at least 1");
    for (double a : couplings)
        if (!std::isfinite(a)) throw validation_error("chain: couplings must be finite");
    const std::size_t m = coupling_order();
    if (topology == Topology::Ring && m > 0) {
        if (n < 3)
            throw validation_error("chain: a coupled ring needs at least 3 oscillators");
        if (m > (n - 1) / 2) {
            std::ostringstream os;
            os << "chain: coupling range " << m << " exceeds (n-1)/2 = " << (n - 1) / 2
               << " for a ring of " << n << " oscillators";
            throw validation_error(os.str());
        }
    }
    if (topology == Topology::Terminated && m > n - 1) {
        std::ostringstream os;
        os << "chain: coupling range " << m << " exceeds n-1 = " << n - 1
           << " for a terminated chain of " << n << " oscillators";
        throw validation_error(os.str());
    }
    if (std::isnan(inverse_temperature) || inverse_temperature < 0.0)
        throw validation_error("chain: inverse temperature must be nonnegative or infinite");
}

std::vector<double> ring_first_row(std::size_t n, std::span<const double> couplings) {
    double sum = 0.0;
    for (double a : couplings) sum += a;
    std::vector<double> row(n, 0.0);
    row[0] = 1.0 + 2.0 * sum;
    for (std::size_t j = 1; j <= couplings.size() && j < n; ++j) {
        row[j] = -couplings[j - 1];
        row[n - j] = -couplings[j - 1];
    }
    return row;
}

SymMatrix build_potential(const ChainSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n;
    if (spec.topology == Topology::Ring) {
        const auto row = ring_first_row(n, spec.couplings);
        const auto lam = circulant_eigenvalues(row);
        const double lam_min = *std::min_element(lam.begin(), lam.end());
        if (lam_min <= 0.0) {
            std::ostringstream os;
            os << "unstable chain: ring mode eigenvalue " << lam_min << " is not positive";
            throw numeric_error(os.str());
        }
        SymMatrix v(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) v.set(i, j, row[(j - i) % n]);
        return v;
    }

    double sum = 0.0;
    for (double a : spec.couplings) sum += a;
    SymMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.set(i, i, 1.0 + 2.0 * sum);
        for (std::size_t k = 1; k <= spec.couplings.size() && i + k < n; ++k)
            v.set(i, i + k, -spec.couplings[k - 1]);
    }
    const auto e = eigh_symmetric(v);
    if (e.eigenvalues.front() <= 0.0) {
        std::ostringstream os;
        os << "unstable chain: terminated chain eigenvalue " << e.eigenvalues.front()
           << " is not positive";
        throw numeric_error(os.str());
    }
    return v;
}

CovariancePair ground_covariance(const SymMatrix& v) {
    const auto e = positive_definite_eigh(v, "ground_covariance");
    const std::vector<double> ones(v.dim(), 1.0);
    return covariance_from_spectrum(e, ones);
}

CovariancePair thermal_covariance(const SymMatrix& v, double beta) {
    if (std::isnan(beta) || beta <= 0.0)
        throw validation_error("thermal_covariance: inverse temperature must be positive");
    const auto e = positive_definite_eigh(v, "thermal_covariance");
    std::vector<double> factor(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) factor[k] = thermal_factor(beta, e.eigenvalues[k]);
    return covariance_from_spectrum(e, factor);
}

CovariancePair covariance_for(const ChainSpec& spec) {
    const SymMatrix v = build_potential(spec);
    if (spec.ground_state()) return ground_covariance(v);
    return thermal_covariance(v, spec.inverse_temperature);
}

double ground_energy(const SymMatrix& v) {
    const auto e = positive_definite_eigh(v, "ground_energy");
    double sum = 0.0;
    for (double lam : e.eigenvalues) sum += std::sqrt(lam);
    return sum;
}

namespace {

bool is_circulant(const SymMatrix& v) {
    const std::size_t n = v.dim();
    const double tol = 1e-12 * std::max(1.0, v.max_abs());
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(v(i, j) - v(0, (j + n - i) % n)) > tol) return false;
    return true;
}

}  // namespace

std::vector<double> classical_correlations(const SymMatrix& v) {
    if (!is_circulant(v))
        throw validation_error("classical_correlations: matrix is not circulant (ring topology required)");
    const auto e = positive_definite_eigh(v, "classical_correlations");
    const SymMatrix inv_root = matrix_function(e, [](double x) { return 1.0 / std::sqrt(x); });
    std::vector<double> row(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) row[j] = 0.5 * inv_root(0, j);
    return row;
}

}  // namespace hchain
