#pragma once

#include <limits>
#include <span>
#include <vector>

#include "hchain/linalg.hpp"

namespace hchain {

enum class Topology { Ring, Terminated };

/// Physical description of the oscillator chain. Units: hbar = m = omega = 1,
/// couplings are the dimensionless alpha_k = 2 K_k / (m omega^2).
///
/// inverse_temperature is beta = 1/T; +infinity selects the ground state.
struct ChainSpec {
    std::size_t n = 1;
    std::vector<double> couplings;
    Topology topology = Topology::Ring;
    double inverse_temperature = std::numeric_limits<double>::infinity();

    bool ground_state() const noexcept {
        return inverse_temperature == std::numeric_limits<double>::infinity();
    }

    /// Number of neighbor orders actually coupled (trailing zeros ignored).
    std::size_t coupling_order() const noexcept;

    /// Throws validation_error on structural problems (range collisions on the
    /// ring, non-finite couplings, negative beta).
    void validate() const;
};

/// Position and momentum blocks of a Gaussian state; the full covariance
/// matrix in (q, p) ordering is (x_block ⊕ p_block) / 2.
struct CovariancePair {
    SymMatrix x_block;
    SymMatrix p_block;
};

/// First row (v_0, v_1, ..., v_{n-1}) of the ring potential matrix.
std::vector<double> ring_first_row(std::size_t n, std::span<const double> couplings);

/// Potential matrix of the chain. Ring -> symmetric circulant with
/// v_0 = 1 + 2 sum(alpha), v_j = v_{n-j} = -alpha_j. Terminated -> same band
/// with the wrap-around entries zeroed while every diagonal entry stays v_0
/// (the end oscillators keep all their springs).
///
/// Throws numeric_error("unstable chain ...") when the result is not positive
/// definite; that gate protects every downstream operation.
SymMatrix build_potential(const ChainSpec& spec);

/// Ground state: x_block = V^{-1/2}, p_block = V^{1/2}.
CovariancePair ground_covariance(const SymMatrix& v);

/// Gibbs state at inverse temperature beta > 0: both blocks acquire the
/// spectral factor coth(beta sqrt(eigenvalue) / 2). beta = +infinity
/// reproduces ground_covariance exactly (same construction, unit factor).
CovariancePair thermal_covariance(const SymMatrix& v, double beta);

/// Covariance of the state selected by spec.inverse_temperature.
CovariancePair covariance_for(const ChainSpec& spec);

/// Ground state energy in units of E_0 = hbar omega / 2, i.e. Tr[V^{1/2}].
double ground_energy(const SymMatrix& v);

/// Position-position correlations <X_1 X_j> of the ground state, j = 1..n:
/// the first row of V^{-1/2} / 2. Requires a circulant matrix.
std::vector<double> classical_correlations(const SymMatrix& v);

}  // namespace hchain
