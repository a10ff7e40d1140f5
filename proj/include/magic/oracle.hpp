// oracle.hpp — Brute-force verification of the analytic coupling formulas:
// assemble the spin (x) truncated-Fock Hamiltonian, apply the phonon
// displacement transformation numerically, and read operator coefficients
// back out of the transformed matrix.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magic/config.hpp"
#include "magic/couplings.hpp"

namespace magic {

struct TruncatedSpace {
    int n_ions = 0;
    int n_modes = 0;
    int cutoff = 0;  // max Fock occupation per mode

    TruncatedSpace(int ions, int modes, int max_occupation);

    std::size_t fock_dim() const;   // (cutoff + 1)^n_modes
    std::size_t dimension() const;  // 2^n_ions * fock_dim
    static constexpr std::size_t max_dimension = 200000;
};

// Inputs the oracle needs; c may be all-zero for a quadratic-only run.
struct OracleProblem {
    ModeDecomposition modes;
    ResonanceProfile res;
    LambDickeMatrix eps;
    Tensor3 c;  // mode-frame cubic coefficients, J
};

// Basis conventions: a spin sector is a bit pattern s where bit n set means
// sigma_z^(n) eigenvalue -1; Fock states are indexed with mode 0 varying
// fastest. The full basis index is sector * fock_dim + fock_index.
double sector_sigma_z(unsigned sector, int ion);

// Hamiltonian restricted to one spin sector, real symmetric, units J.
// order 2 assembles resonance + phonon + gradient-coupling terms; order 3 adds
// the cubic phonon term sum_lrs (C_lrs / 6) X_l X_r X_s.
Eigen::MatrixXd sector_hamiltonian(const OracleProblem& p, const TruncatedSpace& space,
                                   unsigned sector, int order);

// Displacement unitary restricted to one spin sector: exp of the
// anti-Hermitian generator sum_l beta_l (a_l^+ - a_l) with
// beta_l = (1/2) sum_n eps_nl z_n, evaluated by matrix exponential in the
// truncated space.
Eigen::MatrixXd sector_polaron_unitary(const LambDickeMatrix& eps, const TruncatedSpace& space,
                                       unsigned sector);

// Full-space assemblies (block diagonal over spin sectors); intended for small
// spaces and cross-checks.
Eigen::MatrixXd build_hamiltonian(const OracleProblem& p, const TruncatedSpace& space, int order);
Eigen::MatrixXd polaron_transform(const Eigen::MatrixXd& h, const LambDickeMatrix& eps,
                                  const TruncatedSpace& space);

struct OracleResult {
    // Coefficients of Pauli-Z strings ("Z1", "Z1Z2", ...) in H~ / hbar at the
    // projected phonon occupation, rad/s.
    std::map<std::string, double> extracted;
    // Closed-form predictions for the same coefficients (same keys).
    std::map<std::string, double> analytic;
    // Max over sectors of the weight the displaced projection state puts on
    // the truncation boundary (any mode at its cutoff); dimensionless.
    double truncation_error_estimate = 0.0;
    // Max over sectors of ||U^T U - 1||_inf.
    double unitarity_defect = 0.0;
};

// Transforms each sector, checks unitarity, and projects onto the Fock state
// |occupations> (all-zero = vacuum).
OracleResult extract_coefficients(const OracleProblem& p, const TruncatedSpace& space,
                                  const std::vector<int>& occupations, int order);

// End-to-end run from a configuration (n_ions <= 3).
OracleResult run_oracle(const Configuration& cfg, int cutoff, int order);

}  // namespace magic
