// chain.hpp — Classical ion-crystal equilibrium, Hessians, normal modes, and
// cubic expansion tensors of the potential energy.

#pragma once

#include <Eigen/Dense>

#include "magic/config.hpp"
#include "magic/tensor3.hpp"

namespace magic {

struct ChainSolution {
    Eigen::VectorXd u;        // dimensionless equilibrium positions, ascending
    double l = 0.0;           // characteristic length, l^3 = e^2/(4 pi eps0 m wz^2)
    Eigen::VectorXd z0;       // physical positions, z0 = l * u
    double residual = 0.0;    // final max dimensionless force residual
    int iterations = 0;
};

enum class Direction { axial, transversal_1, transversal_2 };

struct ModeDecomposition {
    Direction direction = Direction::axial;
    Eigen::MatrixXd S;    // N x N orthogonal participation matrix (columns = modes)
    Eigen::VectorXd nu;   // mode angular frequencies, rad/s, ascending
    Eigen::VectorXd dz;   // ground-state widths sqrt(hbar / 2 m nu), m
};

enum class CubicKind { coulomb_axial, coulomb_transversal };

// Third-derivative coefficients of the potential at equilibrium, J/m^3.
// coulomb_axial holds d^3 V / dq_i dq_j dq_k for axial displacements; the
// transversal kind holds the mixed-coefficient tensor entering the
// q^(3) q^(alpha) q^(alpha) grouping.
struct CubicTensor {
    CubicKind kind = CubicKind::coulomb_axial;
    Tensor3 values;
};

double characteristic_length(const Configuration& cfg);

// Damped Newton solve of the dimensionless force balance. Throws
// std::runtime_error carrying the final residual on non-convergence.
ChainSolution solve_equilibrium(int n_ions, const Configuration& cfg);

// Variant with an explicit starting guess (used to probe initial-guess
// independence).
ChainSolution solve_equilibrium_from(const Eigen::VectorXd& guess, const Configuration& cfg);

// Second derivatives of trap + Coulomb energy at equilibrium, J/m^2.
Eigen::MatrixXd axial_hessian(const ChainSolution& chain, const Configuration& cfg);

// Same for displacements along one transversal direction; requires
// cfg.omega_radial.
Eigen::MatrixXd transversal_hessian(const ChainSolution& chain, const Configuration& cfg);

// Eigen-decomposition of a Hessian into normal modes; eigenvectors are
// sign-fixed (largest-magnitude entry positive, ties to the lowest index) and
// sorted by ascending frequency. Throws std::runtime_error("unstable
// configuration") on a non-positive eigenvalue.
ModeDecomposition normal_modes(const Eigen::MatrixXd& hessian, const Configuration& cfg,
                               Direction direction);

CubicTensor cubic_tensor_axial(const ChainSolution& chain, const Configuration& cfg);
CubicTensor cubic_tensor_transversal(const ChainSolution& chain, const Configuration& cfg);

// Adds the local trap anharmonicity alpha_i on the i=j=k diagonal.
CubicTensor add_trap_anharmonicity(CubicTensor tensor, const std::vector<double>& alpha_n);

}  // namespace magic
