// couplings.hpp — Contraction of mode data, field derivatives, and cubic
// tensors into effective two-spin, three-spin, spin-phonon, and local-field
// interaction strengths.

#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "magic/chain.hpp"
#include "magic/config.hpp"
#include "magic/field.hpp"
#include "magic/tensor3.hpp"

namespace magic {

struct LambDickeMatrix {
    Direction direction = Direction::axial;
    Eigen::MatrixXd eps;  // N_ions x N_modes, eps_nl = dz_l domega_n S_nl / nu_l
};

LambDickeMatrix lamb_dicke(const ModeDecomposition& modes, const ResonanceProfile& res);

// Coefficients of sigma_z products on strictly ordered ion triples i<j<k, rad/s.
using TripleMap = std::map<std::array<int, 3>, double>;

// J_ij = sum_n nu_n eps_in eps_jn, including the diagonal self terms.
// Additional (eps, modes) channels are summed over, one per direction with a
// nonzero gradient.
Eigen::MatrixXd spin_spin_couplings_full(
    const LambDickeMatrix& eps, const ModeDecomposition& modes,
    const std::vector<std::pair<LambDickeMatrix, ModeDecomposition>>& extra = {});

// Reporting convention: same matrix with the diagonal zeroed (a self coupling
// is a constant energy shift, not an interaction).
Eigen::MatrixXd spin_spin_couplings(
    const LambDickeMatrix& eps, const ModeDecomposition& modes,
    const std::vector<std::pair<LambDickeMatrix, ModeDecomposition>>& extra = {});

// Cubic tensor in the normal-mode frame with oscillator widths absorbed:
// C_ijk = sum_mnl B_mnl S_mi S_nj S_lk dz_i dz_j dz_k (units J).
Tensor3 mode_frame_cubic(const CubicTensor& b, const ModeDecomposition& modes);

// Coefficient of sigma_z^i sigma_z^j sigma_z^k for i<j<k:
// J_ijk = (1/hbar) sum_lrs C_lrs eps_il eps_jr eps_ks.
TripleMap three_body_coulomb(const Tensor3& c, const LambDickeMatrix& eps);

// Phonon-occupation-dependent longitudinal field per ion:
// (1/hbar) sum_ik C_iik eps_nk (2 n_i + 1), rad/s.
Eigen::VectorXd local_field_corrections(const Tensor3& c, const LambDickeMatrix& eps,
                                        const std::vector<int>& occupations);

// Largest coefficients of the phonon-number-violating terms dropped in the
// rotating-wave treatment, rad/s:
//  two_body_max:  max over (i, n<m) of |sum_jk C_ijk eps_nj eps_mk| / hbar,
//                 the (a_i^+ + a_i) sigma_n sigma_m amplitude;
//  pair_max:      max over (i<=j, n) of the a_i a_j-type sigma_n amplitude
//                 |w sum_k C_ijk eps_nk| / hbar with w = 1 (i<j), 1/2 (i=j).
struct SpinPhononMagnitudes {
    double two_body_max = 0.0;
    double pair_max = 0.0;
};
SpinPhononMagnitudes spin_phonon_magnitudes(const Tensor3& c, const LambDickeMatrix& eps);

// min over i<=j, any k of |nu_i + nu_j - nu_k| (two-to-one conversion gap).
double phonon_resonance_gap(const ModeDecomposition& modes);

// Three-spin couplings from a per-ion cubic trap anharmonicity:
// hbar J_ijk = sum_n alpha_n J_in J_jn J_kn / (domega_n)^3 with the
// diagonal-included J matrix. alpha_n != 0 at an ion with zero gradient is
// rejected.
TripleMap three_body_trap(const Eigen::MatrixXd& j2_full, const ResonanceProfile& res,
                          const std::vector<double>& alpha_n);

// Order-of-magnitude companion: hbar J3 = alpha dz^3 eps^3 / sqrt(N) with the
// centre-of-mass estimate eps = |domega| dz / (omega_z sqrt(N)).
double three_body_trap_estimate(int n_ions, double alpha, const Configuration& cfg);

// Field-curvature-induced three-spin couplings.
//  unsym[n](i, j) = gamma_n J_ni J_nj  (symmetric in i,j; generically not in n);
//  symmetrized[i<j<k] = gamma_i J_ij J_ik + gamma_j J_ji J_jk + gamma_k J_ki J_kj.
struct CurvatureCouplings {
    std::vector<Eigen::MatrixXd> unsym;
    TripleMap symmetrized;
};
CurvatureCouplings three_body_curvature(const Eigen::MatrixXd& j2_full,
                                        const ResonanceProfile& res);

// Mixed axial-transversal cubic tensor in the mode frame, indexed
// [axial mode][transversal mode][transversal mode]:
// C^a_ltt' = -3 dz_l da_t da_t' sum_mnp Btilde_mnp S3_pl Sa_mt Sa_nt'.
Tensor3 mode_frame_cubic_transversal(const CubicTensor& btilde,
                                     const ModeDecomposition& axial,
                                     const ModeDecomposition& transversal);

// Local-field corrections mediated by transversal phonons plus the largest
// axial-transversal three-mode coupling amplitude. One entry of c_alpha /
// occupations per transversal direction.
struct TransversalCorrections {
    Eigen::VectorXd local_field;      // rad/s per ion
    double mode_coupling_max = 0.0;   // max |C^a| / hbar, rad/s
};
TransversalCorrections transversal_corrections(
    const std::vector<Tensor3>& c_alpha, const LambDickeMatrix& eps_axial,
    const std::vector<std::vector<int>>& occupations);

// Full per-configuration evaluation of every interaction strength.
struct CouplingReport {
    ChainSolution chain;
    ModeDecomposition modes;            // axial
    ResonanceProfile resonance;
    LambDickeMatrix eps;                // axial
    Eigen::MatrixXd j2;                 // rad/s, zero diagonal
    Eigen::MatrixXd j2_full;            // rad/s, self terms kept
    Tensor3 c;                          // J, includes trap anharmonicity
    TripleMap j3_coulomb;               // rad/s
    TripleMap j3_trap;                  // rad/s, empty when alpha = 0
    std::vector<Eigen::MatrixXd> j3_curvature;   // rad/s, empty when d2B = 0
    TripleMap j3_curvature_symmetrized;          // rad/s
    Eigen::VectorXd local_field;        // rad/s
    SpinPhononMagnitudes spin_phonon;   // rad/s
    double resonance_gap = 0.0;         // rad/s
    Eigen::VectorXd transversal_local_field;     // rad/s, empty without omega_radial
    double transversal_mode_coupling_max = 0.0;  // rad/s
};

CouplingReport compute_couplings(const Configuration& cfg);

}  // namespace magic
