#include "magic/couplings.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "magic/constants.hpp"

namespace magic {

namespace {

void check_shapes(const Tensor3& c, const LambDickeMatrix& eps) {
    if (c.dim() != static_cast<int>(eps.eps.cols()))
        throw std::invalid_argument("tensor/mode-count mismatch between C and epsilon");
}

}  // namespace

LambDickeMatrix lamb_dicke(const ModeDecomposition& modes, const ResonanceProfile& res) {
    const int n_ions = static_cast<int>(res.domega.size());
    const int n_modes = static_cast<int>(modes.nu.size());
    if (n_ions != static_cast<int>(modes.S.rows()))
        throw std::invalid_argument("lamb_dicke: ion count mismatch");

    LambDickeMatrix ld;
    ld.direction = modes.direction;
    ld.eps.resize(n_ions, n_modes);
    for (int n = 0; n < n_ions; ++n)
        for (int l = 0; l < n_modes; ++l)
            ld.eps(n, l) = modes.dz[l] * res.domega[n] * modes.S(n, l) / modes.nu[l];
    return ld;
}

Eigen::MatrixXd spin_spin_couplings_full(
    const LambDickeMatrix& eps, const ModeDecomposition& modes,
    const std::vector<std::pair<LambDickeMatrix, ModeDecomposition>>& extra) {
    // Gram-matrix form keeps the result symmetric to the last bit.
    const int n = static_cast<int>(eps.eps.rows());
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd g = eps.eps * modes.nu.cwiseSqrt().asDiagonal();
    j.selfadjointView<Eigen::Lower>().rankUpdate(g);
    for (const auto& [e, m] : extra) {
        g = e.eps * m.nu.cwiseSqrt().asDiagonal();
        j.selfadjointView<Eigen::Lower>().rankUpdate(g);
    }
    j.triangularView<Eigen::StrictlyUpper>() = j.transpose();
    return j;
}

Eigen::MatrixXd spin_spin_couplings(
    const LambDickeMatrix& eps, const ModeDecomposition& modes,
    const std::vector<std::pair<LambDickeMatrix, ModeDecomposition>>& extra) {
    Eigen::MatrixXd j = spin_spin_couplings_full(eps, modes, extra);
    j.diagonal().setZero();
    return j;
}

Tensor3 mode_frame_cubic(const CubicTensor& b, const ModeDecomposition& modes) {
    const int n = b.values.dim();
    if (n != static_cast<int>(modes.S.rows()))
        throw std::invalid_argument("mode_frame_cubic: size mismatch");
    // Successive single-index transforms keep this at O(N^4).
    Tensor3 t1(n), t2(n), c(n);
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l) sum += b.values(m, j, l) * modes.S(l, k);
                t1(m, j, k) = sum;
            }
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l) sum += t1(m, l, k) * modes.S(l, j);
                t2(m, j, k) = sum;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l) sum += t2(l, j, k) * modes.S(l, i);
                c(i, j, k) = sum * modes.dz[i] * modes.dz[j] * modes.dz[k];
            }
    return c;
}

TripleMap three_body_coulomb(const Tensor3& c, const LambDickeMatrix& eps) {
    check_shapes(c, eps);
    const int n_modes = c.dim();
    const int n_ions = static_cast<int>(eps.eps.rows());

    // hbar J_ijk = sum_lrs C_lrs eps_il eps_jr eps_ks; contract one index at a time.
    std::vector<Eigen::MatrixXd> half(n_modes);  // half[s](i, r) = sum_l eps_il C_lrs
    for (int s = 0; s < n_modes; ++s) {
        Eigen::MatrixXd slice(n_modes, n_modes);
        for (int l = 0; l < n_modes; ++l)
            for (int r = 0; r < n_modes; ++r) slice(l, r) = c(l, r, s);
        half[s] = eps.eps * slice;
    }
    TripleMap out;
    for (int i = 0; i < n_ions; ++i)
        for (int j = i + 1; j < n_ions; ++j)
            for (int k = j + 1; k < n_ions; ++k) {
                double sum = 0.0;
                for (int s = 0; s < n_modes; ++s) {
                    double inner = 0.0;
                    for (int r = 0; r < n_modes; ++r) inner += half[s](i, r) * eps.eps(j, r);
                    sum += inner * eps.eps(k, s);
                }
                out[{i, j, k}] = sum / constants::hbar;
            }
    return out;
}

Eigen::VectorXd local_field_corrections(const Tensor3& c, const LambDickeMatrix& eps,
                                        const std::vector<int>& occupations) {
    check_shapes(c, eps);
    const int n_modes = c.dim();
    if (static_cast<int>(occupations.size()) != n_modes)
        throw std::invalid_argument("local_field_corrections: occupations length mismatch");
    Eigen::VectorXd weight(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        double sum = 0.0;
        for (int i = 0; i < n_modes; ++i) sum += c(i, i, k) * (2.0 * occupations[i] + 1.0);
        weight[k] = sum;
    }
    return eps.eps * weight / constants::hbar;
}

SpinPhononMagnitudes spin_phonon_magnitudes(const Tensor3& c, const LambDickeMatrix& eps) {
    check_shapes(c, eps);
    const int n_modes = c.dim();
    const int n_ions = static_cast<int>(eps.eps.rows());
    SpinPhononMagnitudes mags;

    // (a_i^+ + a_i) sigma_n sigma_m amplitude, distinct spins.
    for (int i = 0; i < n_modes; ++i) {
        Eigen::MatrixXd slice(n_modes, n_modes);
        for (int j = 0; j < n_modes; ++j)
            for (int k = 0; k < n_modes; ++k) slice(j, k) = c(i, j, k);
        Eigen::MatrixXd amp = eps.eps * slice * eps.eps.transpose();
        for (int n = 0; n < n_ions; ++n)
            for (int m = n + 1; m < n_ions; ++m)
                mags.two_body_max = std::max(mags.two_body_max, std::abs(amp(n, m)));
    }
    mags.two_body_max /= constants::hbar;

    // a_i a_j-type sigma_n amplitude; equal-mode pairs carry the 1/2 that the
    // i != j orderings absorb.
    for (int i = 0; i < n_modes; ++i)
        for (int j = i; j < n_modes; ++j) {
            double w = (i == j) ? 0.5 : 1.0;
            for (int n = 0; n < n_ions; ++n) {
                double sum = 0.0;
                for (int k = 0; k < n_modes; ++k) sum += c(i, j, k) * eps.eps(n, k);
                mags.pair_max = std::max(mags.pair_max, std::abs(w * sum));
            }
        }
    mags.pair_max /= constants::hbar;
    return mags;
}

double phonon_resonance_gap(const ModeDecomposition& modes) {
    const int n = static_cast<int>(modes.nu.size());
    double best = -1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double gap = std::abs(modes.nu[i] + modes.nu[j] - modes.nu[k]);
                if (best < 0.0 || gap < best) best = gap;
            }
    return best;
}

TripleMap three_body_trap(const Eigen::MatrixXd& j2_full, const ResonanceProfile& res,
                          const std::vector<double>& alpha_n) {
    const int n = static_cast<int>(j2_full.rows());
    if (static_cast<int>(alpha_n.size()) != n)
        throw std::invalid_argument("three_body_trap: alpha_n length mismatch");
    for (int i = 0; i < n; ++i)
        if (alpha_n[i] != 0.0 && res.domega[i] == 0.0)
            throw std::invalid_argument(
                "three_body_trap: nonzero anharmonicity at ion " + std::to_string(i + 1) +
                " with zero resonance gradient");

    TripleMap out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double sum = 0.0;
                for (int m = 0; m < n; ++m) {
                    if (alpha_n[m] == 0.0) continue;
                    double d = res.domega[m];
                    sum += alpha_n[m] * j2_full(i, m) * j2_full(j, m) * j2_full(k, m) / (d * d * d);
                }
                out[{i, j, k}] = sum / constants::hbar;
            }
    return out;
}

double three_body_trap_estimate(int n_ions, double alpha, const Configuration& cfg) {
    const double dz = std::sqrt(constants::hbar / (2.0 * cfg.species_mass * cfg.omega_z));
    const double domega =
        std::abs(cfg.g_factor_combination) * constants::bohr_magneton * std::abs(cfg.dB_dz) /
        constants::hbar;
    const double eps = domega * dz / (cfg.omega_z * std::sqrt(static_cast<double>(n_ions)));
    return alpha * dz * dz * dz * eps * eps * eps /
           (std::sqrt(static_cast<double>(n_ions)) * constants::hbar);
}

CurvatureCouplings three_body_curvature(const Eigen::MatrixXd& j2_full,
                                        const ResonanceProfile& res) {
    const int n = static_cast<int>(j2_full.rows());
    CurvatureCouplings out;
    out.unsym.assign(n, Eigen::MatrixXd::Zero(n, n));
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n);
    for (int m = 0; m < n; ++m) {
        if (res.gamma[m]) {
            gamma[m] = *res.gamma[m];
        } else if (res.d2omega[m] != 0.0) {
            throw std::invalid_argument(
                "three_body_curvature: undefined gamma (zero gradient, nonzero curvature) at ion " +
                std::to_string(m + 1));
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.unsym[m](i, j) = gamma[m] * (j2_full(m, i) * j2_full(m, j));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                out.symmetrized[{i, j, k}] = gamma[i] * (j2_full(i, j) * j2_full(i, k)) +
                                             gamma[j] * (j2_full(j, i) * j2_full(j, k)) +
                                             gamma[k] * (j2_full(k, i) * j2_full(k, j));
    return out;
}

Tensor3 mode_frame_cubic_transversal(const CubicTensor& btilde, const ModeDecomposition& axial,
                                     const ModeDecomposition& transversal) {
    if (btilde.kind != CubicKind::coulomb_transversal)
        throw std::invalid_argument("mode_frame_cubic_transversal: expected a transversal tensor");
    const int n = btilde.values.dim();
    Tensor3 out(n);
    // C^a_ltt' = -3 dz_l da_t da_t' sum_mnp B~_mnp S3_pl Sa_mt Sa_nt'.
    Tensor3 t1(n), t2(n);
    for (int m = 0; m < n; ++m)
        for (int q = 0; q < n; ++q)
            for (int l = 0; l < n; ++l) {
                double sum = 0.0;
                for (int p = 0; p < n; ++p) sum += btilde.values(m, q, p) * axial.S(p, l);
                t1(m, q, l) = sum;
            }
    for (int m = 0; m < n; ++m)
        for (int t = 0; t < n; ++t)
            for (int l = 0; l < n; ++l) {
                double sum = 0.0;
                for (int q = 0; q < n; ++q) sum += t1(m, q, l) * transversal.S(q, t);
                t2(m, t, l) = sum;
            }
    for (int l = 0; l < n; ++l)
        for (int t = 0; t < n; ++t)
            for (int tp = 0; tp < n; ++tp) {
                double sum = 0.0;
                for (int m = 0; m < n; ++m) sum += t2(m, t, l) * transversal.S(m, tp);
                // Stored as [axial][trans][trans]; symmetric in the last two.
                out(l, tp, t) = -3.0 * axial.dz[l] * transversal.dz[t] * transversal.dz[tp] * sum;
            }
    return out;
}

TransversalCorrections transversal_corrections(const std::vector<Tensor3>& c_alpha,
                                               const LambDickeMatrix& eps_axial,
                                               const std::vector<std::vector<int>>& occupations) {
    if (c_alpha.size() != occupations.size())
        throw std::invalid_argument("transversal_corrections: one occupation list per direction");
    const int n_ions = static_cast<int>(eps_axial.eps.rows());
    const int n_modes = static_cast<int>(eps_axial.eps.cols());

    TransversalCorrections out;
    out.local_field = Eigen::VectorXd::Zero(n_ions);
    for (std::size_t a = 0; a < c_alpha.size(); ++a) {
        const Tensor3& c = c_alpha[a];
        if (c.dim() != n_modes)
            throw std::invalid_argument("transversal_corrections: tensor size mismatch");
        if (static_cast<int>(occupations[a].size()) != n_modes)
            throw std::invalid_argument("transversal_corrections: occupations length mismatch");
        Eigen::VectorXd weight(n_modes);
        for (int l = 0; l < n_modes; ++l) {
            double sum = 0.0;
            for (int t = 0; t < n_modes; ++t) sum += c(l, t, t) * (2.0 * occupations[a][t] + 1.0);
            weight[l] = sum;
        }
        out.local_field += eps_axial.eps * weight / constants::hbar;
        out.mode_coupling_max = std::max(out.mode_coupling_max, c.max_abs() / constants::hbar);
    }
    return out;
}

CouplingReport compute_couplings(const Configuration& cfg) {
    CouplingReport report;
    report.chain = solve_equilibrium(cfg.n_ions, cfg);
    report.modes = normal_modes(axial_hessian(report.chain, cfg), cfg, Direction::axial);
    report.resonance = resonance_profile(field_from_config(cfg), report.chain, cfg);
    report.eps = lamb_dicke(report.modes, report.resonance);

    report.j2_full = spin_spin_couplings_full(report.eps, report.modes);
    report.j2 = report.j2_full;
    report.j2.diagonal().setZero();

    CubicTensor b = add_trap_anharmonicity(cubic_tensor_axial(report.chain, cfg), cfg.alpha_n);
    report.c = mode_frame_cubic(b, report.modes);
    report.j3_coulomb = three_body_coulomb(report.c, report.eps);
    report.local_field = local_field_corrections(report.c, report.eps, cfg.phonon_occupations);
    report.spin_phonon = spin_phonon_magnitudes(report.c, report.eps);
    report.resonance_gap = phonon_resonance_gap(report.modes);

    bool has_alpha = false;
    for (double a : cfg.alpha_n) has_alpha |= (a != 0.0);
    if (has_alpha)
        report.j3_trap = three_body_trap(report.j2_full, report.resonance, cfg.alpha_n);

    if (cfg.d2B_dz2 != 0.0) {
        CurvatureCouplings curvature = three_body_curvature(report.j2_full, report.resonance);
        report.j3_curvature = std::move(curvature.unsym);
        report.j3_curvature_symmetrized = std::move(curvature.symmetrized);
    }

    if (cfg.omega_radial) {
        ModeDecomposition trans =
            normal_modes(transversal_hessian(report.chain, cfg), cfg, Direction::transversal_1);
        CubicTensor btilde = cubic_tensor_transversal(report.chain, cfg);
        Tensor3 c_alpha = mode_frame_cubic_transversal(btilde, report.modes, trans);
        std::vector<int> ground(cfg.n_ions, 0);
        // Two degenerate transversal directions with ground-state phonons.
        TransversalCorrections corr =
            transversal_corrections({c_alpha, c_alpha}, report.eps, {ground, ground});
        report.transversal_local_field = std::move(corr.local_field);
        report.transversal_mode_coupling_max = corr.mode_coupling_max;
    }
    return report;
}

}  // namespace magic
