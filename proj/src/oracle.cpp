#include "magic/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "magic/constants.hpp"

namespace magic {

namespace {

// Single-mode ladder operator on the truncated Fock ladder.
Eigen::MatrixXd lowering(int cutoff) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Kronecker product honoring the mode-0-fastest index convention:
// index = sum_l occ_l (cutoff+1)^l, so mode M-1 is the slowest factor.
Eigen::MatrixXd kron(const Eigen::MatrixXd& slow, const Eigen::MatrixXd& fast) {
    Eigen::MatrixXd out(slow.rows() * fast.rows(), slow.cols() * fast.cols());
    for (int i = 0; i < slow.rows(); ++i)
        for (int j = 0; j < slow.cols(); ++j)
            out.block(i * fast.rows(), j * fast.cols(), fast.rows(), fast.cols()) =
                slow(i, j) * fast;
    return out;
}

// Embeds per-mode factors (factors[l] acts on mode l) into the full Fock space.
Eigen::MatrixXd embed(const std::vector<Eigen::MatrixXd>& factors) {
    Eigen::MatrixXd out = factors.back();
    for (int l = static_cast<int>(factors.size()) - 2; l >= 0; --l) out = kron(out, factors[l]);
    return out;
}

std::string pauli_label(unsigned subset, int n_ions) {
    std::string label;
    for (int n = 0; n < n_ions; ++n)
        if (subset & (1u << n)) label += "Z" + std::to_string(n + 1);
    return label;
}

}  // namespace

TruncatedSpace::TruncatedSpace(int ions, int modes, int max_occupation)
    : n_ions(ions), n_modes(modes), cutoff(max_occupation) {
    if (ions < 1 || ions > 3)
        throw std::invalid_argument("TruncatedSpace: oracle supports 1 to 3 ions");
    if (modes < 1) throw std::invalid_argument("TruncatedSpace: need at least one mode");
    if (max_occupation < 1) throw std::invalid_argument("TruncatedSpace: cutoff must be >= 1");
    if (dimension() > max_dimension)
        throw std::invalid_argument("TruncatedSpace: dimension " + std::to_string(dimension()) +
                                    " exceeds guard " + std::to_string(max_dimension));
}

std::size_t TruncatedSpace::fock_dim() const {
    std::size_t d = 1;
    for (int l = 0; l < n_modes; ++l) d *= static_cast<std::size_t>(cutoff + 1);
    return d;
}

std::size_t TruncatedSpace::dimension() const {
    return (std::size_t{1} << n_ions) * fock_dim();
}

double sector_sigma_z(unsigned sector, int ion) {
    return (sector >> ion) & 1u ? -1.0 : 1.0;
}

namespace {

// Cubic phonon term (1/6) sum_lrs C_lrs X_l X_r X_s; sector independent.
Eigen::MatrixXd cubic_term(const OracleProblem& p, const TruncatedSpace& space) {
    const int m = space.n_modes;
    const int d1 = space.cutoff + 1;
    const Eigen::MatrixXd a = lowering(space.cutoff);
    const Eigen::MatrixXd x1 = a + a.transpose();
    const Eigen::MatrixXd id1 = Eigen::MatrixXd::Identity(d1, d1);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(space.fock_dim(), space.fock_dim());
    for (int l = 0; l < m; ++l)
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) {
                double coeff = p.c(l, r, s) / 6.0;
                if (coeff == 0.0) continue;
                std::vector<Eigen::MatrixXd> factors(m, id1);
                for (int mode : {l, r, s}) factors[mode] *= x1;
                v += coeff * embed(factors);
            }
    return v;
}

// Resonance + phonon + gradient-coupling terms within one spin sector.
Eigen::MatrixXd quadratic_sector(const OracleProblem& p, const TruncatedSpace& space,
                                 unsigned sector) {
    const int m = space.n_modes;
    const int d1 = space.cutoff + 1;
    const std::size_t dim = space.fock_dim();
    const double hbar = constants::hbar;

    const Eigen::MatrixXd a = lowering(space.cutoff);
    const Eigen::MatrixXd x1 = a + a.transpose();
    const Eigen::MatrixXd id1 = Eigen::MatrixXd::Identity(d1, d1);
    Eigen::MatrixXd number1 = Eigen::MatrixXd::Zero(d1, d1);
    for (int n = 0; n <= space.cutoff; ++n) number1(n, n) = n;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    // Qubit resonance energies: constant within a sector.
    double spin_energy = 0.0;
    for (int n = 0; n < space.n_ions; ++n)
        spin_energy += -0.5 * hbar * p.res.omega[n] * sector_sigma_z(sector, n);
    h.diagonal().array() += spin_energy;

    for (int l = 0; l < m; ++l) {
        std::vector<Eigen::MatrixXd> factors(m, id1);
        factors[l] = number1;
        h += hbar * p.modes.nu[l] * embed(factors);

        // Gradient coupling - (hbar/2) sum_n domega_n S_nl dz_l X_l sigma_z^n.
        double g = 0.0;
        for (int n = 0; n < space.n_ions; ++n)
            g += p.res.domega[n] * p.modes.S(n, l) * p.modes.dz[l] * sector_sigma_z(sector, n);
        factors[l] = x1;
        h += -0.5 * hbar * g * embed(factors);
    }
    return h;
}

}  // namespace

Eigen::MatrixXd sector_hamiltonian(const OracleProblem& p, const TruncatedSpace& space,
                                   unsigned sector, int order) {
    if (order != 2 && order != 3)
        throw std::invalid_argument("sector_hamiltonian: order must be 2 or 3");
    Eigen::MatrixXd h = quadratic_sector(p, space, sector);
    if (order == 3) h += cubic_term(p, space);
    return h;
}

Eigen::MatrixXd sector_polaron_unitary(const LambDickeMatrix& eps, const TruncatedSpace& space,
                                       unsigned sector) {
    const int m = space.n_modes;
    const Eigen::MatrixXd a = lowering(space.cutoff);

    // Per-mode generators beta_l (a^+ - a) commute across modes, so the full
    // exponential factorizes into per-mode matrix exponentials.
    std::vector<Eigen::MatrixXd> factors;
    factors.reserve(m);
    for (int l = 0; l < m; ++l) {
        double beta = 0.0;
        for (int n = 0; n < space.n_ions; ++n)
            beta += 0.5 * eps.eps(n, l) * sector_sigma_z(sector, n);
        Eigen::MatrixXd g = beta * (a.transpose() - a);
        factors.push_back(g.exp());
    }
    return embed(factors);
}

Eigen::MatrixXd build_hamiltonian(const OracleProblem& p, const TruncatedSpace& space, int order) {
    const std::size_t fock = space.fock_dim();
    const std::size_t dim = space.dimension();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (unsigned sector = 0; sector < (1u << space.n_ions); ++sector)
        h.block(sector * fock, sector * fock, fock, fock) =
            sector_hamiltonian(p, space, sector, order);
    return h;
}

Eigen::MatrixXd polaron_transform(const Eigen::MatrixXd& h, const LambDickeMatrix& eps,
                                  const TruncatedSpace& space) {
    const std::size_t fock = space.fock_dim();
    if (h.rows() != static_cast<Eigen::Index>(space.dimension()))
        throw std::invalid_argument("polaron_transform: matrix does not match the space");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(h.rows(), h.cols());
    for (unsigned sector = 0; sector < (1u << space.n_ions); ++sector) {
        Eigen::MatrixXd u = sector_polaron_unitary(eps, space, sector);
        out.block(sector * fock, sector * fock, fock, fock) =
            u.transpose() * h.block(sector * fock, sector * fock, fock, fock) * u;
    }
    return out;
}

OracleResult extract_coefficients(const OracleProblem& p, const TruncatedSpace& space,
                                  const std::vector<int>& occupations, int order) {
    const int n_ions = space.n_ions;
    const int m = space.n_modes;
    const double hbar = constants::hbar;
    if (static_cast<int>(occupations.size()) != m)
        throw std::invalid_argument("extract_coefficients: occupations length mismatch");
    std::size_t proj_index = 0;
    std::size_t stride = 1;
    for (int l = 0; l < m; ++l) {
        if (occupations[l] < 0 || occupations[l] > space.cutoff)
            throw std::invalid_argument("extract_coefficients: occupation outside the Fock ladder");
        proj_index += stride * static_cast<std::size_t>(occupations[l]);
        stride *= static_cast<std::size_t>(space.cutoff + 1);
    }

    OracleResult result;
    const unsigned sectors = 1u << n_ions;
    // The quadratic and cubic contributions are projected separately with the
    // same displaced state, so order-3 minus order-2 differences cancel the
    // quadratic part exactly instead of through a large-number subtraction.
    Eigen::MatrixXd v3;
    if (order == 3) v3 = cubic_term(p, space);
    std::vector<double> sector_energy(sectors, 0.0);
    for (unsigned sector = 0; sector < sectors; ++sector) {
        Eigen::MatrixXd h2 = quadratic_sector(p, space, sector);
        Eigen::MatrixXd u = sector_polaron_unitary(p.eps, space, sector);
        double defect =
            (u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
        result.unitarity_defect = std::max(result.unitarity_defect, defect);

        Eigen::VectorXd displaced = u.col(proj_index);
        double energy = displaced.dot(h2 * displaced);
        if (order == 3) energy += displaced.dot(v3 * displaced);
        sector_energy[sector] = energy;

        // Weight of the displaced projection state on the truncation boundary.
        double boundary = 0.0;
        for (std::size_t idx = 0; idx < space.fock_dim(); ++idx) {
            std::size_t rest = idx;
            bool at_cutoff = false;
            for (int l = 0; l < m; ++l) {
                if (static_cast<int>(rest % (space.cutoff + 1)) == space.cutoff) at_cutoff = true;
                rest /= space.cutoff + 1;
            }
            if (at_cutoff) boundary += displaced[idx] * displaced[idx];
        }
        result.truncation_error_estimate = std::max(result.truncation_error_estimate, boundary);
    }

    // Parity decomposition over sigma_z strings.
    for (unsigned subset = 1; subset < sectors; ++subset) {
        double coeff = 0.0;
        for (unsigned sector = 0; sector < sectors; ++sector) {
            double parity = 1.0;
            for (int n = 0; n < n_ions; ++n)
                if (subset & (1u << n)) parity *= sector_sigma_z(sector, n);
            coeff += parity * sector_energy[sector];
        }
        coeff /= static_cast<double>(sectors);
        result.extracted[pauli_label(subset, n_ions)] = coeff / hbar;
    }

    // Closed-form predictions for the same coefficients.
    const Eigen::MatrixXd& eps = p.eps.eps;
    Eigen::MatrixXd j_full = eps * p.modes.nu.asDiagonal() * eps.transpose();
    TripleMap j3 = three_body_coulomb(p.c, p.eps);
    Eigen::MatrixXd overlap = eps.transpose() * eps;  // M_lr = sum_m eps_ml eps_mr

    for (unsigned subset = 1; subset < sectors; ++subset) {
        std::vector<int> ions;
        for (int n = 0; n < n_ions; ++n)
            if (subset & (1u << n)) ions.push_back(n);
        double value = 0.0;
        if (ions.size() == 1) {
            int n = ions[0];
            value = -0.5 * p.res.omega[n];
            if (order == 3) {
                // Phonon-line singles (1/2) sum_lk C_llk eps_nk (2 occ_l + 1) plus the
                // cubic-in-spin singles from coinciding spin indices.
                for (int l = 0; l < m; ++l)
                    for (int k = 0; k < m; ++k)
                        value += 0.5 * p.c(l, l, k) * eps(n, k) * (2.0 * occupations[l] + 1.0) / hbar;
                double spin_part = 0.0;
                for (int l = 0; l < m; ++l)
                    for (int r = 0; r < m; ++r)
                        for (int s = 0; s < m; ++s)
                            spin_part += p.c(l, r, s) * (0.5 * overlap(l, r) * eps(n, s) -
                                                         (1.0 / 3.0) * eps(n, l) * eps(n, r) * eps(n, s));
                value += spin_part / hbar;
            }
        } else if (ions.size() == 2) {
            value = -0.5 * j_full(ions[0], ions[1]);
        } else {
            value = order == 3 ? j3[{ions[0], ions[1], ions[2]}] : 0.0;
        }
        result.analytic[pauli_label(subset, n_ions)] = value;
    }
    return result;
}

OracleResult run_oracle(const Configuration& cfg, int cutoff, int order) {
    if (cfg.n_ions > 3)
        throw std::invalid_argument("oracle: supports at most 3 ions");
    OracleProblem p;
    ChainSolution chain = solve_equilibrium(cfg.n_ions, cfg);
    p.modes = normal_modes(axial_hessian(chain, cfg), cfg, Direction::axial);
    p.res = resonance_profile(field_from_config(cfg), chain, cfg);
    p.eps = lamb_dicke(p.modes, p.res);
    p.c = mode_frame_cubic(add_trap_anharmonicity(cubic_tensor_axial(chain, cfg), cfg.alpha_n),
                           p.modes);
    TruncatedSpace space(cfg.n_ions, cfg.n_ions, cutoff);
    return extract_coefficients(p, space, cfg.phonon_occupations, order);
}

}  // namespace magic
