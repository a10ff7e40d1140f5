#include "magic/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "magic/constants.hpp"

namespace magic {

namespace {

// Gradient of the dimensionless energy sum_i u_i^2/2 + sum_{i<j} 1/|u_i - u_j|.
Eigen::VectorXd force_residual(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::VectorXd g = u;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d = u[i] - u[j];
            g[i] -= (d > 0 ? 1.0 : -1.0) / (d * d);
        }
    }
    return g;
}

Eigen::MatrixXd dimensionless_axial_hessian(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d3 = std::abs(u[i] - u[j]);
            d3 = d3 * d3 * d3;
            a(i, i) += 2.0 / d3;
            a(i, j) -= 2.0 / d3;
        }
    }
    return a;
}

ChainSolution finish_solution(Eigen::VectorXd u, const Configuration& cfg, double residual,
                              int iterations) {
    ChainSolution chain;
    chain.l = characteristic_length(cfg);
    chain.u = std::move(u);
    chain.z0 = chain.l * chain.u;
    chain.residual = residual;
    chain.iterations = iterations;
    return chain;
}

}  // namespace

double characteristic_length(const Configuration& cfg) {
    const double e2 = constants::elementary_charge * constants::elementary_charge;
    const double denom = 4.0 * M_PI * constants::vacuum_permittivity * cfg.species_mass *
                         cfg.omega_z * cfg.omega_z;
    return std::cbrt(e2 / denom);
}

ChainSolution solve_equilibrium_from(const Eigen::VectorXd& guess, const Configuration& cfg) {
    constexpr double tolerance = 1e-12;
    constexpr int max_iterations = 200;

    const int n = static_cast<int>(guess.size());
    if (n < 1) throw std::invalid_argument("solve_equilibrium: need at least one ion");
    if (n == 1) return finish_solution(Eigen::VectorXd::Zero(1), cfg, 0.0, 0);

    Eigen::VectorXd u = guess;
    Eigen::VectorXd g = force_residual(u);
    double res = g.cwiseAbs().maxCoeff();
    int it = 0;
    for (; it < max_iterations && res > tolerance; ++it) {
        Eigen::MatrixXd h = dimensionless_axial_hessian(u);
        Eigen::VectorXd step = h.ldlt().solve(g);
        // The Hessian is strictly diagonally dominant, so the Newton direction
        // descends in ||g||_2; halve the step until that norm drops.
        double norm2 = g.squaredNorm();
        double scale = 1.0;
        bool improved = false;
        while (scale > 1e-8) {
            Eigen::VectorXd u_next = u - scale * step;
            Eigen::VectorXd g_next = force_residual(u_next);
            if (g_next.allFinite() && g_next.squaredNorm() < norm2) {
                u = u_next;
                g = g_next;
                res = g.cwiseAbs().maxCoeff();
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved) break;  // stalled
    }
    if (res > tolerance) {
        char msg[120];
        std::snprintf(msg, sizeof msg,
                      "equilibrium solver did not converge: residual %.3e after %d iterations", res,
                      it);
        throw std::runtime_error(msg);
    }
    std::sort(u.begin(), u.end());
    return finish_solution(std::move(u), cfg, res, it);
}

ChainSolution solve_equilibrium(int n_ions, const Configuration& cfg) {
    if (n_ions < 1) throw std::invalid_argument("solve_equilibrium: n_ions must be >= 1");
    if (n_ions == 1) return finish_solution(Eigen::VectorXd::Zero(1), cfg, 0.0, 0);
    // Uniform spacing over a span that tracks the slow growth of the crystal.
    const double half_span = 0.5 * n_ions * (2.0 / std::pow(n_ions, 0.56));
    Eigen::VectorXd guess = Eigen::VectorXd::LinSpaced(n_ions, -half_span, half_span);
    return solve_equilibrium_from(guess, cfg);
}

Eigen::MatrixXd axial_hessian(const ChainSolution& chain, const Configuration& cfg) {
    const double scale = cfg.species_mass * cfg.omega_z * cfg.omega_z;
    return scale * dimensionless_axial_hessian(chain.u);
}

Eigen::MatrixXd transversal_hessian(const ChainSolution& chain, const Configuration& cfg) {
    if (!cfg.omega_radial)
        throw std::invalid_argument("transversal analysis requires omega_radial");
    const int n = static_cast<int>(chain.u.size());
    const double ratio2 = (*cfg.omega_radial / cfg.omega_z) * (*cfg.omega_radial / cfg.omega_z);
    Eigen::MatrixXd a = ratio2 * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d3 = std::abs(chain.u[i] - chain.u[j]);
            d3 = d3 * d3 * d3;
            a(i, i) -= 1.0 / d3;
            a(i, j) += 1.0 / d3;
        }
    }
    return cfg.species_mass * cfg.omega_z * cfg.omega_z * a;
}

ModeDecomposition normal_modes(const Eigen::MatrixXd& hessian, const Configuration& cfg,
                               Direction direction) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("normal_modes: eigen decomposition failed");

    const int n = static_cast<int>(hessian.rows());
    ModeDecomposition modes;
    modes.direction = direction;
    modes.S = solver.eigenvectors();  // ascending eigenvalues
    modes.nu.resize(n);
    modes.dz.resize(n);
    for (int k = 0; k < n; ++k) {
        double lambda = solver.eigenvalues()[k];
        if (lambda <= 0.0) throw std::runtime_error("unstable configuration");
        modes.nu[k] = std::sqrt(lambda / cfg.species_mass);
        modes.dz[k] = std::sqrt(constants::hbar / (2.0 * cfg.species_mass * modes.nu[k]));
        // Gauge: largest-magnitude entry positive, ties resolved to the lowest index.
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(modes.S(i, k)) > std::abs(modes.S(arg, k))) arg = i;
        if (modes.S(arg, k) < 0.0) modes.S.col(k) = -modes.S.col(k);
    }
    return modes;
}

CubicTensor cubic_tensor_axial(const ChainSolution& chain, const Configuration& cfg) {
    const int n = static_cast<int>(chain.u.size());
    CubicTensor b{CubicKind::coulomb_axial, Tensor3(n)};
    const double scale = -6.0 * cfg.species_mass * cfg.omega_z * cfg.omega_z / chain.l;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double sum = 0.0;
                for (int q = 0; q < n; ++q) {
                    if (q == i) continue;
                    double d = chain.u[i] - chain.u[q];
                    double ad = std::abs(d);
                    double factor = ((i == j) - (q == j)) * ((i == k) - (q == k));
                    if (factor != 0.0) sum += factor * d / (ad * ad * ad * ad * ad);
                }
                b.values(i, j, k) = scale * sum;
            }
        }
    }
    return b;
}

CubicTensor cubic_tensor_transversal(const ChainSolution& chain, const Configuration& cfg) {
    const int n = static_cast<int>(chain.u.size());
    CubicTensor b{CubicKind::coulomb_transversal, Tensor3(n)};
    const double scale = cfg.species_mass * cfg.omega_z * cfg.omega_z / (2.0 * chain.l);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double sum = 0.0;
                for (int q = 0; q < n; ++q) {
                    if (q == i) continue;
                    double d = chain.u[q] - chain.u[i];
                    double factor = ((i == j) - (q == j)) * ((i == k) - (q == k));
                    if (factor != 0.0) sum += factor * (d > 0 ? 1.0 : -1.0) / (d * d * d * d);
                }
                b.values(i, j, k) = scale * sum;
            }
        }
    }
    return b;
}

CubicTensor add_trap_anharmonicity(CubicTensor tensor, const std::vector<double>& alpha_n) {
    if (static_cast<int>(alpha_n.size()) != tensor.values.dim())
        throw std::invalid_argument("add_trap_anharmonicity: alpha_n length mismatch");
    for (int i = 0; i < tensor.values.dim(); ++i) tensor.values(i, i, i) += alpha_n[i];
    return tensor;
}

}  // namespace magic
