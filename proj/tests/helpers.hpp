// helpers.hpp — shared test fixtures: finite-difference derivative oracles on
// the raw potential, naive contraction references, and canonical
// configurations. Everything here is deliberately independent of the library's
// internal evaluation paths.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magic/config.hpp"
#include "magic/constants.hpp"
#include "magic/couplings.hpp"

namespace testutil {

inline magic::Configuration make_config(int n_ions, double gradient_t_per_m,
                                        std::map<std::string, std::string> extra = {}) {
    std::map<std::string, std::string> raw{{"n_ions", std::to_string(n_ions)},
                                           {"omega_z_hz", "130e3"},
                                           {"dB_dz", std::to_string(gradient_t_per_m)}};
    for (auto& [k, v] : extra) raw[k] = v;
    return magic::validate_config(raw);
}

// Dimensionless 1D chain energy: sum u^2/2 + sum_{i<j} 1/|u_i - u_j|.
inline double axial_energy(const Eigen::VectorXd& u) {
    double v = 0.5 * u.squaredNorm();
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j) v += 1.0 / std::abs(u[i] - u[j]);
    return v;
}

// Dimensionless 3D energy with radial confinement ratio r = omega_radial/omega_z.
inline double energy_3d(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z, double r) {
    double v = 0.0;
    for (int i = 0; i < z.size(); ++i)
        v += 0.5 * z[i] * z[i] + 0.5 * r * r * (x[i] * x[i] + y[i] * y[i]);
    for (int i = 0; i < z.size(); ++i)
        for (int j = i + 1; j < z.size(); ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j], dz = z[i] - z[j];
            v += 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
        }
    return v;
}

// Central second derivative with one Richardson step (h^4 accurate).
inline double second_derivative(const std::function<double(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& u0, int i, int j, double h) {
    auto probe = [&](double hh) {
        if (i == j) {
            Eigen::VectorXd up = u0, um = u0;
            up[i] += hh;
            um[i] -= hh;
            return (f(up) - 2.0 * f(u0) + f(um)) / (hh * hh);
        }
        Eigen::VectorXd upp = u0, upm = u0, ump = u0, umm = u0;
        upp[i] += hh; upp[j] += hh;
        upm[i] += hh; upm[j] -= hh;
        ump[i] -= hh; ump[j] += hh;
        umm[i] -= hh; umm[j] -= hh;
        return (f(upp) - f(upm) - f(ump) + f(umm)) / (4.0 * hh * hh);
    };
    return (4.0 * probe(h) - probe(2.0 * h)) / 3.0;
}

// Central third derivative with one Richardson step.
inline double third_derivative(const std::function<double(const Eigen::VectorXd&)>& f,
                               const Eigen::VectorXd& u0, int i, int j, int k, double h) {
    auto probe = [&](double hh) -> double {
        if (i == j && j == k) {
            auto shift = [&](double s) {
                Eigen::VectorXd u = u0;
                u[i] += s;
                return f(u);
            };
            return (shift(2 * hh) - 2 * shift(hh) + 2 * shift(-hh) - shift(-2 * hh)) /
                   (2 * hh * hh * hh);
        }
        if (i == j || j == k || i == k) {
            int pair = i == j ? i : (j == k ? j : i);
            int single = i == j ? k : (j == k ? i : j);
            auto d2_at = [&](double s) {
                Eigen::VectorXd base = u0;
                base[single] += s;
                Eigen::VectorXd up = base, um = base;
                up[pair] += hh;
                um[pair] -= hh;
                return (f(up) - 2.0 * f(base) + f(um)) / (hh * hh);
            };
            return (d2_at(hh) - d2_at(-hh)) / (2.0 * hh);
        }
        double sum = 0.0;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1}) {
                    Eigen::VectorXd u = u0;
                    u[i] += s1 * hh;
                    u[j] += s2 * hh;
                    u[k] += s3 * hh;
                    sum += s1 * s2 * s3 * f(u);
                }
        return sum / (8.0 * hh * hh * hh);
    };
    return (4.0 * probe(h) - probe(2.0 * h)) / 3.0;
}

// Naive six-loop reference for the mode-frame cubic tensor.
inline magic::Tensor3 naive_mode_frame_cubic(const magic::Tensor3& b, const Eigen::MatrixXd& s,
                                             const Eigen::VectorXd& dz) {
    const int n = b.dim();
    magic::Tensor3 c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double sum = 0.0;
                for (int m = 0; m < n; ++m)
                    for (int p = 0; p < n; ++p)
                        for (int l = 0; l < n; ++l)
                            sum += b(m, p, l) * s(m, i) * s(p, j) * s(l, k);
                c(i, j, k) = sum * dz[i] * dz[j] * dz[k];
            }
    return c;
}

// Naive reference for the axial-transversal mode tensor.
inline magic::Tensor3 naive_transversal_cubic(const magic::Tensor3& btilde,
                                              const Eigen::MatrixXd& s_axial,
                                              const Eigen::VectorXd& dz_axial,
                                              const Eigen::MatrixXd& s_trans,
                                              const Eigen::VectorXd& dz_trans) {
    const int n = btilde.dim();
    magic::Tensor3 c(n);
    for (int l = 0; l < n; ++l)
        for (int t = 0; t < n; ++t)
            for (int tp = 0; tp < n; ++tp) {
                double sum = 0.0;
                for (int m = 0; m < n; ++m)
                    for (int q = 0; q < n; ++q)
                        for (int p = 0; p < n; ++p)
                            sum += btilde(m, q, p) * s_axial(p, l) * s_trans(m, t) * s_trans(q, tp);
                c(l, t, tp) = -3.0 * dz_axial[l] * dz_trans[t] * dz_trans[tp] * sum;
            }
    return c;
}

inline double max_abs_triple(const magic::TripleMap& map) {
    double best = 0.0;
    for (const auto& [key, value] : map) best = std::max(best, std::abs(value));
    return best;
}

// Flip the gauge of one participation-matrix column and rebuild the
// Lamb-Dicke matrix accordingly.
inline std::pair<magic::ModeDecomposition, magic::LambDickeMatrix> flip_gauge(
    const magic::ModeDecomposition& modes, const magic::ResonanceProfile& res, int column) {
    magic::ModeDecomposition flipped = modes;
    flipped.S.col(column) *= -1.0;
    return {flipped, magic::lamb_dicke(flipped, res)};
}

}  // namespace testutil
