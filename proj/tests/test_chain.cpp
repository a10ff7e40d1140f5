#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "magic/chain.hpp"
#include "magic/constants.hpp"

using namespace magic;
using testutil::make_config;

namespace {

const Configuration kCfg5 = make_config(5, 19.0);

}  // namespace

TEST_CASE("small chains match the analytic force balance") {
    Configuration cfg1 = make_config(1, 0.0);
    ChainSolution one = solve_equilibrium(1, cfg1);
    CHECK(one.u.size() == 1);
    CHECK(one.u[0] == 0.0);

    ChainSolution two = solve_equilibrium(2, kCfg5);
    const double u2 = std::pow(0.5, 2.0 / 3.0);
    CHECK(two.u[0] == doctest::Approx(-u2).epsilon(1e-12));
    CHECK(two.u[1] == doctest::Approx(u2).epsilon(1e-12));

    ChainSolution three = solve_equilibrium(3, kCfg5);
    const double u3 = std::cbrt(1.25);
    CHECK(three.u[0] == doctest::Approx(-u3).epsilon(1e-12));
    CHECK(three.u[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(three.u[2] == doctest::Approx(u3).epsilon(1e-12));
}

TEST_CASE("equilibrium invariants hold across chain sizes") {
    for (int n : {2, 5, 13, 28, 40}) {
        CAPTURE(n);
        ChainSolution chain = solve_equilibrium(n, kCfg5);
        CHECK(chain.residual < 1e-12);
        CHECK(std::abs(chain.u.sum()) < 1e-10);
        for (int i = 0; i + 1 < n; ++i) CHECK(chain.u[i] < chain.u[i + 1]);
        for (int i = 0; i < n; ++i)
            CHECK(chain.u[i] == doctest::Approx(-chain.u[n - 1 - i]).scale(1.0).epsilon(1e-10));
        CHECK(chain.z0[n - 1] == doctest::Approx(chain.l * chain.u[n - 1]));
    }
}

TEST_CASE("solution is independent of the starting guess") {
    ChainSolution reference = solve_equilibrium(9, kCfg5);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    Eigen::VectorXd guess(9);
    double span = 0.5 * 9 * (2.0 / std::pow(9.0, 0.56));
    for (int i = 0; i < 9; ++i)
        guess[i] = -span + 2.0 * span * i / 8.0 + jitter(rng);
    std::sort(guess.begin(), guess.end());
    ChainSolution perturbed = solve_equilibrium_from(guess, kCfg5);
    for (int i = 0; i < 9; ++i)
        CHECK(perturbed.u[i] == doctest::Approx(reference.u[i]).epsilon(1e-10));
}

TEST_CASE("coincident ions make the solver report its residual") {
    Eigen::VectorXd degenerate = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(solve_equilibrium_from(degenerate, kCfg5), std::runtime_error);
}

TEST_CASE("characteristic length matches its defining relation") {
    double l = characteristic_length(kCfg5);
    double lhs = l * l * l;
    double rhs = constants::elementary_charge * constants::elementary_charge /
                 (4.0 * M_PI * constants::vacuum_permittivity * kCfg5.species_mass *
                  kCfg5.omega_z * kCfg5.omega_z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    CHECK(l == doctest::Approx(1.068e-5).epsilon(1e-3));  // ~10.7 um spacing scale
}

TEST_CASE("axial Hessian: lone ion, two-ion closed form, finite differences") {
    Configuration cfg1 = make_config(1, 0.0);
    ChainSolution one = solve_equilibrium(1, cfg1);
    Eigen::MatrixXd a1 = axial_hessian(one, cfg1);
    CHECK(a1(0, 0) == doctest::Approx(cfg1.species_mass * cfg1.omega_z * cfg1.omega_z)
                          .epsilon(1e-14));

    ChainSolution two = solve_equilibrium(2, kCfg5);
    Eigen::MatrixXd a2 = axial_hessian(two, kCfg5) /
                         (kCfg5.species_mass * kCfg5.omega_z * kCfg5.omega_z);
    CHECK(a2(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a2(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(a2(1, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(a2(1, 1) == doctest::Approx(2.0).epsilon(1e-12));

    for (int n : {2, 3, 5, 7}) {
        CAPTURE(n);
        ChainSolution chain = solve_equilibrium(n, kCfg5);
        Eigen::MatrixXd a = axial_hessian(chain, kCfg5);
        const double scale = kCfg5.species_mass * kCfg5.omega_z * kCfg5.omega_z;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double fd = scale * testutil::second_derivative(testutil::axial_energy, chain.u,
                                                                i, j, 1e-3);
                CHECK(a(i, j) == doctest::Approx(fd).epsilon(1e-6));
            }
    }
}

TEST_CASE("transversal Hessian matches 3D finite differences") {
    Configuration cfg = make_config(4, 19.0, {{"omega_radial_hz", "1.3e6"}});
    ChainSolution chain = solve_equilibrium(4, cfg);
    Eigen::MatrixXd a = transversal_hessian(chain, cfg);
    const double r = *cfg.omega_radial / cfg.omega_z;
    const double scale = cfg.species_mass * cfg.omega_z * cfg.omega_z;
    auto f = [&](const Eigen::VectorXd& x) {
        return testutil::energy_3d(x, Eigen::VectorXd::Zero(4), chain.u, r);
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double fd = scale * testutil::second_derivative(f, Eigen::VectorXd::Zero(4), i, j, 1e-3);
            CHECK(a(i, j) == doctest::Approx(fd).epsilon(1e-6));
        }

    CHECK_THROWS_WITH_AS(transversal_hessian(chain, kCfg5), doctest::Contains("omega_radial"),
                         std::invalid_argument);
}

TEST_CASE("normal modes: frequencies, orthogonality, and gauge") {
    ChainSolution two = solve_equilibrium(2, kCfg5);
    ModeDecomposition m2 = normal_modes(axial_hessian(two, kCfg5), kCfg5, Direction::axial);
    CHECK(m2.nu[0] == doctest::Approx(kCfg5.omega_z).epsilon(1e-12));
    CHECK(m2.nu[1] == doctest::Approx(std::sqrt(3.0) * kCfg5.omega_z).epsilon(1e-12));

    for (int n = 1; n <= 40; ++n) {
        CAPTURE(n);
        Configuration cfg = make_config(n, 19.0);
        ChainSolution chain = solve_equilibrium(n, cfg);
        ModeDecomposition modes = normal_modes(axial_hessian(chain, cfg), cfg, Direction::axial);
        CHECK(modes.nu[0] == doctest::Approx(cfg.omega_z).epsilon(1e-10));
        for (int l = 1; l < n; ++l) CHECK(modes.nu[l] > cfg.omega_z);
        Eigen::MatrixXd gram = modes.S.transpose() * modes.S;
        CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        // centre-of-mass column is uniform and positive under the sign gauge
        for (int i = 0; i < n; ++i)
            CHECK(modes.S(i, 0) == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-9));
        for (int l = 0; l < n; ++l)
            CHECK(modes.dz[l] ==
                  doctest::Approx(std::sqrt(constants::hbar / (2 * cfg.species_mass * modes.nu[l])))
                      .epsilon(1e-14));
    }
}

TEST_CASE("mode frequencies do not depend on the field gradient") {
    Configuration a = make_config(5, 19.0);
    Configuration b = make_config(5, 150.0);
    ChainSolution chain_a = solve_equilibrium(5, a);
    ChainSolution chain_b = solve_equilibrium(5, b);
    ModeDecomposition ma = normal_modes(axial_hessian(chain_a, a), a, Direction::axial);
    ModeDecomposition mb = normal_modes(axial_hessian(chain_b, b), b, Direction::axial);
    CHECK(ma.nu == mb.nu);
    CHECK(ma.S == mb.S);
}

TEST_CASE("soft radial confinement is reported as unstable") {
    Configuration cfg = make_config(5, 19.0, {{"omega_radial_hz", "260e3"}});
    CHECK_FALSE(cfg.warnings.empty());
    ChainSolution chain = solve_equilibrium(5, cfg);
    CHECK_THROWS_WITH_AS(normal_modes(transversal_hessian(chain, cfg), cfg,
                                      Direction::transversal_1),
                         doctest::Contains("unstable"), std::runtime_error);
}

TEST_CASE("axial cubic tensor: symmetry, parity, finite differences") {
    Configuration cfg1 = make_config(1, 0.0);
    CubicTensor b1 = cubic_tensor_axial(solve_equilibrium(1, cfg1), cfg1);
    CHECK(b1.values.max_abs() == 0.0);

    for (int n : {2, 3, 5, 7}) {
        CAPTURE(n);
        ChainSolution chain = solve_equilibrium(n, kCfg5);
        CubicTensor b = cubic_tensor_axial(chain, kCfg5);
        const double scale = kCfg5.species_mass * kCfg5.omega_z * kCfg5.omega_z / chain.l;
        const double bmax = b.values.max_abs();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    // full symmetry
                    CHECK(b.values(i, j, k) ==
                          doctest::Approx(b.values(j, i, k)).scale(bmax).epsilon(1e-10));
                    CHECK(b.values(i, j, k) ==
                          doctest::Approx(b.values(k, j, i)).scale(bmax).epsilon(1e-10));
                    // inversion antisymmetry on the mirror-symmetric equilibrium
                    CHECK(b.values(i, j, k) ==
                          doctest::Approx(-b.values(n - 1 - i, n - 1 - j, n - 1 - k))
                              .scale(bmax)
                              .epsilon(1e-10));
                    double fd = scale * testutil::third_derivative(testutil::axial_energy,
                                                                   chain.u, i, j, k, 4e-3);
                    if (std::abs(fd) > 1e-9 * bmax)
                        CHECK(b.values(i, j, k) == doctest::Approx(fd).epsilon(1e-5));
                    else
                        CHECK(std::abs(b.values(i, j, k)) < 1e-8 * bmax);
                }
    }
}

TEST_CASE("transversal cubic tensor: closed form, finite differences, axial relation") {
    Configuration cfg1 = make_config(1, 0.0);
    CubicTensor bt1 = cubic_tensor_transversal(solve_equilibrium(1, cfg1), cfg1);
    CHECK(bt1.values.max_abs() == 0.0);

    // two-ion sign structure: same-pair entries flip sign across the axial index
    ChainSolution two = solve_equilibrium(2, kCfg5);
    CubicTensor bt2 = cubic_tensor_transversal(two, kCfg5);
    const double d = two.u[1] - two.u[0];
    const double unit = kCfg5.species_mass * kCfg5.omega_z * kCfg5.omega_z /
                        (2.0 * two.l * d * d * d * d);
    CHECK(bt2.values(0, 0, 0) == doctest::Approx(unit).epsilon(1e-12));
    CHECK(bt2.values(0, 0, 1) == doctest::Approx(-unit).epsilon(1e-12));
    CHECK(bt2.values(0, 0, 1) == doctest::Approx(-bt2.values(0, 0, 0)).epsilon(1e-12));

    for (int n : {2, 3, 5}) {
        CAPTURE(n);
        ChainSolution chain = solve_equilibrium(n, kCfg5);
        CubicTensor bt = cubic_tensor_transversal(chain, kCfg5);
        CubicTensor b = cubic_tensor_axial(chain, kCfg5);
        const double btmax = bt.values.max_abs();

        // the axial tensor is twelve times the shared Coulomb structure
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    CHECK(b.values(i, j, k) ==
                          doctest::Approx(12.0 * bt.values(i, j, k)).scale(btmax).epsilon(1e-12));

        // mixed third derivatives d^3 V / dz_k dx_i dx_j = -6 Btilde_ijk
        const double scale = kCfg5.species_mass * kCfg5.omega_z * kCfg5.omega_z / chain.l;
        const int nn = n;
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                for (int k = 0; k < nn; ++k) {
                    auto f = [&](const Eigen::VectorXd& coords) {
                        Eigen::VectorXd x = coords.head(nn);
                        Eigen::VectorXd z = chain.u + coords.tail(nn);
                        return testutil::energy_3d(x, Eigen::VectorXd::Zero(nn), z, 3.0);
                    };
                    Eigen::VectorXd origin = Eigen::VectorXd::Zero(2 * nn);
                    double fd = scale * testutil::third_derivative(f, origin, i, j, nn + k, 4e-3);
                    double expected = -fd / 6.0;
                    if (std::abs(expected) > 1e-9 * btmax)
                        CHECK(bt.values(i, j, k) == doctest::Approx(expected).epsilon(1e-5));
                    else
                        CHECK(std::abs(bt.values(i, j, k)) < 1e-8 * btmax);
                }
    }
}

TEST_CASE("trap anharmonicity adds only to the cubic diagonal") {
    ChainSolution chain = solve_equilibrium(5, kCfg5);
    CubicTensor b = cubic_tensor_axial(chain, kCfg5);
    CubicTensor same = add_trap_anharmonicity(b, std::vector<double>(5, 0.0));
    CHECK(same.values.data() == b.values.data());

    const double dz = std::sqrt(constants::hbar / (2.0 * kCfg5.species_mass * kCfg5.omega_z));
    const double alpha = 0.004 * constants::hbar * kCfg5.omega_z / (dz * dz * dz);
    CubicTensor shifted = add_trap_anharmonicity(b, std::vector<double>(5, alpha));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                double expected = b.values(i, j, k) + (i == j && j == k ? alpha : 0.0);
                CHECK(shifted.values(i, j, k) == expected);
            }

    // this alpha matches the intrinsic Coulomb cubic scale 6 m wz^2 dz^3 / l
    double coulomb_scale = 6.0 * kCfg5.species_mass * kCfg5.omega_z * kCfg5.omega_z * dz * dz * dz /
                           chain.l / (constants::hbar * kCfg5.omega_z);
    CHECK(coulomb_scale == doctest::Approx(0.004).epsilon(0.08));

    CHECK_THROWS_AS(add_trap_anharmonicity(b, std::vector<double>(4, 0.0)), std::invalid_argument);
}
