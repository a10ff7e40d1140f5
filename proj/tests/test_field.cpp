#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "magic/chain.hpp"
#include "magic/constants.hpp"
#include "magic/couplings.hpp"
#include "magic/field.hpp"

using namespace magic;
using testutil::make_config;

TEST_CASE("constant field gives zero derivatives and undefined gamma") {
    Configuration cfg = make_config(5, 0.0);
    ChainSolution chain = solve_equilibrium(5, cfg);
    ResonanceProfile res = resonance_profile(field_from_config(cfg), chain, cfg);
    for (int i = 0; i < 5; ++i) {
        CHECK(res.domega[i] == 0.0);
        CHECK(res.d2omega[i] == 0.0);
        CHECK_FALSE(res.gamma[i].has_value());
    }
}

TEST_CASE("gradient maps to ~13.996 GHz/T per unit g-factor") {
    Configuration cfg = make_config(5, 19.0);
    ChainSolution chain = solve_equilibrium(5, cfg);
    ResonanceProfile res = resonance_profile(field_from_config(cfg), chain, cfg);
    const double expected = constants::bohr_magneton * 19.0 / constants::hbar;
    for (int i = 0; i < 5; ++i) {
        CHECK(res.domega[i] == doctest::Approx(-expected).epsilon(1e-15));  // default sign
        CHECK(std::abs(res.domega[i]) / constants::two_pi ==
              doctest::Approx(265.93e9).epsilon(1e-4));
    }
}

TEST_CASE("offset field shifts every resonance without touching derivatives") {
    Configuration cfg = make_config(3, 19.0);
    ChainSolution chain = solve_equilibrium(3, cfg);
    FieldProfile with_offset{5e-4, cfg.dB_dz, 0.0};
    ResonanceProfile res = resonance_profile(with_offset, chain, cfg);
    const double scale = -constants::bohr_magneton / constants::hbar;
    for (int i = 0; i < 3; ++i)
        CHECK(res.omega[i] ==
              doctest::Approx(scale * (5e-4 + 19.0 * chain.z0[i])).epsilon(1e-14));
}

TEST_CASE("curvature hardly varies the gradient across a realistic chain") {
    Configuration cfg = make_config(5, 150.0, {{"d2B_dz2", "1e3"}});
    ChainSolution chain = solve_equilibrium(5, cfg);
    ResonanceProfile res = resonance_profile(field_from_config(cfg), chain, cfg);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 5; ++i) {
        lo = std::min(lo, std::abs(res.domega[i]));
        hi = std::max(hi, std::abs(res.domega[i]));
    }
    double spread = (hi - lo) / hi;
    CHECK(spread > 0.0);
    CHECK(spread < 5e-4);
    for (int i = 0; i < 5; ++i) REQUIRE(res.gamma[i].has_value());
}

TEST_CASE("gamma falls as 1/c under a uniform field rescaling") {
    Configuration cfg = make_config(5, 150.0, {{"d2B_dz2", "1e3"}});
    ChainSolution chain = solve_equilibrium(5, cfg);
    ResonanceProfile base = resonance_profile(field_from_config(cfg), chain, cfg);
    const double c = 3.7;
    FieldProfile scaled{0.0, c * cfg.dB_dz, c * cfg.d2B_dz2};
    ResonanceProfile res = resonance_profile(scaled, chain, cfg);
    for (int i = 0; i < 5; ++i)
        CHECK(*res.gamma[i] == doctest::Approx(*base.gamma[i] / c).epsilon(1e-14));
}

TEST_CASE("gamma is defined exactly where the local gradient is nonzero") {
    // pure curvature with an exactly centred middle ion: the gradient
    // vanishes there and nowhere else
    Configuration cfg = make_config(3, 0.0, {{"d2B_dz2", "1e3"}});
    ChainSolution chain;
    chain.l = characteristic_length(cfg);
    chain.u = Eigen::Vector3d(-1.0, 0.0, 1.0);
    chain.z0 = chain.l * chain.u;
    ResonanceProfile res = resonance_profile(field_from_config(cfg), chain, cfg);
    CHECK(res.gamma[0].has_value());
    CHECK_FALSE(res.gamma[1].has_value());
    CHECK(res.gamma[2].has_value());
}

TEST_CASE("sign convention flips derivatives but not coupling strengths") {
    Configuration neg = make_config(5, 19.0);
    Configuration pos = make_config(5, 19.0, {{"sign_convention", "zeeman_positive"}});
    ChainSolution chain = solve_equilibrium(5, neg);
    ModeDecomposition modes = normal_modes(axial_hessian(chain, neg), neg, Direction::axial);
    ResonanceProfile rn = resonance_profile(field_from_config(neg), chain, neg);
    ResonanceProfile rp = resonance_profile(field_from_config(pos), chain, pos);
    for (int i = 0; i < 5; ++i) {
        CHECK(rn.domega[i] == -rp.domega[i]);
        CHECK(std::abs(rn.domega[i]) == std::abs(rp.domega[i]));
    }
    Eigen::MatrixXd jn = spin_spin_couplings(lamb_dicke(modes, rn), modes);
    Eigen::MatrixXd jp = spin_spin_couplings(lamb_dicke(modes, rp), modes);
    CHECK(jn == jp);  // even power of the gradient, bit-identical
}
