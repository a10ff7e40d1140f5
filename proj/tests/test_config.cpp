#include "doctest.h"

#include <stdexcept>

#include "magic/config.hpp"
#include "magic/constants.hpp"

using namespace magic;

TEST_CASE("defaults describe the five-ion 130 kHz setup") {
    Configuration cfg = validate_config({});
    CHECK(cfg.n_ions == 5);
    CHECK(cfg.species_mass == doctest::Approx(constants::yb171_ion_mass).epsilon(1e-15));
    CHECK(cfg.omega_z == doctest::Approx(constants::two_pi * 130e3).epsilon(1e-15));
    CHECK(cfg.dB_dz == 19.0);
    CHECK(cfg.d2B_dz2 == 0.0);
    CHECK(cfg.g_factor_combination == 1.0);
    CHECK(cfg.alpha_n == std::vector<double>(5, 0.0));
    CHECK(cfg.phonon_occupations == std::vector<int>(5, 0));
    CHECK(cfg.sign_convention == SignConvention::paper_negative);
    CHECK_FALSE(cfg.omega_radial.has_value());
}

TEST_CASE("ordinary-frequency keys are converted to angular on ingestion") {
    Configuration cfg = validate_config({{"n_ions", "5"}, {"omega_z_hz", "130e3"}, {"dB_dz", "19"}});
    CHECK(cfg.omega_z == constants::two_pi * 130e3);
    Configuration direct = validate_config({{"omega_z", "816814.089933346"}});
    CHECK(direct.omega_z == 816814.089933346);
}

TEST_CASE("single ion with zero gradient validates") {
    Configuration cfg = validate_config({{"n_ions", "1"}, {"omega_z_hz", "130e3"}, {"dB_dz", "0"}});
    CHECK(cfg.n_ions == 1);
    CHECK(cfg.dB_dz == 0.0);
    CHECK(cfg.alpha_n.size() == 1);
}

TEST_CASE("rejections name the offending field") {
    CHECK_THROWS_WITH_AS(validate_config({{"n_ions", "0"}}),
                         doctest::Contains("n_ions"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_config({{"frequency", "1"}}),
                         doctest::Contains("frequency"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_config({{"omega_z", "-5"}}),
                         doctest::Contains("omega_z"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(validate_config({{"phonon_occupations", "0, -1, 0, 0, 0"}}),
                         doctest::Contains("phonon_occupations"), std::invalid_argument);
    CHECK_THROWS_AS(validate_config({{"alpha_n", "1, 2"}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_config({{"sign_convention", "upside_down"}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_config({{"omega_z", "1e5"}, {"omega_z_hz", "1e5"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_config({{"omega_z", "not_a_number"}}), std::invalid_argument);
}

TEST_CASE("list values broadcast or must match the ion count") {
    Configuration cfg = validate_config(
        {{"n_ions", "3"}, {"alpha_n", "2.5e-8"}, {"phonon_occupations", "1, 0, 2"}});
    CHECK(cfg.alpha_n == std::vector<double>(3, 2.5e-8));
    CHECK(cfg.phonon_occupations == std::vector<int>{1, 0, 2});
}

TEST_CASE("serialization round-trips to an identical configuration") {
    Configuration cfg = validate_config({{"n_ions", "4"},
                                         {"omega_z_hz", "130e3"},
                                         {"omega_radial_hz", "2.71e6"},
                                         {"dB_dz", "151.25"},
                                         {"d2B_dz2", "1e3"},
                                         {"g_factor_combination", "0.5"},
                                         {"alpha_n", "1e-9, 0, -1e-9, 3e-8"},
                                         {"phonon_occupations", "0, 1, 0, 2"},
                                         {"sign_convention", "zeeman_positive"}});
    Configuration again = validate_config(parse_config_text(serialize_config(cfg)));
    CHECK(again == cfg);

    Configuration defaults = validate_config({});
    CHECK(validate_config(parse_config_text(serialize_config(defaults))) == defaults);
}

TEST_CASE("config text parser understands comments and rejects duplicates") {
    auto raw = parse_config_text("# comment\nn_ions = 3 # trailing\n\ndB_dz = 19\n");
    CHECK(raw.at("n_ions") == "3");
    CHECK(raw.at("dB_dz") == "19");
    CHECK_THROWS_AS(parse_config_text("a = 1\na = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("just words\n"), std::invalid_argument);
}

TEST_CASE("radial confinement warnings fire without failing validation") {
    Configuration weak = validate_config(
        {{"n_ions", "5"}, {"omega_z_hz", "130e3"}, {"omega_radial_hz", "100e3"}});
    REQUIRE(weak.warnings.size() >= 1);

    Configuration below_heuristic = validate_config(
        {{"n_ions", "20"}, {"omega_z_hz", "130e3"}, {"omega_radial_hz", "300e3"}});
    bool mentions_stability = false;
    for (const auto& w : below_heuristic.warnings)
        mentions_stability |= w.find("stability") != std::string::npos;
    CHECK(mentions_stability);

    Configuration stiff = validate_config(
        {{"n_ions", "5"}, {"omega_z_hz", "130e3"}, {"omega_radial_hz", "1.3e6"}});
    CHECK(stiff.warnings.empty());
}

TEST_CASE("physical constants are positive and the ion mass is consistent") {
    CHECK(constants::hbar > 0);
    CHECK(constants::elementary_charge > 0);
    CHECK(constants::vacuum_permittivity > 0);
    CHECK(constants::bohr_magneton > 0);
    CHECK(constants::atomic_mass_unit > 0);
    CHECK(constants::yb171_ion_mass ==
          doctest::Approx(170.936323 * constants::atomic_mass_unit).epsilon(1e-5));
    CHECK(constants::yb171_ion_mass < 170.936323 * constants::atomic_mass_unit);
}
