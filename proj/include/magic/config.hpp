// config.hpp — Validated run configuration and the flat key=value config format.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace magic {

// Sign of the qubit resonance shift per unit field, omega(z) = s * g * mu_B * B(z) / hbar.
// paper_negative sets s = -1 (the |F=0,0> <-> |F=1,+1> hyperfine qubit), zeeman_positive s = +1.
// Two-body couplings are even in the gradient, so this only affects odd-order signs.
enum class SignConvention { paper_negative, zeeman_positive };

struct Configuration {
    int n_ions = 5;
    double species_mass;                  // kg
    double omega_z;                       // rad/s, axial trap
    std::optional<double> omega_radial;   // rad/s, per transversal direction
    double dB_dz = 19.0;                  // T/m
    double d2B_dz2 = 0.0;                 // T/m^2
    double g_factor_combination = 1.0;    // g_F^e m_F^e - g_F^g m_F^g
    std::vector<double> alpha_n;          // J/m^3, per-ion cubic trap anharmonicity
    std::vector<int> phonon_occupations;  // per axial mode, >= 0
    SignConvention sign_convention = SignConvention::paper_negative;

    // Non-fatal validation notes (e.g. radial confinement below the linear-chain
    // stability heuristic). Not part of the serialized state.
    std::vector<std::string> warnings;

    double resonance_sign() const {
        return sign_convention == SignConvention::paper_negative ? -1.0 : 1.0;
    }
};

bool operator==(const Configuration& a, const Configuration& b);

// Builds a Configuration from raw string key/value pairs, applying defaults and
// unit conversion (keys with an _hz suffix are ordinary frequencies, multiplied
// by 2*pi at ingestion). Unknown keys, out-of-range values, and malformed
// numbers raise std::invalid_argument naming the offending key.
Configuration validate_config(const std::map<std::string, std::string>& raw);

// Inverse of validate_config: emits angular-frequency keys at full precision so
// that validate_config(to_key_values(cfg)) == cfg.
std::map<std::string, std::string> to_key_values(const Configuration& cfg);

// Flat text format: one `key = value` per line, `#` comments.
std::map<std::string, std::string> parse_config_text(const std::string& text);
Configuration load_config_file(const std::string& path);
std::string serialize_config(const Configuration& cfg);

// Minimum omega_radial / omega_z ratio for a stable linear chain (zig-zag
// threshold heuristic 0.73 * N^0.86).
double linear_chain_stability_ratio(int n_ions);

}  // namespace magic
