// field.hpp — Magnetic-field profile along the chain and the induced
// position-dependent qubit resonance frequency with its derivatives.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "magic/chain.hpp"
#include "magic/config.hpp"

namespace magic {

struct FieldProfile {
    double b0 = 0.0;       // T
    double dB_dz = 0.0;    // T/m
    double d2B_dz2 = 0.0;  // T/m^2

    double value(double z) const { return b0 + dB_dz * z + 0.5 * d2B_dz2 * z * z; }
};

FieldProfile field_from_config(const Configuration& cfg);

struct ResonanceProfile {
    Eigen::VectorXd omega;     // rad/s, resonance at each equilibrium position
    Eigen::VectorXd domega;    // rad/s/m, first spatial derivative
    Eigen::VectorXd d2omega;   // rad/s/m^2, second spatial derivative
    // Curvature-to-gradient-squared ratio d2omega / domega^2 (s); undefined
    // where the local gradient vanishes.
    std::vector<std::optional<double>> gamma;
};

ResonanceProfile resonance_profile(const FieldProfile& field, const ChainSolution& chain,
                                   const Configuration& cfg);

}  // namespace magic
