#include "magic/field.hpp"

#include "magic/constants.hpp"

namespace magic {

FieldProfile field_from_config(const Configuration& cfg) {
    // No offset-field key: absolute resonance offsets do not enter any coupling.
    return FieldProfile{0.0, cfg.dB_dz, cfg.d2B_dz2};
}

ResonanceProfile resonance_profile(const FieldProfile& field, const ChainSolution& chain,
                                   const Configuration& cfg) {
    const int n = static_cast<int>(chain.z0.size());
    const double scale =
        cfg.resonance_sign() * cfg.g_factor_combination * constants::bohr_magneton / constants::hbar;

    ResonanceProfile res;
    res.omega.resize(n);
    res.domega.resize(n);
    res.d2omega.resize(n);
    res.gamma.resize(n);
    for (int i = 0; i < n; ++i) {
        const double z = chain.z0[i];
        res.omega[i] = scale * field.value(z);
        res.domega[i] = scale * (field.dB_dz + z * field.d2B_dz2);
        res.d2omega[i] = scale * field.d2B_dz2;
        if (res.domega[i] != 0.0)
            res.gamma[i] = res.d2omega[i] / (res.domega[i] * res.domega[i]);
        else
            res.gamma[i] = std::nullopt;
    }
    return res;
}

}  // namespace magic
