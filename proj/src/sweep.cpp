#include "magic/sweep.hpp"

#include <stdexcept>
#include <string>

#include "magic/couplings.hpp"

namespace magic {

SweepResult run_sweep(const Configuration& base, int n_lo, int n_hi) {
    if (n_lo < 2 || n_hi > 60 || n_lo > n_hi)
        throw std::invalid_argument("run_sweep: range must lie within [2, 60]");

    SweepResult out;
    for (int n = n_lo; n <= n_hi; ++n) {
        Configuration cfg = base;
        cfg.n_ions = n;
        cfg.alpha_n.assign(n, 0.0);
        cfg.phonon_occupations.assign(n, 0);
        cfg.omega_radial.reset();  // headline columns are purely axial
        try {
            CouplingReport report = compute_couplings(cfg);
            SweepRow row;
            row.n_ions = n;
            row.resonance_gap = report.resonance_gap;
            row.local_field_edge = std::abs(report.local_field[0]);
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double v = report.j2(i, j);
                    if (first || v > hi) hi = v;
                    if (first || v < lo) lo = v;
                    first = false;
                }
            row.j2_max = hi;
            row.j2_min = lo;
            out.rows.push_back(row);
        } catch (const std::exception& ex) {
            out.failures.push_back("N=" + std::to_string(n) + ": " + ex.what());
        }
    }
    return out;
}

}  // namespace magic
