// sweep.hpp — Chain-length sweeps of the headline interaction strengths.

#pragma once

#include <string>
#include <vector>

#include "magic/config.hpp"

namespace magic {

struct SweepRow {
    int n_ions = 0;
    double j2_max = 0.0;            // rad/s, largest off-diagonal coupling
    double j2_min = 0.0;            // rad/s, smallest off-diagonal coupling
    double local_field_edge = 0.0;  // rad/s, |correction at ion 1|, ground-state phonons
    double resonance_gap = 0.0;     // rad/s
};

struct SweepResult {
    std::vector<SweepRow> rows;           // keyed by strictly increasing N
    std::vector<std::string> failures;    // per-N messages for skipped rows
};

// Runs the coupling pipeline for each N in [n_lo, n_hi] (within [2, 60]) with
// the base configuration's trap, field, and species. Solver failures skip the
// row and are recorded.
SweepResult run_sweep(const Configuration& base, int n_lo, int n_hi);

}  // namespace magic
