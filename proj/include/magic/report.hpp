// report.hpp — Table, JSON, and SVG emission for coupling reports, sweeps, and
// fits. Angular-frequency quantities are emitted in paired columns
// (<name>_rad_s, <name>_hz) with hz = rad_s / 2 pi.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "magic/couplings.hpp"
#include "magic/fit.hpp"
#include "magic/oracle.hpp"
#include "magic/sweep.hpp"

namespace magic {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Table equilibrium_table(const CouplingReport& report);
Table modes_table(const CouplingReport& report);
Table couplings_table(const CouplingReport& report);          // one row per pair i<j
Table three_body_table(const TripleMap& map, const std::string& name);
Table local_field_table(const CouplingReport& report);
Table curvature_table(const CouplingReport& report);          // unsymmetrized entries
Table transversal_table(const CouplingReport& report);
Table sweep_table(const SweepResult& sweep);

// One header line then one comma-separated row per record; numbers formatted
// with 6 significant digits. Output is deterministic for identical inputs.
void write_csv(const Table& table, const std::filesystem::path& path);
std::string csv_string(const Table& table);

std::string report_json(const Configuration& cfg, const CouplingReport& report);
std::string sweep_json(const SweepResult& sweep);
std::string fit_json(const std::string& label, const FitResult& fit);
std::string oracle_json(const OracleResult& result, int cutoff, int order);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

// Log-log SVG plot; intended for sweep curves with fit overlays.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series);

}  // namespace magic
