#include "magic/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "magic/constants.hpp"

namespace magic {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void push_angular(std::vector<double>& row, double rad_s) {
    row.push_back(rad_s);
    row.push_back(rad_s / constants::two_pi);
}

json triple_map_json(const TripleMap& map) {
    json arr = json::array();
    for (const auto& [key, value] : map) {
        arr.push_back({{"i", key[0] + 1},
                       {"j", key[1] + 1},
                       {"k", key[2] + 1},
                       {"value_rad_s", value},
                       {"value_hz", value / constants::two_pi}});
    }
    return arr;
}

}  // namespace

Table equilibrium_table(const CouplingReport& report) {
    Table t{"equilibrium", {"ion", "u", "z0_m"}, {}};
    for (int i = 0; i < report.chain.u.size(); ++i)
        t.rows.push_back({static_cast<double>(i + 1), report.chain.u[i], report.chain.z0[i]});
    return t;
}

Table modes_table(const CouplingReport& report) {
    Table t{"modes", {"mode", "nu_rad_s", "nu_hz", "dz_m"}, {}};
    for (int l = 0; l < report.modes.nu.size(); ++l) {
        std::vector<double> row{static_cast<double>(l + 1)};
        push_angular(row, report.modes.nu[l]);
        row.push_back(report.modes.dz[l]);
        t.rows.push_back(row);
    }
    return t;
}

Table couplings_table(const CouplingReport& report) {
    Table t{"couplings", {"i", "j", "j2_rad_s", "j2_hz"}, {}};
    const int n = static_cast<int>(report.j2.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<double> row{static_cast<double>(i + 1), static_cast<double>(j + 1)};
            push_angular(row, report.j2(i, j));
            t.rows.push_back(row);
        }
    return t;
}

Table three_body_table(const TripleMap& map, const std::string& name) {
    Table t{name, {"i", "j", "k", "j3_rad_s", "j3_hz"}, {}};
    for (const auto& [key, value] : map) {
        std::vector<double> row{static_cast<double>(key[0] + 1), static_cast<double>(key[1] + 1),
                                static_cast<double>(key[2] + 1)};
        push_angular(row, value);
        t.rows.push_back(row);
    }
    return t;
}

Table local_field_table(const CouplingReport& report) {
    Table t{"local_fields", {"ion", "value_rad_s", "value_hz"}, {}};
    for (int i = 0; i < report.local_field.size(); ++i) {
        std::vector<double> row{static_cast<double>(i + 1)};
        push_angular(row, report.local_field[i]);
        t.rows.push_back(row);
    }
    return t;
}

Table curvature_table(const CouplingReport& report) {
    Table t{"curvature", {"n", "i", "j", "j3_rad_s", "j3_hz"}, {}};
    const int n = static_cast<int>(report.j3_curvature.size());
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (m == i || m == j || i == j) continue;
                std::vector<double> row{static_cast<double>(m + 1), static_cast<double>(i + 1),
                                        static_cast<double>(j + 1)};
                push_angular(row, report.j3_curvature[m](i, j));
                t.rows.push_back(row);
            }
    return t;
}

Table transversal_table(const CouplingReport& report) {
    Table t{"transversal", {"ion", "local_field_rad_s", "local_field_hz"}, {}};
    for (int i = 0; i < report.transversal_local_field.size(); ++i) {
        std::vector<double> row{static_cast<double>(i + 1)};
        push_angular(row, report.transversal_local_field[i]);
        t.rows.push_back(row);
    }
    return t;
}

Table sweep_table(const SweepResult& sweep) {
    Table t{"sweep",
            {"n_ions", "j2_max_rad_s", "j2_max_hz", "j2_min_rad_s", "j2_min_hz",
             "local_field_edge_rad_s", "local_field_edge_hz", "resonance_gap_rad_s",
             "resonance_gap_hz"},
            {}};
    for (const SweepRow& row : sweep.rows) {
        std::vector<double> r{static_cast<double>(row.n_ions)};
        push_angular(r, row.j2_max);
        push_angular(r, row.j2_min);
        push_angular(r, row.local_field_edge);
        push_angular(r, row.resonance_gap);
        t.rows.push_back(r);
    }
    return t;
}

std::string csv_string(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += fmt(row[i]);
        }
        out += "\n";
    }
    return out;
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << csv_string(table);
}

std::string report_json(const Configuration& cfg, const CouplingReport& report) {
    json j;
    j["configuration"] = to_key_values(cfg);
    j["characteristic_length_m"] = report.chain.l;
    j["equilibrium_u"] = std::vector<double>(report.chain.u.begin(), report.chain.u.end());
    j["mode_frequencies_rad_s"] =
        std::vector<double>(report.modes.nu.begin(), report.modes.nu.end());
    json j2 = json::array();
    const int n = static_cast<int>(report.j2.rows());
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            j2.push_back({{"i", i + 1},
                          {"j", k + 1},
                          {"value_rad_s", report.j2(i, k)},
                          {"value_hz", report.j2(i, k) / constants::two_pi}});
    j["j2"] = j2;
    j["j3_coulomb"] = triple_map_json(report.j3_coulomb);
    if (!report.j3_trap.empty()) j["j3_trap"] = triple_map_json(report.j3_trap);
    if (!report.j3_curvature_symmetrized.empty())
        j["j3_curvature_symmetrized"] = triple_map_json(report.j3_curvature_symmetrized);
    j["local_field_rad_s"] =
        std::vector<double>(report.local_field.begin(), report.local_field.end());
    j["spin_phonon_two_body_max_rad_s"] = report.spin_phonon.two_body_max;
    j["spin_phonon_pair_max_rad_s"] = report.spin_phonon.pair_max;
    j["resonance_gap_rad_s"] = report.resonance_gap;
    if (report.transversal_local_field.size() > 0) {
        j["transversal_local_field_rad_s"] = std::vector<double>(
            report.transversal_local_field.begin(), report.transversal_local_field.end());
        j["transversal_mode_coupling_max_rad_s"] = report.transversal_mode_coupling_max;
    }
    return j.dump(2) + "\n";
}

std::string sweep_json(const SweepResult& sweep) {
    json rows = json::array();
    for (const SweepRow& row : sweep.rows)
        rows.push_back({{"n_ions", row.n_ions},
                        {"j2_max_rad_s", row.j2_max},
                        {"j2_min_rad_s", row.j2_min},
                        {"local_field_edge_rad_s", row.local_field_edge},
                        {"resonance_gap_rad_s", row.resonance_gap}});
    json j;
    j["rows"] = rows;
    j["failures"] = sweep.failures;
    return j.dump(2) + "\n";
}

std::string fit_json(const std::string& label, const FitResult& fit) {
    json j;
    j["label"] = label;
    j["model"] = fit.model == FitModel::power_law ? "c*N^a" : "c*N^a*log(b*N)";
    j["objective_scale"] = fit.scale == FitScale::linear ? "linear" : "log";
    const char* names[] = {"c", "a", "b"};
    for (std::size_t i = 0; i < fit.params.size(); ++i) {
        j["params"][names[i]] = fit.params[i];
        j["uncertainties"][names[i]] = fit.uncertainties[i];
    }
    j["residual_rms_log"] = fit.residual_rms_log;
    j["iterations"] = fit.iterations;
    return j.dump(2) + "\n";
}

std::string oracle_json(const OracleResult& result, int cutoff, int order) {
    json j;
    j["cutoff"] = cutoff;
    j["order"] = order;
    for (const auto& [key, value] : result.extracted) {
        j["extracted_rad_s"][key] = value;
        j["extracted_hz"][key] = value / constants::two_pi;
    }
    for (const auto& [key, value] : result.analytic) j["analytic_rad_s"][key] = value;
    j["truncation_error_estimate"] = result.truncation_error_estimate;
    j["unitarity_defect"] = result.unitarity_defect;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Minimal log-log SVG renderer.

namespace {

struct AxisMap {
    double lo, hi;  // log10 range
    double pix_lo, pix_hi;
    double map(double v) const {
        double f = (std::log10(v) - lo) / (hi - lo);
        return pix_lo + f * (pix_hi - pix_lo);
    }
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

}  // namespace

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (s.x[i] <= 0 || s.y[i] <= 0) continue;
            if (first || s.x[i] < xmin) xmin = s.x[i];
            if (first || s.x[i] > xmax) xmax = s.x[i];
            if (first || s.y[i] < ymin) ymin = s.y[i];
            if (first || s.y[i] > ymax) ymax = s.y[i];
            first = false;
        }
    if (first) throw std::invalid_argument("write_loglog_svg: no positive data");

    const double width = 560, height = 420;
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    AxisMap xm{std::log10(xmin) - 0.02, std::log10(xmax) + 0.02, ml, width - mr};
    AxisMap ym{std::log10(ymin) - 0.05, std::log10(ymax) + 0.05, height - mb, mt};

    std::string svg;
    char buf[512];
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"420\" "
           "font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"560\" height=\"420\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.0f\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
                  width / 2, title.c_str());
    svg += buf;

    // Frame.
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  ml, mt, width - ml - mr, height - mt - mb);
    svg += buf;

    // Decade ticks.
    for (int d = static_cast<int>(std::floor(xm.lo)); d <= static_cast<int>(std::ceil(xm.hi)); ++d) {
        double v = std::pow(10.0, d);
        if (std::log10(v) < xm.lo || std::log10(v) > xm.hi) continue;
        double px = xm.map(v);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">1e%d</text>\n",
                      px, mt, px, height - mb, px, height - mb + 16, d);
        svg += buf;
    }
    for (int d = static_cast<int>(std::floor(ym.lo)); d <= static_cast<int>(std::ceil(ym.hi)); ++d) {
        double v = std::pow(10.0, d);
        if (std::log10(v) < ym.lo || std::log10(v) > ym.hi) continue;
        double py = ym.map(v);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">1e%d</text>\n",
                      ml, py, width - mr, py, ml - 6, py + 4, d);
        svg += buf;
    }

    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.0f\" y=\"%.0f\" text-anchor=\"middle\">%s</text>\n", width / 2,
                  height - 12, x_label.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"16\" y=\"%.0f\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
                  "%.0f)\">%s</text>\n",
                  height / 2, height / 2, y_label.c_str());
    svg += buf;

    int color = 0;
    double legend_y = mt + 14;
    for (const auto& s : series) {
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (s.x[i] <= 0 || s.y[i] <= 0) continue;
            std::snprintf(buf, sizeof buf, "%.1f,%.1f ", xm.map(s.x[i]), ym.map(s.y[i]));
            points += buf;
        }
        std::snprintf(buf, sizeof buf,
                      "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"%s/>\n",
                      points.c_str(), kPalette[color % 6],
                      s.dashed ? " stroke-dasharray=\"6 4\"" : "");
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                      "stroke-width=\"1.5\"%s/><text x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                      width - mr - 150, legend_y, width - mr - 120, legend_y, kPalette[color % 6],
                      s.dashed ? " stroke-dasharray=\"6 4\"" : "", width - mr - 112, legend_y + 4,
                      s.label.c_str());
        svg += buf;
        legend_y += 16;
        ++color;
    }
    svg += "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << svg;
}

}  // namespace magic
