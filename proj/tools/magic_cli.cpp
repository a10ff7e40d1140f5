// magic_cli — command-line driver for ion-chain coupling calculations:
// per-configuration reports, chain-length sweeps, scaling-law fits, and the
// truncated-Fock-space verification oracle.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magic/config.hpp"
#include "magic/constants.hpp"
#include "magic/couplings.hpp"
#include "magic/fit.hpp"
#include "magic/oracle.hpp"
#include "magic/report.hpp"
#include "magic/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using namespace magic;

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "table";
    double gradient = 0.0;
    bool gradient_set = false;
    std::string n_range = "2:40";
    int oracle_ions = 2;
    int oracle_cutoff = 8;
    int oracle_order = 3;
};

Configuration load(const Options& opt) {
    Configuration cfg = opt.config_path.empty() ? validate_config({})
                                                : load_config_file(opt.config_path);
    if (opt.gradient_set) cfg.dB_dz = opt.gradient;
    for (const std::string& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
    return cfg;
}

std::string grad_tag(const Configuration& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", cfg.dB_dz);
    return buf;
}

std::pair<int, int> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--n-range expects 'lo:hi'");
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

fs::path out_file(const Options& opt, const std::string& stem, const std::string& ext) {
    fs::create_directories(opt.out_dir);
    return fs::path(opt.out_dir) / (stem + "." + ext);
}

void emit_tables(const Options& opt, const Configuration& cfg, const CouplingReport& report,
                 const std::vector<Table>& tables) {
    for (const Table& t : tables) {
        fs::path p = out_file(opt, t.name + "_" + std::to_string(cfg.n_ions) + "_" + grad_tag(cfg),
                              "csv");
        write_csv(t, p);
        std::cout << p.string() << "\n";
    }
    if (opt.format == "structured") {
        fs::path p = out_file(
            opt, "report_" + std::to_string(cfg.n_ions) + "_" + grad_tag(cfg), "json");
        write_text(p, report_json(cfg, report));
        std::cout << p.string() << "\n";
    }
}

void add_sweep_fit_series(std::vector<PlotSeries>& series, const SweepResult& sweep,
                          const FitResult& fit, const std::string& label,
                          double (*column)(const SweepRow&), bool with_fit) {
    PlotSeries data{label, {}, {}, false};
    for (const SweepRow& row : sweep.rows) {
        data.x.push_back(row.n_ions);
        data.y.push_back(column(row) / constants::two_pi);
    }
    series.push_back(data);
    if (with_fit) {
        PlotSeries overlay{label + " fit", {}, {}, true};
        for (const SweepRow& row : sweep.rows) {
            overlay.x.push_back(row.n_ions);
            overlay.y.push_back(fit_model_eval(fit, row.n_ions) / constants::two_pi);
        }
        series.push_back(overlay);
    }
}

std::vector<double> column_of(const SweepResult& sweep, double (*column)(const SweepRow&)) {
    std::vector<double> out;
    for (const SweepRow& row : sweep.rows) out.push_back(column(row));
    return out;
}

std::vector<double> n_of(const SweepResult& sweep) {
    std::vector<double> out;
    for (const SweepRow& row : sweep.rows) out.push_back(row.n_ions);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Effective spin-spin, three-spin, spin-phonon, and local-field interaction "
                 "strengths for magnetic-gradient ion chains"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "configuration file (key = value lines)");
    app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", opt.format, "table, structured, or plot")
        ->check(CLI::IsMember({"table", "structured", "plot"}))
        ->capture_default_str();
    auto* grad = app.add_option("--gradient", opt.gradient, "override dB_dz (T/m)");
    app.add_option("--n-range", opt.n_range, "sweep range lo:hi")->capture_default_str();

    auto* cmd_equilibrium = app.add_subcommand("equilibrium", "ion equilibrium positions");
    auto* cmd_modes = app.add_subcommand("modes", "axial normal modes");
    auto* cmd_couplings = app.add_subcommand("couplings", "two-spin coupling matrix");
    auto* cmd_three_body = app.add_subcommand("three-body", "three-spin couplings");
    auto* cmd_local = app.add_subcommand("local-fields", "phonon-dependent local fields");
    auto* cmd_curvature = app.add_subcommand("curvature", "field-curvature three-spin couplings");
    auto* cmd_transversal = app.add_subcommand("transversal", "transversal-phonon corrections");
    auto* cmd_sweep = app.add_subcommand("sweep", "chain-length sweep");
    auto* cmd_fit = app.add_subcommand("fit", "sweep plus scaling-law fits");
    auto* cmd_oracle = app.add_subcommand("oracle", "truncated-Fock-space verification");
    auto* cmd_report = app.add_subcommand("report", "full report: tables, sweep, fits");
    cmd_oracle->add_option("--ions", opt.oracle_ions, "ion count (1-3)")->capture_default_str();
    cmd_oracle->add_option("--cutoff", opt.oracle_cutoff, "max Fock occupation")
        ->capture_default_str();
    cmd_oracle->add_option("--order", opt.oracle_order, "expansion order (2 or 3)")
        ->check(CLI::IsMember({2, 3}))
        ->capture_default_str();

    // Global flags are accepted after the subcommand name as well.
    for (CLI::App* sub : {cmd_equilibrium, cmd_modes, cmd_couplings, cmd_three_body, cmd_local,
                          cmd_curvature, cmd_transversal, cmd_sweep, cmd_fit, cmd_oracle,
                          cmd_report})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    opt.gradient_set = grad->count() > 0;

    Configuration cfg = load(opt);

    auto print_summary = [&](const CouplingReport& report) {
        std::printf("N=%d, gradient %g T/m, omega_z/2pi = %g Hz\n", cfg.n_ions, cfg.dB_dz,
                    cfg.omega_z / constants::two_pi);
        const int n = cfg.n_ions;
        if (n > 1) {
            double jmax = 0, jmin = 0;
            bool first = true;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double v = report.j2(i, j);
                    if (first || v > jmax) jmax = v;
                    if (first || v < jmin) jmin = v;
                    first = false;
                }
            std::printf("J2 max/min = %.6g / %.6g Hz\n", jmax / constants::two_pi,
                        jmin / constants::two_pi);
        }
        std::printf("local field edge = %.6g Hz, resonance gap = %.6g kHz\n",
                    std::abs(report.local_field[0]) / constants::two_pi,
                    report.resonance_gap / constants::two_pi / 1e3);
    };

    if (*cmd_equilibrium || *cmd_modes || *cmd_couplings || *cmd_three_body || *cmd_local ||
        *cmd_curvature || *cmd_transversal || *cmd_report) {
        CouplingReport report = compute_couplings(cfg);
        std::vector<Table> tables;
        if (*cmd_equilibrium) tables.push_back(equilibrium_table(report));
        if (*cmd_modes) tables.push_back(modes_table(report));
        if (*cmd_couplings) tables.push_back(couplings_table(report));
        if (*cmd_three_body) {
            tables.push_back(three_body_table(report.j3_coulomb, "threebody_coulomb"));
            if (!report.j3_trap.empty())
                tables.push_back(three_body_table(report.j3_trap, "threebody_trap"));
        }
        if (*cmd_local) tables.push_back(local_field_table(report));
        if (*cmd_curvature) {
            if (report.j3_curvature.empty())
                throw std::invalid_argument("curvature analysis requires nonzero d2B_dz2");
            tables.push_back(curvature_table(report));
            tables.push_back(
                three_body_table(report.j3_curvature_symmetrized, "curvature_symmetrized"));
        }
        if (*cmd_transversal) {
            if (report.transversal_local_field.size() == 0)
                throw std::invalid_argument("transversal analysis requires omega_radial");
            tables.push_back(transversal_table(report));
        }
        if (*cmd_report) {
            tables = {equilibrium_table(report), modes_table(report), couplings_table(report),
                      three_body_table(report.j3_coulomb, "threebody_coulomb"),
                      local_field_table(report)};
            fs::path p = out_file(
                opt, "report_" + std::to_string(cfg.n_ions) + "_" + grad_tag(cfg), "json");
            write_text(p, report_json(cfg, report));
            std::cout << p.string() << "\n";
        }
        emit_tables(opt, cfg, report, tables);
        print_summary(report);
    }

    if (*cmd_sweep || *cmd_fit || *cmd_report) {
        auto [lo, hi] = parse_range(opt.n_range);
        SweepResult sweep = run_sweep(cfg, lo, hi);
        for (const std::string& f : sweep.failures) std::cerr << "sweep: " << f << "\n";
        std::string stem = "sweep_" + std::to_string(lo) + "-" + std::to_string(hi) + "_" +
                           grad_tag(cfg);
        fs::path p = out_file(opt, stem, "csv");
        write_csv(sweep_table(sweep), p);
        std::cout << p.string() << "\n";
        if (opt.format == "structured") {
            fs::path pj = out_file(opt, stem, "json");
            write_text(pj, sweep_json(sweep));
            std::cout << pj.string() << "\n";
        }

        if (*cmd_fit || *cmd_report) {
            auto jmax_col = +[](const SweepRow& r) { return r.j2_max; };
            auto jmin_col = +[](const SweepRow& r) { return r.j2_min; };
            auto lf_col = +[](const SweepRow& r) { return r.local_field_edge; };
            FitResult fit_max =
                fit_scaling(n_of(sweep), column_of(sweep, jmax_col), FitModel::power_law);
            FitResult fit_min =
                fit_scaling(n_of(sweep), column_of(sweep, jmin_col), FitModel::power_law);
            FitResult fit_lf =
                fit_scaling(n_of(sweep), column_of(sweep, lf_col), FitModel::power_law_log);
            std::printf("J2_max ~ c N^a: a = %.4f +- %.4f\n", fit_max.params[1],
                        fit_max.uncertainties[1]);
            std::printf("J2_min ~ c N^a: a = %.4f +- %.4f\n", fit_min.params[1],
                        fit_min.uncertainties[1]);
            std::printf("local field ~ c N^a log(bN): a = %.4f +- %.4f, b = %.4f +- %.4f\n",
                        fit_lf.params[1], fit_lf.uncertainties[1], fit_lf.params[2],
                        fit_lf.uncertainties[2]);
            write_text(out_file(opt, "fit_j2_max_" + grad_tag(cfg), "json"),
                       fit_json("j2_max", fit_max));
            write_text(out_file(opt, "fit_j2_min_" + grad_tag(cfg), "json"),
                       fit_json("j2_min", fit_min));
            write_text(out_file(opt, "fit_local_field_edge_" + grad_tag(cfg), "json"),
                       fit_json("local_field_edge", fit_lf));

            if (opt.format == "plot") {
                std::vector<PlotSeries> series;
                add_sweep_fit_series(series, sweep, fit_max, "J2_max", jmax_col, true);
                add_sweep_fit_series(series, sweep, fit_min, "J2_min", jmin_col, true);
                fs::path ps = out_file(opt, stem, "svg");
                write_loglog_svg(ps, "Spin-spin coupling vs chain length", "N", "J2 (Hz)", series);
                std::cout << ps.string() << "\n";
                std::vector<PlotSeries> lf_series;
                add_sweep_fit_series(lf_series, sweep, fit_lf, "edge field", lf_col, true);
                fs::path pl = out_file(opt, "localfield_" + stem, "svg");
                write_loglog_svg(pl, "Edge local field vs chain length", "N", "field (Hz)",
                                 lf_series);
                std::cout << pl.string() << "\n";
            }
        }
    }

    if (*cmd_oracle) {
        Configuration ocfg = cfg;
        if (ocfg.n_ions != opt.oracle_ions) {
            ocfg.n_ions = opt.oracle_ions;
            ocfg.alpha_n.assign(ocfg.n_ions, 0.0);
            ocfg.phonon_occupations.assign(ocfg.n_ions, 0);
        }
        OracleResult result = run_oracle(ocfg, opt.oracle_cutoff, opt.oracle_order);
        std::string text = oracle_json(result, opt.oracle_cutoff, opt.oracle_order);
        fs::path p = out_file(opt,
                              "oracle_" + std::to_string(ocfg.n_ions) + "_" + grad_tag(ocfg), "json");
        write_text(p, text);
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
