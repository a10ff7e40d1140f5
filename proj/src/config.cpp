#include "magic/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "magic/constants.hpp"

namespace magic {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': cannot parse number '" + value + "'");
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': cannot parse integer '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::string normalized = value;
    for (char& c : normalized)
        if (c == ',') c = ' ';
    std::istringstream in(normalized);
    std::vector<std::string> items;
    std::string item;
    while (in >> item) items.push_back(item);
    return items;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

bool operator==(const Configuration& a, const Configuration& b) {
    return a.n_ions == b.n_ions && a.species_mass == b.species_mass &&
           a.omega_z == b.omega_z && a.omega_radial == b.omega_radial &&
           a.dB_dz == b.dB_dz && a.d2B_dz2 == b.d2B_dz2 &&
           a.g_factor_combination == b.g_factor_combination && a.alpha_n == b.alpha_n &&
           a.phonon_occupations == b.phonon_occupations &&
           a.sign_convention == b.sign_convention;
}

double linear_chain_stability_ratio(int n_ions) {
    return 0.73 * std::pow(static_cast<double>(n_ions), 0.86);
}

Configuration validate_config(const std::map<std::string, std::string>& raw) {
    static const std::set<std::string> known = {
        "n_ions",       "species_mass",     "omega_z",       "omega_z_hz",
        "omega_radial", "omega_radial_hz",  "dB_dz",         "d2B_dz2",
        "g_factor_combination", "alpha_n",  "phonon_occupations", "sign_convention"};
    for (const auto& [key, value] : raw) {
        (void)value;
        if (!known.count(key))
            throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
    if (raw.count("omega_z") && raw.count("omega_z_hz"))
        throw std::invalid_argument("config keys 'omega_z' and 'omega_z_hz' are mutually exclusive");
    if (raw.count("omega_radial") && raw.count("omega_radial_hz"))
        throw std::invalid_argument(
            "config keys 'omega_radial' and 'omega_radial_hz' are mutually exclusive");

    Configuration cfg;
    cfg.species_mass = constants::yb171_ion_mass;
    cfg.omega_z = constants::two_pi * 130e3;

    if (auto it = raw.find("n_ions"); it != raw.end()) {
        long n = parse_integer("n_ions", it->second);
        if (n < 1) throw std::invalid_argument("n_ions must be >= 1");
        cfg.n_ions = static_cast<int>(n);
    }
    if (auto it = raw.find("species_mass"); it != raw.end()) {
        cfg.species_mass = parse_number("species_mass", it->second);
        if (cfg.species_mass <= 0) throw std::invalid_argument("species_mass must be > 0");
    }
    if (auto it = raw.find("omega_z"); it != raw.end())
        cfg.omega_z = parse_number("omega_z", it->second);
    if (auto it = raw.find("omega_z_hz"); it != raw.end())
        cfg.omega_z = constants::two_pi * parse_number("omega_z_hz", it->second);
    if (cfg.omega_z <= 0) throw std::invalid_argument("omega_z must be > 0");

    if (auto it = raw.find("omega_radial"); it != raw.end())
        cfg.omega_radial = parse_number("omega_radial", it->second);
    if (auto it = raw.find("omega_radial_hz"); it != raw.end())
        cfg.omega_radial = constants::two_pi * parse_number("omega_radial_hz", it->second);
    if (cfg.omega_radial && *cfg.omega_radial <= 0)
        throw std::invalid_argument("omega_radial must be > 0");

    if (auto it = raw.find("dB_dz"); it != raw.end())
        cfg.dB_dz = parse_number("dB_dz", it->second);
    if (auto it = raw.find("d2B_dz2"); it != raw.end())
        cfg.d2B_dz2 = parse_number("d2B_dz2", it->second);
    if (auto it = raw.find("g_factor_combination"); it != raw.end())
        cfg.g_factor_combination = parse_number("g_factor_combination", it->second);

    cfg.alpha_n.assign(cfg.n_ions, 0.0);
    if (auto it = raw.find("alpha_n"); it != raw.end()) {
        auto items = split_list(it->second);
        if (items.size() == 1) {
            cfg.alpha_n.assign(cfg.n_ions, parse_number("alpha_n", items[0]));
        } else if (static_cast<int>(items.size()) == cfg.n_ions) {
            for (int i = 0; i < cfg.n_ions; ++i) cfg.alpha_n[i] = parse_number("alpha_n", items[i]);
        } else {
            throw std::invalid_argument("alpha_n must have 1 or n_ions entries");
        }
    }

    cfg.phonon_occupations.assign(cfg.n_ions, 0);
    if (auto it = raw.find("phonon_occupations"); it != raw.end()) {
        auto items = split_list(it->second);
        std::vector<int> occ;
        for (const auto& item : items) {
            long v = parse_integer("phonon_occupations", item);
            if (v < 0) throw std::invalid_argument("phonon_occupations must be >= 0");
            occ.push_back(static_cast<int>(v));
        }
        if (occ.size() == 1)
            cfg.phonon_occupations.assign(cfg.n_ions, occ[0]);
        else if (static_cast<int>(occ.size()) == cfg.n_ions)
            cfg.phonon_occupations = occ;
        else
            throw std::invalid_argument("phonon_occupations must have 1 or n_ions entries");
    }

    if (auto it = raw.find("sign_convention"); it != raw.end()) {
        if (it->second == "paper_negative")
            cfg.sign_convention = SignConvention::paper_negative;
        else if (it->second == "zeeman_positive")
            cfg.sign_convention = SignConvention::zeeman_positive;
        else
            throw std::invalid_argument("sign_convention must be 'paper_negative' or 'zeeman_positive'");
    }

    if (cfg.omega_radial) {
        if (*cfg.omega_radial <= cfg.omega_z)
            cfg.warnings.push_back("omega_radial does not exceed omega_z; the chain is not in the "
                                   "stiff-radial regime");
        double ratio = *cfg.omega_radial / cfg.omega_z;
        double required = linear_chain_stability_ratio(cfg.n_ions);
        if (ratio < required) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "omega_radial/omega_z = %.3g is below the linear-chain stability "
                          "heuristic %.3g for N=%d; a zig-zag transition is likely",
                          ratio, required, cfg.n_ions);
            cfg.warnings.push_back(buf);
        }
    }
    return cfg;
}

std::map<std::string, std::string> to_key_values(const Configuration& cfg) {
    std::map<std::string, std::string> out;
    out["n_ions"] = std::to_string(cfg.n_ions);
    out["species_mass"] = format_full(cfg.species_mass);
    out["omega_z"] = format_full(cfg.omega_z);
    if (cfg.omega_radial) out["omega_radial"] = format_full(*cfg.omega_radial);
    out["dB_dz"] = format_full(cfg.dB_dz);
    out["d2B_dz2"] = format_full(cfg.d2B_dz2);
    out["g_factor_combination"] = format_full(cfg.g_factor_combination);
    {
        std::string list;
        for (std::size_t i = 0; i < cfg.alpha_n.size(); ++i) {
            if (i) list += ", ";
            list += format_full(cfg.alpha_n[i]);
        }
        out["alpha_n"] = list;
    }
    {
        std::string list;
        for (std::size_t i = 0; i < cfg.phonon_occupations.size(); ++i) {
            if (i) list += ", ";
            list += std::to_string(cfg.phonon_occupations[i]);
        }
        out["phonon_occupations"] = list;
    }
    out["sign_convention"] = cfg.sign_convention == SignConvention::paper_negative
                                 ? "paper_negative"
                                 : "zeeman_positive";
    return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (out.count(key))
            throw std::invalid_argument("duplicate configuration key '" + key + "'");
        out[key] = value;
    }
    return out;
}

Configuration load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return validate_config(parse_config_text(buf.str()));
}

std::string serialize_config(const Configuration& cfg) {
    std::string out;
    for (const auto& [key, value] : to_key_values(cfg)) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    }
    return out;
}

}  // namespace magic
