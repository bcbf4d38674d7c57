#include "qnd/config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Plain floating-point literal, or "pi" optionally signed and divided:
// pi, -pi, pi/2, -pi/4, ...
bool parse_number(const std::string& raw, double& out) {
    std::string s = trim(raw);
    if (s.empty()) return false;
    double sign = 1.0;
    if (s[0] == '+' || s[0] == '-') {
        if (s[0] == '-') sign = -1.0;
        s = s.substr(1);
    }
    if (s.rfind("pi", 0) == 0) {
        double value = std::numbers::pi;
        std::string rest = trim(s.substr(2));
        if (!rest.empty()) {
            if (rest[0] != '/') return false;
            double divisor = 0.0;
            if (!parse_number(rest.substr(1), divisor) || divisor == 0.0) return false;
            value /= divisor;
        }
        out = sign * value;
        return true;
    }
    try {
        std::size_t used = 0;
        out = sign * std::stod(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_long(const std::string& raw, long& out) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        out = std::stol(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_u64(const std::string& raw, std::uint64_t& out) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        out = std::stoull(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

struct RawEntry {
    int line;
    std::string value;
};

using Section = std::map<std::string, RawEntry>;

}  // namespace

CouplingConstants ExperimentConfig::resolve_coupling() const {
    if (coupling)
        return CouplingConstants(coupling->zeta_n, coupling->zeta_w, coupling->theta0);
    if (device)
        return build_coupling(device->narrow, device->wide, device->optical, device->electron,
                              device->theta0, device->resonance_floor_mev);
    throw config_error("config resolves no coupling: device or coupling section required");
}

int ExperimentConfig::state_n_max() const {
    if (light.n_max_override) return *light.n_max_override;
    if (light.kind == LightKind::number) return static_cast<int>(light.n0) + 10;
    return coherent_n_max(std::norm(light.xi));
}

PhotonPureState ExperimentConfig::initial_state() const {
    const int n_max = state_n_max();
    if (light.kind == LightKind::number)
        return make_number_state(static_cast<int>(light.n0), n_max);
    return make_coherent_state(CoherentSpec{light.xi}, n_max);
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream out;
    if (device) {
        out << "[device]\n";
        out << "narrow_width_nm = " << fmt_double(device->narrow.well_width_nm) << "\n";
        out << "wide_width_nm = " << fmt_double(device->wide.well_width_nm) << "\n";
        out << "effective_mass_ratio = " << fmt_double(device->narrow.effective_mass_ratio)
            << "\n";
        out << "narrow_intensity_inv_nm2 = "
            << fmt_double(device->narrow.center_x_intensity_inv_nm2) << "\n";
        out << "wide_intensity_inv_nm2 = " << fmt_double(device->wide.center_x_intensity_inv_nm2)
            << "\n";
        out << "photon_energy_mev = " << fmt_double(device->optical.photon_energy_mev) << "\n";
        out << "wavenumber_inv_nm = " << fmt_double(device->electron.wavenumber_inv_nm) << "\n";
        out << "theta0 = " << fmt_double(device->theta0) << "\n";
        out << "resonance_floor_mev = " << fmt_double(device->resonance_floor_mev) << "\n";
    }
    if (coupling) {
        out << "[coupling]\n";
        out << "zeta_n = " << fmt_double(coupling->zeta_n) << "\n";
        out << "zeta_w = " << fmt_double(coupling->zeta_w) << "\n";
        out << "theta0 = " << fmt_double(coupling->theta0) << "\n";
    }
    out << "[light]\n";
    out << "kind = " << (light.kind == LightKind::number ? "number" : "coherent") << "\n";
    if (light.kind == LightKind::number) {
        out << "n0 = " << light.n0 << "\n";
    } else {
        out << "xi_re = " << fmt_double(light.xi.real()) << "\n";
        out << "xi_im = " << fmt_double(light.xi.imag()) << "\n";
    }
    if (light.n_max_override) out << "n_max = " << *light.n_max_override << "\n";
    out << "[run]\n";
    out << "electrons = " << run.n_electrons << "\n";
    out << "trials = " << run.trials << "\n";
    out << "master_seed = " << run.master_seed << "\n";
    out << "phase_grid = " << run.phase_grid << "\n";
    out << "q_grid = " << run.q_grid << "\n";
    out << "q_extent = " << fmt_double(run.q_extent) << "\n";
    out << "qfunc_n_list = ";
    for (std::size_t i = 0; i < run.qfunc_n_list.size(); ++i)
        out << (i ? "," : "") << run.qfunc_n_list[i];
    out << "\n";
    out << "out_dir = " << run.out_dir << "\n";
    return out.str();
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
    return to_text() == other.to_text();
}

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    auto& errors = result.errors;

    std::map<std::string, Section> sections;
    {
        std::istringstream in(text);
        std::string line;
        std::string current;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find_first_of("#;");
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    errors.push_back({line_no, "unterminated section header"});
                    continue;
                }
                current = trim(line.substr(1, line.size() - 2));
                if (current != "device" && current != "coupling" && current != "light" &&
                    current != "run")
                    errors.push_back({line_no, "unknown section [" + current + "]"});
                sections[current];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                errors.push_back({line_no, "expected key = value"});
                continue;
            }
            if (current.empty()) {
                errors.push_back({line_no, "key outside any section"});
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            auto& section = sections[current];
            if (section.count(key)) {
                errors.push_back({line_no, "duplicate key '" + key + "'"});
                continue;
            }
            section[key] = {line_no, value};
        }
    }

    auto take_double = [&](Section& s, const std::string& key, double& out) {
        auto it = s.find(key);
        if (it == s.end()) return false;
        if (!parse_number(it->second.value, out))
            errors.push_back({it->second.line, "cannot parse number for '" + key + "'"});
        s.erase(it);
        return true;
    };
    auto take_long = [&](Section& s, const std::string& key, long& out) {
        auto it = s.find(key);
        if (it == s.end()) return false;
        if (!parse_long(it->second.value, out))
            errors.push_back({it->second.line, "cannot parse integer for '" + key + "'"});
        s.erase(it);
        return true;
    };
    auto require_double = [&](Section& s, const std::string& key, double& out,
                              const std::string& section_name) {
        if (!take_double(s, key, out))
            errors.push_back({0, "missing key '" + key + "' in [" + section_name + "]"});
    };
    auto complain_unknown = [&](Section& s, const std::string& section_name) {
        for (const auto& [key, entry] : s)
            errors.push_back({entry.line, "unknown key '" + key + "' in [" + section_name + "]"});
    };

    ExperimentConfig cfg;

    const bool has_device = sections.count("device") > 0;
    const bool has_coupling = sections.count("coupling") > 0;
    if (has_device && has_coupling)
        errors.push_back({0, "config must contain exactly one of [device] and [coupling]"});
    if (!has_device && !has_coupling)
        errors.push_back({0, "config needs a [device] or [coupling] section"});

    if (has_device && !has_coupling) {
        auto& s = sections["device"];
        DeviceSection d{};
        double mass = 0.0;
        require_double(s, "narrow_width_nm", d.narrow.well_width_nm, "device");
        require_double(s, "wide_width_nm", d.wide.well_width_nm, "device");
        require_double(s, "effective_mass_ratio", mass, "device");
        require_double(s, "narrow_intensity_inv_nm2", d.narrow.center_x_intensity_inv_nm2,
                       "device");
        require_double(s, "wide_intensity_inv_nm2", d.wide.center_x_intensity_inv_nm2, "device");
        require_double(s, "photon_energy_mev", d.optical.photon_energy_mev, "device");
        require_double(s, "wavenumber_inv_nm", d.electron.wavenumber_inv_nm, "device");
        take_double(s, "theta0", d.theta0);
        take_double(s, "resonance_floor_mev", d.resonance_floor_mev);
        complain_unknown(s, "device");
        d.narrow.effective_mass_ratio = mass;
        d.wide.effective_mass_ratio = mass;
        cfg.device = d;
    }
    if (has_coupling && !has_device) {
        auto& s = sections["coupling"];
        CouplingSection c{};
        require_double(s, "zeta_n", c.zeta_n, "coupling");
        require_double(s, "zeta_w", c.zeta_w, "coupling");
        take_double(s, "theta0", c.theta0);
        complain_unknown(s, "coupling");
        cfg.coupling = c;
    }

    if (!sections.count("light")) {
        errors.push_back({0, "config needs a [light] section"});
    } else {
        auto& s = sections["light"];
        auto it = s.find("kind");
        if (it == s.end()) {
            errors.push_back({0, "missing key 'kind' in [light]"});
        } else {
            const std::string kind = it->second.value;
            if (kind == "number")
                cfg.light.kind = LightKind::number;
            else if (kind == "coherent")
                cfg.light.kind = LightKind::coherent;
            else
                errors.push_back({it->second.line, "light kind must be number or coherent"});
            s.erase(it);
        }
        long n0 = 0;
        if (take_long(s, "n0", n0)) cfg.light.n0 = n0;
        double xi_re = 0.0, xi_im = 0.0;
        const bool has_re = take_double(s, "xi_re", xi_re);
        const bool has_im = take_double(s, "xi_im", xi_im);
        if (has_re || has_im) cfg.light.xi = complex_t{xi_re, xi_im};
        long n_max = 0;
        if (take_long(s, "n_max", n_max)) cfg.light.n_max_override = static_cast<int>(n_max);
        complain_unknown(s, "light");
        if (cfg.light.kind == LightKind::number && (has_re || has_im))
            errors.push_back({0, "number-state light takes n0, not xi"});
        if (cfg.light.kind == LightKind::coherent && !has_re && !has_im)
            errors.push_back({0, "coherent light needs xi_re (and optionally xi_im)"});
    }

    if (sections.count("run")) {
        auto& s = sections["run"];
        take_long(s, "electrons", cfg.run.n_electrons);
        take_long(s, "trials", cfg.run.trials);
        if (auto it = s.find("master_seed"); it != s.end()) {
            if (!parse_u64(it->second.value, cfg.run.master_seed))
                errors.push_back({it->second.line, "cannot parse integer for 'master_seed'"});
            s.erase(it);
        }
        long v = 0;
        if (take_long(s, "phase_grid", v)) cfg.run.phase_grid = static_cast<int>(v);
        if (take_long(s, "q_grid", v)) cfg.run.q_grid = static_cast<int>(v);
        take_double(s, "q_extent", cfg.run.q_extent);
        if (auto it = s.find("qfunc_n_list"); it != s.end()) {
            cfg.run.qfunc_n_list.clear();
            std::istringstream list(it->second.value);
            std::string item;
            bool bad = false;
            while (std::getline(list, item, ',')) {
                long n = 0;
                if (!parse_long(item, n) || n < 0) bad = true;
                else cfg.run.qfunc_n_list.push_back(n);
            }
            if (bad)
                errors.push_back(
                    {it->second.line, "qfunc_n_list must be comma-separated nonnegative integers"});
            s.erase(it);
        }
        if (auto it = s.find("out_dir"); it != s.end()) {
            cfg.run.out_dir = it->second.value;
            s.erase(it);
        }
        complain_unknown(s, "run");
    }

    // Semantic checks: report everything found, not just the first.
    if (cfg.device) {
        const auto& d = *cfg.device;
        if (!(d.narrow.well_width_nm > 0.0)) errors.push_back({0, "narrow_width_nm must be > 0"});
        if (!(d.wide.well_width_nm > 0.0)) errors.push_back({0, "wide_width_nm must be > 0"});
        if (!(d.narrow.effective_mass_ratio > 0.0))
            errors.push_back({0, "effective_mass_ratio must be > 0"});
        if (d.narrow.center_x_intensity_inv_nm2 < 0.0)
            errors.push_back({0, "narrow_intensity_inv_nm2 must be >= 0"});
        if (d.wide.center_x_intensity_inv_nm2 < 0.0)
            errors.push_back({0, "wide_intensity_inv_nm2 must be >= 0"});
        if (!(d.optical.photon_energy_mev > 0.0))
            errors.push_back({0, "photon_energy_mev must be > 0"});
        if (!(d.electron.wavenumber_inv_nm > 0.0))
            errors.push_back({0, "wavenumber_inv_nm must be > 0"});
        if (d.narrow.well_width_nm > 0.0 && d.wide.well_width_nm > 0.0 &&
            d.narrow.effective_mass_ratio > 0.0 && d.optical.photon_energy_mev > 0.0) {
            const auto window = validate_frequency_window(d.narrow, d.wide, d.optical);
            if (!window.ok)
                errors.push_back(
                    {0,
                     "photon energy violates the no-absorption window eps_b^W - eps_a^W < "
                     "photon_energy < eps_b^N - eps_a^N (gaps " +
                         fmt_double(window.wide_gap_mev) + " and " +
                         fmt_double(window.narrow_gap_mev) + " meV, photon energy " +
                         fmt_double(window.photon_energy_mev) + " meV)"});
        }
    }
    if (cfg.light.n0 < 0) errors.push_back({0, "n0 must be >= 0"});
    if (cfg.light.n_max_override) {
        if (*cfg.light.n_max_override < 0) errors.push_back({0, "n_max must be >= 0"});
        if (cfg.light.kind == LightKind::number && *cfg.light.n_max_override < cfg.light.n0)
            errors.push_back({0, "n_max must be >= n0"});
    }
    if (cfg.run.n_electrons < 1) errors.push_back({0, "electrons must be >= 1"});
    if (cfg.run.trials < 1) errors.push_back({0, "trials must be >= 1"});
    if (cfg.run.phase_grid < 64) errors.push_back({0, "phase_grid must be >= 64"});
    if (cfg.run.q_grid < 2) errors.push_back({0, "q_grid must be >= 2"});
    if (cfg.run.q_extent < 0.0) errors.push_back({0, "q_extent must be >= 0"});
    if (cfg.run.out_dir.empty()) errors.push_back({0, "out_dir must not be empty"});

    if (errors.empty()) result.config = cfg;
    return result;
}

}  // namespace qnd
