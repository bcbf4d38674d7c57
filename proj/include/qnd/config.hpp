#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnd/device.hpp"
#include "qnd/fock.hpp"

namespace qnd {

struct DeviceSection {
    WireParams narrow;
    WireParams wide;
    OpticalParams optical;
    ElectronParams electron;
    double theta0 = 0.0;
    double resonance_floor_mev = 0.1;
};

struct CouplingSection {
    double zeta_n = 0.0;
    double zeta_w = 0.0;
    double theta0 = 0.0;
};

enum class LightKind { number, coherent };

struct LightSection {
    LightKind kind = LightKind::coherent;
    long n0 = 0;
    complex_t xi{0.0, 0.0};
    std::optional<int> n_max_override;
};

struct RunSection {
    long n_electrons = 100;
    long trials = 1000;
    std::uint64_t master_seed = 1;
    int phase_grid = 4096;
    int q_grid = 121;
    double q_extent = 0.0;  // 0 means auto from the light state
    std::vector<long> qfunc_n_list{0, 1, 2, 3, 100};
    std::string out_dir = "out";
};

struct ExperimentConfig {
    std::optional<DeviceSection> device;
    std::optional<CouplingSection> coupling;
    LightSection light;
    RunSection run;

    CouplingConstants resolve_coupling() const;
    int state_n_max() const;
    PhotonPureState initial_state() const;

    // Canonical text form; parse_config(to_text()) reproduces the config.
    std::string to_text() const;
    bool operator==(const ExperimentConfig& other) const;
};

struct ConfigViolation {
    int line;  // 0 when not tied to a line
    std::string message;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<ConfigViolation> errors;
    bool ok() const { return config.has_value() && errors.empty(); }
};

// Line-oriented sectioned key=value text. Collects every violation instead of
// stopping at the first one.
ParseResult parse_config(const std::string& text);

}  // namespace qnd
