#include "qnd/device.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

// hbar^2 / (2 m_e) in meV nm^2 (CODATA 2018 constants).
constexpr double kHbar2Over2MeMevNm2 = 38.0998212;
// e^2 / (4 pi eps0) in meV nm.
constexpr double kCoulombMevNm = 1439.96455;

void check_wire(const WireParams& w) {
    if (!(w.well_width_nm > 0.0)) throw std::invalid_argument("wire width must be positive");
    if (!(w.effective_mass_ratio > 0.0))
        throw std::invalid_argument("effective mass ratio must be positive");
    if (w.center_x_intensity_inv_nm2 < 0.0)
        throw std::invalid_argument("mode intensity must be nonnegative");
}

}  // namespace

CouplingConstants::CouplingConstants(double zeta_n, double zeta_w, double theta0)
    : zeta_n_(zeta_n), zeta_w_(zeta_w), theta0_(theta0) {}

SubbandEnergies subband_energies(const WireParams& wire) {
    check_wire(wire);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double base = pi2 * kHbar2Over2MeMevNm2 /
                        (wire.effective_mass_ratio * wire.well_width_nm * wire.well_width_nm);
    return {base, 4.0 * base};
}

double dipole_matrix_element_nm(const WireParams& wire) {
    check_wire(wire);
    return 16.0 * wire.well_width_nm / (9.0 * std::numbers::pi * std::numbers::pi);
}

double detuning_mev(const SubbandEnergies& levels, const OpticalParams& optical) {
    return levels.eps_b_mev - levels.eps_a_mev - optical.photon_energy_mev;
}

double coupling_zeta(const WireParams& wire, const OpticalParams& optical,
                     const ElectronParams& electron, double resonance_floor_mev) {
    check_wire(wire);
    if (!(optical.photon_energy_mev > 0.0))
        throw std::invalid_argument("photon energy must be positive");
    if (!(electron.wavenumber_inv_nm > 0.0))
        throw std::invalid_argument("electron wavenumber must be positive");
    const double delta = detuning_mev(subband_energies(wire), optical);
    if (std::abs(delta) < resonance_floor_mev)
        throw resonance_error("detuning " + std::to_string(delta) +
                              " meV is below the resonance floor of " +
                              std::to_string(resonance_floor_mev) + " meV");
    const double z_ba = dipole_matrix_element_nm(wire);
    // meV nm^3
    const double numerator = 2.0 * std::numbers::pi * optical.photon_energy_mev *
                             kCoulombMevNm * z_ba * z_ba / delta;
    // hbar^2 k / m*, meV nm
    const double denominator = 2.0 * kHbar2Over2MeMevNm2 * electron.wavenumber_inv_nm /
                               wire.effective_mass_ratio;
    return numerator / denominator * wire.center_x_intensity_inv_nm2;
}

WindowCheck validate_frequency_window(const WireParams& narrow, const WireParams& wide,
                                      const OpticalParams& optical) {
    const auto ln = subband_energies(narrow);
    const auto lw = subband_energies(wide);
    const double gap_n = ln.eps_b_mev - ln.eps_a_mev;
    const double gap_w = lw.eps_b_mev - lw.eps_a_mev;
    const bool ok = gap_w < optical.photon_energy_mev && optical.photon_energy_mev < gap_n;
    return {ok, gap_n, gap_w, optical.photon_energy_mev};
}

CouplingConstants build_coupling(const WireParams& narrow, const WireParams& wide,
                                 const OpticalParams& optical, const ElectronParams& electron,
                                 double theta0, double resonance_floor_mev) {
    const auto window = validate_frequency_window(narrow, wide, optical);
    if (!window.ok)
        throw config_error(
            "photon energy outside the no-absorption window: need eps_b^W - eps_a^W < "
            "photon_energy < eps_b^N - eps_a^N, got " +
            std::to_string(window.wide_gap_mev) + " meV, " +
            std::to_string(window.photon_energy_mev) + " meV, " +
            std::to_string(window.narrow_gap_mev) + " meV");
    const double zeta_n = coupling_zeta(narrow, optical, electron, resonance_floor_mev);
    const double zeta_w = coupling_zeta(wide, optical, electron, resonance_floor_mev);
    return CouplingConstants(zeta_n, zeta_w, theta0);
}

}  // namespace qnd
