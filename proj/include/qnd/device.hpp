#pragma once

namespace qnd {

// Structural description of one quantum wire. The lateral optical mode enters
// only through the line-integrated intensity sampled at the wire center,
// int |u(x, y0, z0)|^2 dx, in 1/nm^2.
struct WireParams {
    double well_width_nm;
    double effective_mass_ratio;       // m*/m_e
    double center_x_intensity_inv_nm2;
};

struct OpticalParams {
    double photon_energy_mev;  // hbar*omega
};

struct ElectronParams {
    double wavenumber_inv_nm;  // k
};

// Dimensionless per-photon phase shifts of the two wires and the mode
// converter offset. g is always recomputed from zeta_N - zeta_W.
class CouplingConstants {
public:
    CouplingConstants(double zeta_n, double zeta_w, double theta0);

    double zeta_n() const { return zeta_n_; }
    double zeta_w() const { return zeta_w_; }
    double theta0() const { return theta0_; }
    double g() const { return zeta_n_ - zeta_w_; }

private:
    double zeta_n_;
    double zeta_w_;
    double theta0_;
};

struct SubbandEnergies {
    double eps_a_mev;
    double eps_b_mev;
};

struct WindowCheck {
    bool ok;
    double narrow_gap_mev;  // eps_b^N - eps_a^N
    double wide_gap_mev;    // eps_b^W - eps_a^W
    double photon_energy_mev;
};

// Infinite-square-well levels: eps_j = j^2 pi^2 hbar^2 / (2 m* W^2), j = 1, 2.
SubbandEnergies subband_energies(const WireParams& wire);

// |<phi_b| z |phi_a>| = 16 W / (9 pi^2) for the infinite well.
double dipole_matrix_element_nm(const WireParams& wire);

// Delta = eps_b - eps_a - hbar*omega (signed, no floor applied).
double detuning_mev(const SubbandEnergies& levels, const OpticalParams& optical);

// zeta = [2 pi hbar*omega e^2 |z_ba|^2 / Delta] / (hbar^2 k / m*) * intensity.
// Throws resonance_error when |Delta| < resonance_floor_mev.
double coupling_zeta(const WireParams& wire, const OpticalParams& optical,
                     const ElectronParams& electron, double resonance_floor_mev = 0.1);

// True iff wide gap < photon energy < narrow gap (strict).
WindowCheck validate_frequency_window(const WireParams& narrow, const WireParams& wide,
                                      const OpticalParams& optical);

// Throws config_error unless the frequency window holds; the result then has
// zeta_N > 0 > zeta_W, so g > 0.
CouplingConstants build_coupling(const WireParams& narrow, const WireParams& wide,
                                 const OpticalParams& optical, const ElectronParams& electron,
                                 double theta0, double resonance_floor_mev = 0.1);

}  // namespace qnd
