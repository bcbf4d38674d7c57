#pragma once

#include <utility>

#include "qnd/collision.hpp"
#include "qnd/device.hpp"
#include "qnd/fock.hpp"

namespace qnd {

// Outcome-averaged photon density matrix after N electron collisions:
// rho_{mn} = a_m a_n^* [ (e^{i zeta_N (m-n)} + e^{i zeta_W (m-n)}) / 2 ]^N.
PhotonDensityMatrix density_after_collisions_closed(const PhotonPureState& initial,
                                                    const CouplingConstants& coupling,
                                                    long n_collisions);

// Same map assembled as sum_{N_+} P(N_+, N_-) |psi''><psi''|. Combinatorial
// reference path, capped at N <= 64.
PhotonDensityMatrix density_after_collisions_sum(const PhotonPureState& initial,
                                                 const KrausPair& kraus, int n_collisions);

// The diagonal of rho.
std::vector<double> ensemble_number_distribution(const PhotonDensityMatrix& rho);

// Normalized per-electron channel intensities [1 +- <cos(g n + theta0)>]/2.
std::pair<double, double> mean_currents(const PhotonPureState& state, const KrausPair& kraus);
std::pair<double, double> mean_currents(const PhotonDensityMatrix& rho, const KrausPair& kraus);

}  // namespace qnd
