#pragma once

#include <vector>

#include "qnd/fock.hpp"

namespace qnd {

// Number-conjugate phase density on a uniform angular grid over [-pi, pi).
struct PhaseDistribution {
    std::vector<double> angles;   // rad
    std::vector<double> density;  // 1/rad
};

struct QGridSpec {
    double a1_min;
    double a1_max;
    double a2_min;
    double a2_max;
    int points_per_axis;

    static QGridSpec centered(double radius, int points_per_axis) {
        return {-radius, radius, -radius, radius, points_per_axis};
    }
};

// Row-major over a2 (rows) then a1 (columns).
struct QFunctionGrid {
    std::vector<double> a1_axis;
    std::vector<double> a2_axis;
    std::vector<double> values;

    double value(int i2, int i1) const {
        return values[static_cast<std::size_t>(i2) * a1_axis.size() +
                      static_cast<std::size_t>(i1)];
    }
    // Rectangle-rule integral over the grid.
    double total_mass() const;
};

// P(phi) = (1/2pi) sum_{m,n} rho_{mn} e^{i(n-m)phi}.
PhaseDistribution canonical_phase_distribution(const PhotonDensityMatrix& rho,
                                               int n_angles = 4096);

// Circular variance about the circular mean, with angles wrapped to [-pi, pi).
double phase_variance(const PhaseDistribution& dist);

// Means and variances of a1 = (a + a^dag)/2 and a2 = (a - a^dag)/2i.
struct QuadratureMoments {
    double mean_a1;
    double mean_a2;
    double var_a1;
    double var_a2;
};
QuadratureMoments quadrature_moments(const PhotonDensityMatrix& rho);

// Q(alpha) = <alpha|rho|alpha>/pi with alpha = a1 + i a2.
QFunctionGrid husimi_q(const PhotonDensityMatrix& rho, const QGridSpec& spec);

// phase_variance(final) - phase_variance(initial).
double backaction_noise(const PhotonDensityMatrix& rho_init, const PhotonDensityMatrix& rho_final,
                        int n_angles = 4096);

}  // namespace qnd
