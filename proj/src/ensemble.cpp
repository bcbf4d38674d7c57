#include "qnd/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace qnd {

namespace {

complex_t pow_by_squaring(complex_t base, long exponent) {
    complex_t result{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

}  // namespace

PhotonDensityMatrix density_after_collisions_closed(const PhotonPureState& initial,
                                                    const CouplingConstants& coupling,
                                                    long n_collisions) {
    if (n_collisions < 0) throw std::invalid_argument("collision count must be nonnegative");
    const int dim = initial.dim();
    PhotonDensityMatrix rho(dim);
    // One dephasing factor per diagonal offset d = m - n.
    for (int d = 0; d < dim; ++d) {
        const complex_t base =
            0.5 * (std::polar(1.0, coupling.zeta_n() * d) + std::polar(1.0, coupling.zeta_w() * d));
        const complex_t factor = pow_by_squaring(base, n_collisions);
        for (int n = 0; n + d < dim; ++n) {
            const int m = n + d;
            const complex_t outer = initial.amplitude(m) * std::conj(initial.amplitude(n));
            rho.at(m, n) = outer * factor;
            if (d > 0) rho.at(n, m) = std::conj(rho.at(m, n));
        }
    }
    return rho;
}

PhotonDensityMatrix density_after_collisions_sum(const PhotonPureState& initial,
                                                 const KrausPair& kraus, int n_collisions) {
    if (n_collisions < 0) throw std::invalid_argument("collision count must be nonnegative");
    if (n_collisions > 64)
        throw std::out_of_range("outcome-sum path is limited to 64 collisions");
    const int dim = initial.dim();
    PhotonDensityMatrix rho(dim);
    // P |psi''><psi''| = binom(N, N_+) u u^dagger with u_n = a_n C+^{N_+} C-^{N_-}.
    for (int n_plus = 0; n_plus <= n_collisions; ++n_plus) {
        double binom = 1.0;
        for (int k = 1; k <= n_plus; ++k)
            binom *= static_cast<double>(n_collisions - n_plus + k) / static_cast<double>(k);
        std::vector<complex_t> u(static_cast<std::size_t>(dim));
        for (int n = 0; n < dim; ++n)
            u[static_cast<std::size_t>(n)] =
                initial.amplitude(n) *
                pow_by_squaring(kraus.c_plus()[static_cast<std::size_t>(n)], n_plus) *
                pow_by_squaring(kraus.c_minus()[static_cast<std::size_t>(n)],
                                n_collisions - n_plus);
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n)
                rho.at(m, n) += binom * u[static_cast<std::size_t>(m)] *
                                std::conj(u[static_cast<std::size_t>(n)]);
    }
    return rho;
}

std::vector<double> ensemble_number_distribution(const PhotonDensityMatrix& rho) {
    return rho.diagonal();
}

std::pair<double, double> mean_currents(const PhotonPureState& state, const KrausPair& kraus) {
    return outcome_probabilities(state, kraus);
}

std::pair<double, double> mean_currents(const PhotonDensityMatrix& rho, const KrausPair& kraus) {
    if (rho.dim() != kraus.dim())
        throw std::domain_error("state and Kraus coefficients differ in truncation");
    const auto p = rho.diagonal();
    double j_plus = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) j_plus += p[n] * kraus.prob_plus()[n];
    return {j_plus, 1.0 - j_plus};
}

}  // namespace qnd
