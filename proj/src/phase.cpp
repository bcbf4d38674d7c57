#include "qnd/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnd {

namespace {

double wrap_angle(double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi + std::numbers::pi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return phi - std::numbers::pi;
}

}  // namespace

double QFunctionGrid::total_mass() const {
    if (a1_axis.size() < 2 || a2_axis.size() < 2) return 0.0;
    const double h1 = a1_axis[1] - a1_axis[0];
    const double h2 = a2_axis[1] - a2_axis[0];
    double s = 0.0;
    for (double v : values) s += v;
    return s * h1 * h2;
}

PhaseDistribution canonical_phase_distribution(const PhotonDensityMatrix& rho, int n_angles) {
    if (n_angles < 64) throw std::invalid_argument("phase grid needs at least 64 angles");
    const int dim = rho.dim();
    // Fourier coefficients C_d = sum_m rho_{m, m+d}, d = n - m.
    std::vector<complex_t> coeff(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
        complex_t c{0.0, 0.0};
        for (int m = 0; m + d < dim; ++m) c += rho.at(m, m + d);
        coeff[static_cast<std::size_t>(d)] = c;
    }
    PhaseDistribution dist;
    dist.angles.resize(static_cast<std::size_t>(n_angles));
    dist.density.resize(static_cast<std::size_t>(n_angles));
    const double step = 2.0 * std::numbers::pi / n_angles;
    for (int k = 0; k < n_angles; ++k) {
        const double phi = -std::numbers::pi + step * k;
        const complex_t rot = std::polar(1.0, phi);
        complex_t e{1.0, 0.0};
        double p = coeff[0].real();
        for (int d = 1; d < dim; ++d) {
            e *= rot;
            p += 2.0 * (coeff[static_cast<std::size_t>(d)] * e).real();
        }
        dist.angles[static_cast<std::size_t>(k)] = phi;
        dist.density[static_cast<std::size_t>(k)] = p / (2.0 * std::numbers::pi);
    }
    return dist;
}

double phase_variance(const PhaseDistribution& dist) {
    if (dist.angles.size() != dist.density.size() || dist.angles.size() < 2)
        throw std::invalid_argument("malformed phase distribution");
    const double step = dist.angles[1] - dist.angles[0];
    complex_t mean_vec{0.0, 0.0};
    for (std::size_t k = 0; k < dist.angles.size(); ++k)
        mean_vec += dist.density[k] * std::polar(1.0, dist.angles[k]);
    mean_vec *= step;
    const double mu = std::abs(mean_vec) > 1e-14 ? std::arg(mean_vec) : 0.0;
    double var = 0.0;
    for (std::size_t k = 0; k < dist.angles.size(); ++k) {
        const double d = wrap_angle(dist.angles[k] - mu);
        var += d * d * dist.density[k];
    }
    return var * step;
}

QuadratureMoments quadrature_moments(const PhotonDensityMatrix& rho) {
    const int dim = rho.dim();
    complex_t mean_a{0.0, 0.0};   // <a> = sum_m sqrt(m) rho_{m, m-1}
    complex_t mean_a2{0.0, 0.0};  // <a^2> = sum_m sqrt(m(m-1)) rho_{m, m-2}
    double mean_n = 0.0;
    for (int m = 1; m < dim; ++m)
        mean_a += std::sqrt(static_cast<double>(m)) * rho.at(m, m - 1);
    for (int m = 2; m < dim; ++m)
        mean_a2 += std::sqrt(static_cast<double>(m) * (m - 1.0)) * rho.at(m, m - 2);
    for (int m = 0; m < dim; ++m) mean_n += m * rho.at(m, m).real();

    QuadratureMoments out;
    out.mean_a1 = mean_a.real();
    out.mean_a2 = mean_a.imag();
    const double second_a1 = 0.25 * (2.0 * mean_a2.real() + 2.0 * mean_n + 1.0);
    const double second_a2 = 0.25 * (2.0 * mean_n + 1.0 - 2.0 * mean_a2.real());
    out.var_a1 = second_a1 - out.mean_a1 * out.mean_a1;
    out.var_a2 = second_a2 - out.mean_a2 * out.mean_a2;
    return out;
}

QFunctionGrid husimi_q(const PhotonDensityMatrix& rho, const QGridSpec& spec) {
    if (spec.points_per_axis < 2) throw std::invalid_argument("Q grid needs at least 2 points");
    if (!(spec.a1_max > spec.a1_min) || !(spec.a2_max > spec.a2_min))
        throw std::invalid_argument("Q grid extents must be increasing");
    const int np = spec.points_per_axis;
    const int dim = rho.dim();
    QFunctionGrid grid;
    grid.a1_axis.resize(static_cast<std::size_t>(np));
    grid.a2_axis.resize(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
        grid.a1_axis[static_cast<std::size_t>(i)] =
            spec.a1_min + (spec.a1_max - spec.a1_min) * i / (np - 1);
        grid.a2_axis[static_cast<std::size_t>(i)] =
            spec.a2_min + (spec.a2_max - spec.a2_min) * i / (np - 1);
    }
    grid.values.resize(static_cast<std::size_t>(np) * np);
    std::vector<complex_t> c(static_cast<std::size_t>(dim));
    for (int i2 = 0; i2 < np; ++i2) {
        for (int i1 = 0; i1 < np; ++i1) {
            const complex_t alpha{grid.a1_axis[static_cast<std::size_t>(i1)],
                                  grid.a2_axis[static_cast<std::size_t>(i2)]};
            c[0] = complex_t{std::exp(-0.5 * std::norm(alpha)), 0.0};
            for (int n = 1; n < dim; ++n)
                c[static_cast<std::size_t>(n)] =
                    c[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(static_cast<double>(n));
            complex_t q{0.0, 0.0};
            for (int m = 0; m < dim; ++m) {
                complex_t row{0.0, 0.0};
                for (int n = 0; n < dim; ++n) row += rho.at(m, n) * c[static_cast<std::size_t>(n)];
                q += std::conj(c[static_cast<std::size_t>(m)]) * row;
            }
            grid.values[static_cast<std::size_t>(i2) * np + i1] = q.real() / std::numbers::pi;
        }
    }
    return grid;
}

double backaction_noise(const PhotonDensityMatrix& rho_init, const PhotonDensityMatrix& rho_final,
                        int n_angles) {
    return phase_variance(canonical_phase_distribution(rho_final, n_angles)) -
           phase_variance(canonical_phase_distribution(rho_init, n_angles));
}

}  // namespace qnd
