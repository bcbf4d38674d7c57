#include "qnd/fock.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

double norm_squared(const std::vector<complex_t>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

}  // namespace

PhotonPureState::PhotonPureState(std::vector<complex_t> amplitudes)
    : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw std::invalid_argument("state needs at least one amplitude");
    const double n2 = norm_squared(amps_);
    if (!(n2 > 1e-300)) throw std::invalid_argument("cannot normalize a zero state vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : amps_) z *= inv;
}

std::vector<double> PhotonPureState::number_distribution() const {
    std::vector<double> p(amps_.size());
    for (std::size_t n = 0; n < amps_.size(); ++n) p[n] = std::norm(amps_[n]);
    return p;
}

PhotonDensityMatrix::PhotonDensityMatrix(int dim)
    : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("density matrix dimension must be positive");
}

PhotonDensityMatrix PhotonDensityMatrix::from_pure(const PhotonPureState& psi) {
    PhotonDensityMatrix rho(psi.dim());
    const auto& a = psi.amplitudes();
    for (int m = 0; m < rho.dim_; ++m)
        for (int n = 0; n < rho.dim_; ++n)
            rho.at(m, n) = a[static_cast<std::size_t>(m)] * std::conj(a[static_cast<std::size_t>(n)]);
    return rho;
}

double PhotonDensityMatrix::trace_real() const {
    double t = 0.0;
    for (int n = 0; n < dim_; ++n) t += at(n, n).real();
    return t;
}

double PhotonDensityMatrix::purity() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return s;
}

std::vector<double> PhotonDensityMatrix::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(dim_));
    for (int n = 0; n < dim_; ++n) d[static_cast<std::size_t>(n)] = at(n, n).real();
    return d;
}

double PhotonDensityMatrix::hermiticity_residual() const {
    double r = 0.0;
    for (int m = 0; m < dim_; ++m)
        for (int n = m; n < dim_; ++n)
            r = std::max(r, std::abs(at(m, n) - std::conj(at(n, m))));
    return r;
}

void PhotonDensityMatrix::validate(double tol) const {
    if (hermiticity_residual() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(trace_real() - 1.0) > tol)
        throw std::invalid_argument("density matrix trace differs from 1");
    for (int n = 0; n < dim_; ++n)
        if (at(n, n).real() < -tol)
            throw std::invalid_argument("density matrix has a negative diagonal entry");
}

PhotonPureState make_number_state(int n0, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    if (n0 < 0 || n0 > n_max)
        throw std::domain_error("number state index outside the truncated basis");
    std::vector<complex_t> a(static_cast<std::size_t>(n_max) + 1, complex_t{0.0, 0.0});
    a[static_cast<std::size_t>(n0)] = complex_t{1.0, 0.0};
    return PhotonPureState(std::move(a));
}

int coherent_n_max(double mean_photon_number) {
    if (mean_photon_number < 0.0)
        throw std::invalid_argument("mean photon number must be nonnegative");
    return static_cast<int>(
        std::ceil(mean_photon_number + 10.0 * std::sqrt(mean_photon_number + 1.0) + 20.0));
}

PhotonPureState make_coherent_state(const CoherentSpec& spec, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    const double mean = std::norm(spec.xi);
    std::vector<complex_t> a(static_cast<std::size_t>(n_max) + 1);
    a[0] = complex_t{std::exp(-mean / 2.0), 0.0};
    for (int n = 1; n <= n_max; ++n)
        a[static_cast<std::size_t>(n)] =
            a[static_cast<std::size_t>(n - 1)] * spec.xi / std::sqrt(static_cast<double>(n));
    const double captured = norm_squared(a);
    const double tail = 1.0 - captured;
    if (tail >= 1e-12) {
        const int required = coherent_n_max(mean);
        throw truncation_error(
            "coherent tail mass " + std::to_string(tail) + " at n_max " +
                std::to_string(n_max) + "; need n_max >= " + std::to_string(required),
            required);
    }
    return PhotonPureState(std::move(a));
}

Moments number_moments(const PhotonPureState& psi) {
    const auto p = psi.number_distribution();
    double mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        mean += static_cast<double>(n) * p[n];
        second += static_cast<double>(n) * static_cast<double>(n) * p[n];
    }
    return {mean, second - mean * mean};
}

Moments number_moments(const PhotonDensityMatrix& rho) {
    const auto p = rho.diagonal();
    double mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        mean += static_cast<double>(n) * p[n];
        second += static_cast<double>(n) * static_cast<double>(n) * p[n];
    }
    return {mean, second - mean * mean};
}

double fidelity(const PhotonPureState& a, const PhotonPureState& b) {
    if (a.dim() != b.dim())
        throw std::domain_error("fidelity requires states of equal truncation");
    complex_t ov{0.0, 0.0};
    for (int n = 0; n < a.dim(); ++n) ov += std::conj(a.amplitude(n)) * b.amplitude(n);
    return std::norm(ov);
}

double fidelity(const PhotonPureState& a, const PhotonDensityMatrix& rho) {
    if (a.dim() != rho.dim())
        throw std::domain_error("fidelity requires states of equal truncation");
    complex_t v{0.0, 0.0};
    for (int m = 0; m < rho.dim(); ++m)
        for (int n = 0; n < rho.dim(); ++n)
            v += std::conj(a.amplitude(m)) * rho.at(m, n) * a.amplitude(n);
    return v.real();
}

}  // namespace qnd
