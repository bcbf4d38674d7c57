#pragma once

#include <complex>
#include <vector>

namespace qnd {

using complex_t = std::complex<double>;

// Pure photon state over a truncated number basis n = 0..n_max.
// Construction always renormalizes, so sum_n |a_n|^2 = 1 afterwards.
class PhotonPureState {
public:
    explicit PhotonPureState(std::vector<complex_t> amplitudes);

    int n_max() const { return static_cast<int>(amps_.size()) - 1; }
    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<complex_t>& amplitudes() const { return amps_; }
    complex_t amplitude(int n) const { return amps_[static_cast<std::size_t>(n)]; }

    // |a_n|^2 per n.
    std::vector<double> number_distribution() const;

private:
    std::vector<complex_t> amps_;
};

// Dense Hermitian trace-one matrix rho_{mn} over the same truncated basis.
class PhotonDensityMatrix {
public:
    explicit PhotonDensityMatrix(int dim);
    static PhotonDensityMatrix from_pure(const PhotonPureState& psi);

    int dim() const { return dim_; }
    int n_max() const { return dim_ - 1; }

    complex_t& at(int m, int n) { return data_[static_cast<std::size_t>(m) * dim_ + n]; }
    const complex_t& at(int m, int n) const {
        return data_[static_cast<std::size_t>(m) * dim_ + n];
    }

    double trace_real() const;
    double purity() const;  // Tr rho^2
    std::vector<double> diagonal() const;
    double hermiticity_residual() const;

    // Throws std::invalid_argument if Hermiticity, unit trace, or diagonal
    // nonnegativity is violated beyond tol.
    void validate(double tol = 1e-12) const;

private:
    int dim_;
    std::vector<complex_t> data_;
};

struct CoherentSpec {
    complex_t xi;
};

struct Moments {
    double mean;
    double variance;
};

PhotonPureState make_number_state(int n0, int n_max);

// Truncation policy: smallest n_max guaranteeing coherent tail mass < 1e-12
// for mean photon numbers up to ~200.
int coherent_n_max(double mean_photon_number);

// a_n = e^{-|xi|^2/2} xi^n / sqrt(n!), renormalized after truncation.
// Throws truncation_error if the discarded tail mass reaches 1e-12.
PhotonPureState make_coherent_state(const CoherentSpec& spec, int n_max);

Moments number_moments(const PhotonPureState& psi);
Moments number_moments(const PhotonDensityMatrix& rho);

// Pure-pure: |<a|b>|^2. Pure-mixed: <a|rho|a>.
double fidelity(const PhotonPureState& a, const PhotonPureState& b);
double fidelity(const PhotonPureState& a, const PhotonDensityMatrix& rho);

}  // namespace qnd
