#pragma once

#include <utility>
#include <vector>

#include "qnd/device.hpp"
#include "qnd/fock.hpp"

namespace qnd {

enum class Outcome { plus, minus };

struct CountRecord {
    long n_plus = 0;
    long n_minus = 0;
    long total() const { return n_plus + n_minus; }
};

// Per-photon-number amplitudes for an electron leaving through the + or -
// channel. Completeness |C_{n+}|^2 + |C_{n-}|^2 = 1 holds for every n.
class KrausPair {
public:
    KrausPair(std::vector<complex_t> c_plus, std::vector<complex_t> c_minus,
              CouplingConstants coupling);

    int n_max() const { return static_cast<int>(c_plus_.size()) - 1; }
    int dim() const { return static_cast<int>(c_plus_.size()); }
    const std::vector<complex_t>& c_plus() const { return c_plus_; }
    const std::vector<complex_t>& c_minus() const { return c_minus_; }
    // |C_{n+}|^2 per n; the minus probabilities are the complement.
    const std::vector<double>& prob_plus() const { return prob_plus_; }
    const CouplingConstants& coupling() const { return coupling_; }

private:
    std::vector<complex_t> c_plus_;
    std::vector<complex_t> c_minus_;
    std::vector<double> prob_plus_;
    CouplingConstants coupling_;
};

// C_{n+-} = [e^{i(zeta_N n + theta0/2)} +- e^{i(zeta_W n - theta0/2)}]/2,
// which makes the channel probabilities [1 +- cos(g n + theta0)]/2.
KrausPair kraus_coefficients(const CouplingConstants& coupling, int n_max);

// (p_plus, p_minus) with p_+- = sum_n |a_n|^2 |C_{n+-}|^2.
std::pair<double, double> outcome_probabilities(const PhotonPureState& state,
                                                const KrausPair& kraus);

// Condition on a single electron outcome: a_n <- a_n C_{n+-} / sqrt(p).
// Returns the posterior and the probability of the outcome.
std::pair<PhotonPureState, double> apply_outcome(const PhotonPureState& state,
                                                 const KrausPair& kraus, Outcome outcome);

// Posterior after (N_+, N_-) outcomes in one step; equal to the sequential
// result up to global phase.
PhotonPureState batch_posterior(const PhotonPureState& state, const KrausPair& kraus,
                                const CountRecord& counts);

// P(N_+, N_-) = binom(N, N_+) sum_n |a_n|^2 |C_{n+}|^{2N_+} |C_{n-}|^{2N_-}.
double batch_probability(const PhotonPureState& state, const KrausPair& kraus,
                         const CountRecord& counts);

// |<n|posterior>|^2 without building the state.
std::vector<double> posterior_number_distribution(const PhotonPureState& state,
                                                  const KrausPair& kraus,
                                                  const CountRecord& counts);

}  // namespace qnd
