#pragma once

#include <cstdint>
#include <vector>

#include "qnd/collision.hpp"
#include "qnd/device.hpp"
#include "qnd/fock.hpp"

namespace qnd {

struct TrajectoryRecord {
    std::uint64_t master_seed;
    long trial_index;
    CountRecord counts;
    double estimate;  // NaN when g = 0 (no information carried)
    double posterior_number_variance;
};

struct ErrorReport {
    long n_electrons;
    double g;
    double empirical_error_variance;
    double predicted;  // 1 / (g^2 N)
    double ratio;      // empirical / predicted
};

// Sequentially samples one electron at a time from the evolving posterior.
// Deterministic for a given master_seed regardless of thread count; trial t
// always uses the sub-seed derive_seed(master_seed, t).
std::vector<TrajectoryRecord> simulate_trajectories(const PhotonPureState& state,
                                                    const KrausPair& kraus, long n_electrons,
                                                    long trials, std::uint64_t master_seed,
                                                    int threads = 0);

// Inverts the channel-frequency law at the theta0 = -pi/2 operating point:
// n_hat = asin(clamp(2 N_+/N - 1)) / g, valid on the branch |g n| < pi/2.
// Throws std::domain_error when g = 0.
double estimate_n(const CountRecord& counts, const CouplingConstants& coupling);

// Variance of n_hat across trials for a number-state input, compared with
// 1/(g^2 N). Preconditions: |g n0| < pi/4 and N >= 100 (linearized regime).
ErrorReport empirical_measurement_error(const PhotonPureState& number_state,
                                        const KrausPair& kraus, long n_electrons, long trials,
                                        std::uint64_t master_seed, int threads = 0);

double uncertainty_product(const ErrorReport& error, double backaction);

}  // namespace qnd
