#include "qnd/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qnd/errors.hpp"
#include "qnd/rng.hpp"

namespace qnd {

namespace {

// The outcome draw and the conditioned number distribution depend on the
// amplitudes only through their moduli, so each trial evolves the weight
// vector w_n = |a_n|^2 directly.
TrajectoryRecord run_trial(const std::vector<double>& initial_weights, const KrausPair& kraus,
                           long n_electrons, long trial, std::uint64_t master_seed) {
    Xoshiro256 rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial)));
    std::vector<double> w = initial_weights;
    const auto& qp = kraus.prob_plus();
    const std::size_t dim = w.size();
    long n_plus = 0;
    for (long e = 0; e < n_electrons; ++e) {
        double p_plus = 0.0;
        for (std::size_t n = 0; n < dim; ++n) p_plus += w[n] * qp[n];
        const bool plus = rng.uniform() < p_plus;
        const double p = plus ? p_plus : 1.0 - p_plus;
        if (p < 1e-300) throw conditioning_error("sampled an outcome of vanishing probability");
        const double inv = 1.0 / p;
        if (plus) {
            for (std::size_t n = 0; n < dim; ++n) w[n] *= qp[n] * inv;
            ++n_plus;
        } else {
            for (std::size_t n = 0; n < dim; ++n) w[n] *= (1.0 - qp[n]) * inv;
        }
    }
    double mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
        mean += static_cast<double>(n) * w[n];
        second += static_cast<double>(n) * static_cast<double>(n) * w[n];
    }
    TrajectoryRecord rec;
    rec.master_seed = master_seed;
    rec.trial_index = trial;
    rec.counts = CountRecord{n_plus, n_electrons - n_plus};
    rec.posterior_number_variance = second - mean * mean;
    rec.estimate = kraus.coupling().g() != 0.0
                       ? estimate_n(rec.counts, kraus.coupling())
                       : std::numeric_limits<double>::quiet_NaN();
    return rec;
}

}  // namespace

std::vector<TrajectoryRecord> simulate_trajectories(const PhotonPureState& state,
                                                    const KrausPair& kraus, long n_electrons,
                                                    long trials, std::uint64_t master_seed,
                                                    int threads) {
    if (n_electrons < 1) throw std::invalid_argument("need at least one electron per trial");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (state.dim() != kraus.dim())
        throw std::domain_error("state and Kraus coefficients differ in truncation");

    const std::vector<double> weights = state.number_distribution();
    std::vector<TrajectoryRecord> records(static_cast<std::size_t>(trials));

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::min<unsigned>(
                                      8, std::max<unsigned>(1, std::thread::hardware_concurrency())));
    n_threads = static_cast<int>(std::min<long>(n_threads, trials));

    auto worker = [&](long begin, long end) {
        for (long t = begin; t < end; ++t)
            records[static_cast<std::size_t>(t)] =
                run_trial(weights, kraus, n_electrons, t, master_seed);
    };
    if (n_threads <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::future<void>> jobs;
        const long chunk = (trials + n_threads - 1) / n_threads;
        for (long begin = 0; begin < trials; begin += chunk)
            jobs.push_back(std::async(std::launch::async, worker, begin,
                                      std::min(trials, begin + chunk)));
        for (auto& j : jobs) j.get();
    }
    return records;
}

double estimate_n(const CountRecord& counts, const CouplingConstants& coupling) {
    if (counts.total() < 1) throw std::invalid_argument("estimation needs at least one electron");
    if (coupling.g() == 0.0)
        throw std::domain_error("identical wires carry no photon-number information");
    const double frequency =
        static_cast<double>(counts.n_plus) / static_cast<double>(counts.total());
    const double eps = 1e-12;
    const double x = std::clamp(2.0 * frequency - 1.0, -1.0 + eps, 1.0 - eps);
    return std::asin(x) / coupling.g();
}

ErrorReport empirical_measurement_error(const PhotonPureState& number_state,
                                        const KrausPair& kraus, long n_electrons, long trials,
                                        std::uint64_t master_seed, int threads) {
    const auto moments = number_moments(number_state);
    if (moments.variance > 1e-9)
        throw config_error("measurement-error runs require a number-state input");
    const long n0 = std::lround(moments.mean);
    const double g = kraus.coupling().g();
    if (g == 0.0) throw config_error("measurement-error runs require g != 0");
    if (std::abs(g * static_cast<double>(n0)) >= std::numbers::pi / 4.0)
        throw config_error("operating point too close to the estimator branch edge");
    if (n_electrons < 100)
        throw config_error("error-law runs need at least 100 electrons per trial");
    if (trials < 2) throw config_error("error-law runs need at least two trials");

    const auto records =
        simulate_trajectories(number_state, kraus, n_electrons, trials, master_seed, threads);
    double mean = 0.0;
    for (const auto& r : records) mean += r.estimate;
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (const auto& r : records) var += (r.estimate - mean) * (r.estimate - mean);
    var /= static_cast<double>(trials - 1);

    ErrorReport report;
    report.n_electrons = n_electrons;
    report.g = g;
    report.empirical_error_variance = var;
    report.predicted = 1.0 / (g * g * static_cast<double>(n_electrons));
    report.ratio = var / report.predicted;
    return report;
}

double uncertainty_product(const ErrorReport& error, double backaction) {
    return error.empirical_error_variance * backaction;
}

}  // namespace qnd
