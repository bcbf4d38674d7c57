#include "qnd/collision.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

constexpr double kMinProbability = 1e-300;

void check_dims(int a, int b) {
    if (a != b) throw std::domain_error("state and Kraus coefficients differ in truncation");
}

void check_counts(const CountRecord& counts) {
    if (counts.n_plus < 0 || counts.n_minus < 0)
        throw std::invalid_argument("electron counts must be nonnegative");
}

// Log-magnitude and phase of C^k with C = 0 handled exactly.
struct LogPower {
    double log_mag;  // -inf when the power vanishes
    double phase;
};

LogPower log_power(const complex_t& c, long k) {
    if (k == 0) return {0.0, 0.0};
    const double mag = std::abs(c);
    if (mag == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
    return {static_cast<double>(k) * std::log(mag), static_cast<double>(k) * std::arg(c)};
}

double log_binomial(long n, long k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

KrausPair::KrausPair(std::vector<complex_t> c_plus, std::vector<complex_t> c_minus,
                     CouplingConstants coupling)
    : c_plus_(std::move(c_plus)), c_minus_(std::move(c_minus)), coupling_(coupling) {
    if (c_plus_.size() != c_minus_.size() || c_plus_.empty())
        throw std::invalid_argument("Kraus coefficient arrays must be nonempty and equal length");
    prob_plus_.resize(c_plus_.size());
    for (std::size_t n = 0; n < c_plus_.size(); ++n) prob_plus_[n] = std::norm(c_plus_[n]);
}

KrausPair kraus_coefficients(const CouplingConstants& coupling, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    std::vector<complex_t> cp(static_cast<std::size_t>(n_max) + 1);
    std::vector<complex_t> cm(cp.size());
    const double half_theta0 = coupling.theta0() / 2.0;
    for (int n = 0; n <= n_max; ++n) {
        const complex_t en = std::polar(1.0, coupling.zeta_n() * n + half_theta0);
        const complex_t ew = std::polar(1.0, coupling.zeta_w() * n - half_theta0);
        cp[static_cast<std::size_t>(n)] = 0.5 * (en + ew);
        cm[static_cast<std::size_t>(n)] = 0.5 * (en - ew);
    }
    return KrausPair(std::move(cp), std::move(cm), coupling);
}

std::pair<double, double> outcome_probabilities(const PhotonPureState& state,
                                                const KrausPair& kraus) {
    check_dims(state.dim(), kraus.dim());
    const auto& qp = kraus.prob_plus();
    double p_plus = 0.0;
    for (int n = 0; n < state.dim(); ++n)
        p_plus += std::norm(state.amplitude(n)) * qp[static_cast<std::size_t>(n)];
    return {p_plus, 1.0 - p_plus};
}

std::pair<PhotonPureState, double> apply_outcome(const PhotonPureState& state,
                                                 const KrausPair& kraus, Outcome outcome) {
    check_dims(state.dim(), kraus.dim());
    const auto [p_plus, p_minus] = outcome_probabilities(state, kraus);
    const double p = outcome == Outcome::plus ? p_plus : p_minus;
    if (p < kMinProbability)
        throw conditioning_error("conditioning on an outcome of vanishing probability");
    const auto& c = outcome == Outcome::plus ? kraus.c_plus() : kraus.c_minus();
    const double inv = 1.0 / std::sqrt(p);
    std::vector<complex_t> a(static_cast<std::size_t>(state.dim()));
    for (int n = 0; n < state.dim(); ++n)
        a[static_cast<std::size_t>(n)] = state.amplitude(n) * c[static_cast<std::size_t>(n)] * inv;
    return {PhotonPureState(std::move(a)), p};
}

PhotonPureState batch_posterior(const PhotonPureState& state, const KrausPair& kraus,
                                const CountRecord& counts) {
    check_dims(state.dim(), kraus.dim());
    check_counts(counts);
    const int dim = state.dim();
    std::vector<double> log_mag(static_cast<std::size_t>(dim));
    std::vector<double> phase(static_cast<std::size_t>(dim));
    double max_log = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < dim; ++n) {
        const auto lp = log_power(kraus.c_plus()[static_cast<std::size_t>(n)], counts.n_plus);
        const auto lm = log_power(kraus.c_minus()[static_cast<std::size_t>(n)], counts.n_minus);
        log_mag[static_cast<std::size_t>(n)] = lp.log_mag + lm.log_mag;
        phase[static_cast<std::size_t>(n)] = lp.phase + lm.phase;
        if (std::norm(state.amplitude(n)) > 0.0)
            max_log = std::max(max_log, log_mag[static_cast<std::size_t>(n)]);
    }
    if (!std::isfinite(max_log))
        throw conditioning_error("outcome record annihilates every populated number state");
    std::vector<complex_t> a(static_cast<std::size_t>(dim));
    double n2 = 0.0;
    for (int n = 0; n < dim; ++n) {
        const double mag = std::exp(log_mag[static_cast<std::size_t>(n)] - max_log);
        a[static_cast<std::size_t>(n)] =
            state.amplitude(n) * std::polar(mag, phase[static_cast<std::size_t>(n)]);
        n2 += std::norm(a[static_cast<std::size_t>(n)]);
    }
    if (n2 < kMinProbability)
        throw conditioning_error("outcome record has vanishing probability");
    return PhotonPureState(std::move(a));
}

double batch_probability(const PhotonPureState& state, const KrausPair& kraus,
                         const CountRecord& counts) {
    check_dims(state.dim(), kraus.dim());
    check_counts(counts);
    const double lb = log_binomial(counts.total(), counts.n_plus);
    double p = 0.0;
    for (int n = 0; n < state.dim(); ++n) {
        const double w = std::norm(state.amplitude(n));
        if (w == 0.0) continue;
        const auto lp = log_power(kraus.c_plus()[static_cast<std::size_t>(n)], counts.n_plus);
        const auto lm = log_power(kraus.c_minus()[static_cast<std::size_t>(n)], counts.n_minus);
        const double log_term = 2.0 * (lp.log_mag + lm.log_mag);
        if (std::isfinite(log_term)) p += w * std::exp(lb + log_term);
    }
    return p;
}

std::vector<double> posterior_number_distribution(const PhotonPureState& state,
                                                  const KrausPair& kraus,
                                                  const CountRecord& counts) {
    check_dims(state.dim(), kraus.dim());
    check_counts(counts);
    const int dim = state.dim();
    std::vector<double> log_w(static_cast<std::size_t>(dim));
    double max_log = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < dim; ++n) {
        const auto lp = log_power(kraus.c_plus()[static_cast<std::size_t>(n)], counts.n_plus);
        const auto lm = log_power(kraus.c_minus()[static_cast<std::size_t>(n)], counts.n_minus);
        log_w[static_cast<std::size_t>(n)] = 2.0 * (lp.log_mag + lm.log_mag);
        if (std::norm(state.amplitude(n)) > 0.0)
            max_log = std::max(max_log, log_w[static_cast<std::size_t>(n)]);
    }
    if (!std::isfinite(max_log))
        throw conditioning_error("outcome record annihilates every populated number state");
    std::vector<double> w(static_cast<std::size_t>(dim));
    double sum = 0.0;
    for (int n = 0; n < dim; ++n) {
        w[static_cast<std::size_t>(n)] =
            std::norm(state.amplitude(n)) * std::exp(log_w[static_cast<std::size_t>(n)] - max_log);
        sum += w[static_cast<std::size_t>(n)];
    }
    if (sum < kMinProbability)
        throw conditioning_error("outcome record has vanishing probability");
    for (auto& x : w) x /= sum;
    return w;
}

}  // namespace qnd
