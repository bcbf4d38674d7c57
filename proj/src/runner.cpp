#include "qnd/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qnd/collision.hpp"
#include "qnd/ensemble.hpp"
#include "qnd/errors.hpp"
#include "qnd/estimation.hpp"
#include "qnd/phase.hpp"
#include "qnd/rng.hpp"

namespace qnd {

namespace {

constexpr const char* kArtifactVersion = "0.1.0";
const double kNaN = std::numeric_limits<double>::quiet_NaN();

ResultBundle make_bundle(const std::string& name, const ExperimentConfig& config) {
    ResultBundle bundle;
    bundle.name = name;
    bundle.metadata = {{"subcommand", name},
                      {"artifact_version", kArtifactVersion},
                      {"config", config.to_text()}};
    return bundle;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

}  // namespace

RunOutcome run_verify(const ExperimentConfig& config) {
    const auto coupling = config.resolve_coupling();
    const auto state = config.initial_state();
    const auto kraus = kraus_coefficients(coupling, state.n_max());

    Table table;
    table.name = "invariants";
    table.label_column = "invariant";
    table.columns = {"residual", "tolerance", "pass"};
    auto add = [&](const std::string& name, double residual, double tolerance) {
        table.labels.push_back(name);
        table.rows.push_back({residual, tolerance, residual <= tolerance ? 1.0 : 0.0});
    };

    {  // |C+|^2 + |C-|^2 = 1 per n
        double r = 0.0;
        for (int n = 0; n <= kraus.n_max(); ++n)
            r = std::max(r, std::abs(std::norm(kraus.c_plus()[static_cast<std::size_t>(n)]) +
                                     std::norm(kraus.c_minus()[static_cast<std::size_t>(n)]) -
                                     1.0));
        add("kraus_completeness", r, 1e-12);
    }
    {
        const auto [pp, pm] = outcome_probabilities(state, kraus);
        add("outcome_prob_normalization", std::abs(pp + pm - 1.0), 1e-12);
    }
    add("estimator_defined", coupling.g() == 0.0 ? 1.0 : 0.0, 0.5);
    {
        double r = 0.0;
        try {
            auto [post, p] = apply_outcome(state, kraus, Outcome::plus);
            double n2 = 0.0;
            for (const auto& z : post.amplitudes()) n2 += std::norm(z);
            r = std::abs(n2 - 1.0);
        } catch (const conditioning_error&) {
            r = 0.0;  // outcome impossible for this configuration; nothing to check
        }
        add("posterior_norm", r, 1e-12);
    }
    {  // ensemble diagonal is the initial number distribution, any N
        const auto rho = density_after_collisions_closed(state, coupling, config.run.n_electrons);
        add("number_distribution_invariance",
            max_abs_diff(ensemble_number_distribution(rho), state.number_distribution()), 1e-12);
    }
    {  // closed form against the combinatorial outcome sum
        const int n_small = static_cast<int>(std::min<long>(config.run.n_electrons, 16));
        const auto closed = density_after_collisions_closed(state, coupling, n_small);
        const auto summed = density_after_collisions_sum(state, kraus, n_small);
        double r = 0.0;
        for (int m = 0; m < closed.dim(); ++m)
            for (int n = 0; n < closed.dim(); ++n)
                r = std::max(r, std::abs(closed.at(m, n) - summed.at(m, n)));
        add("closed_vs_outcome_sum", r, 1e-10);
    }
    {  // batch conditioning equals sequential conditioning
        const long n_seq = 10;
        double worst = 0.0;
        for (long n_plus = 0; n_plus <= n_seq; ++n_plus) {
            const CountRecord counts{n_plus, n_seq - n_plus};
            double p_seq = 1.0;
            bool possible = true;
            PhotonPureState running = state;
            try {
                for (long i = 0; i < counts.n_plus; ++i) {
                    auto [next, p] = apply_outcome(running, kraus, Outcome::plus);
                    running = next;
                    p_seq *= p;
                }
                for (long i = 0; i < counts.n_minus; ++i) {
                    auto [next, p] = apply_outcome(running, kraus, Outcome::minus);
                    running = next;
                    p_seq *= p;
                }
            } catch (const conditioning_error&) {
                possible = false;
            }
            if (!possible) continue;
            const auto batch = batch_posterior(state, kraus, counts);
            worst = std::max(worst, 1.0 - fidelity(running, batch));
        }
        add("batch_vs_sequential", worst, 1e-10);
    }
    {  // number states are fixed points of conditioning
        const int n0 = std::min(state.n_max(),
                                static_cast<int>(std::lround(number_moments(state).mean)));
        const auto number = make_number_state(n0, state.n_max());
        double r = 0.0;
        try {
            const auto post = batch_posterior(number, kraus, CountRecord{3, 2});
            r = 1.0 - fidelity(number, post);
        } catch (const conditioning_error&) {
            r = 0.0;  // record impossible for this configuration; nothing to check
        }
        add("number_state_fixed_point", r, 1e-12);
    }
    {  // sum over N_+ of P(N_+, N - N_+) = 1
        const long n_total = 20;
        double sum = 0.0;
        for (long n_plus = 0; n_plus <= n_total; ++n_plus)
            sum += batch_probability(state, kraus, CountRecord{n_plus, n_total - n_plus});
        add("batch_prob_normalization", std::abs(sum - 1.0), 1e-10);
    }

    RunOutcome outcome;
    outcome.bundle = make_bundle("verify", config);
    outcome.ok = true;
    for (const auto& row : table.rows)
        if (row[2] != 1.0) outcome.ok = false;
    outcome.bundle.tables.push_back(std::move(table));
    return outcome;
}

RunOutcome run_sweep(const ExperimentConfig& config, SweepAxis axis,
                     const std::vector<double>& values) {
    RunOutcome outcome;
    outcome.bundle = make_bundle("sweep", config);

    Table table;
    table.name = axis == SweepAxis::electrons ? "sweep_N" : "sweep_g";
    table.meta = {{"axis", axis == SweepAxis::electrons ? "N" : "g"}};
    table.columns = {"value",       "status",          "error_variance", "error_predicted",
                     "backaction",  "backaction_predicted", "phase_variance_final",
                     "product",     "product_predicted"};

    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const double value = values[idx];
        std::vector<double> row(table.columns.size(), kNaN);
        row[0] = value;
        row[1] = 0.0;
        try {
            ExperimentConfig point = config;
            if (axis == SweepAxis::electrons) {
                point.run.n_electrons = std::lround(value);
            } else {
                if (!point.coupling)
                    throw config_error("g sweeps need a direct [coupling] section");
                point.coupling->zeta_n = value / 2.0;
                point.coupling->zeta_w = -value / 2.0;
            }
            const auto coupling = point.resolve_coupling();
            const double g = coupling.g();
            const long n_electrons = point.run.n_electrons;

            // Estimator-noise probe on a number state near the configured mean.
            const long probe_n0 = point.light.kind == LightKind::number
                                      ? point.light.n0
                                      : std::lround(std::norm(point.light.xi));
            const int probe_n_max = static_cast<int>(probe_n0) + 10;
            const auto probe = make_number_state(static_cast<int>(probe_n0), probe_n_max);
            const auto probe_kraus = kraus_coefficients(coupling, probe_n_max);
            const auto report = empirical_measurement_error(
                probe, probe_kraus, n_electrons, point.run.trials,
                derive_seed(point.run.master_seed, idx));

            // Backaction over the ensemble density-matrix path.
            const double ba_pred = static_cast<double>(n_electrons) * g * g / 4.0;
            double ba = ba_pred;
            double phase_final = kNaN;
            if (point.light.kind == LightKind::coherent) {
                const auto psi0 = point.initial_state();
                const auto rho0 = PhotonDensityMatrix::from_pure(psi0);
                const auto rho_n =
                    density_after_collisions_closed(psi0, coupling, n_electrons);
                ba = backaction_noise(rho0, rho_n, point.run.phase_grid);
                phase_final =
                    phase_variance(canonical_phase_distribution(rho_n, point.run.phase_grid));
            }

            row[1] = 1.0;
            row[2] = report.empirical_error_variance;
            row[3] = report.predicted;
            row[4] = ba;
            row[5] = ba_pred;
            row[6] = phase_final;
            row[7] = report.empirical_error_variance * ba;
            row[8] = 0.25;
        } catch (const std::exception&) {
            // recorded as status 0; sweep continues
        }
        table.rows.push_back(std::move(row));
    }
    outcome.bundle.tables.push_back(std::move(table));
    return outcome;
}

RunOutcome run_qfunc(const ExperimentConfig& config) {
    if (config.light.kind != LightKind::coherent)
        throw config_error("qfunc runs need coherent input light");
    const auto coupling = config.resolve_coupling();
    const auto psi0 = config.initial_state();

    const double radius_needed = std::abs(config.light.xi) + 2.0;
    double extent = config.run.q_extent;
    if (extent == 0.0) extent = std::abs(config.light.xi) + 4.0;
    if (extent < radius_needed)
        throw config_error("q_extent " + std::to_string(extent) +
                           " does not cover the state; need at least " +
                           std::to_string(radius_needed));

    RunOutcome outcome;
    outcome.bundle = make_bundle("qfunc", config);

    Table summary;
    summary.name = "summary";
    summary.columns = {"N", "number_mean", "number_variance", "phase_variance"};

    for (long n_collisions : config.run.qfunc_n_list) {
        const auto rho = density_after_collisions_closed(psi0, coupling, n_collisions);
        const auto grid = husimi_q(rho, QGridSpec::centered(extent, config.run.q_grid));
        const auto dist = canonical_phase_distribution(rho, config.run.phase_grid);
        const auto moments = number_moments(rho);
        summary.rows.push_back(
            {static_cast<double>(n_collisions), moments.mean, moments.variance,
             phase_variance(dist)});

        Table q;
        q.name = "q_N" + std::to_string(n_collisions);
        q.meta = {{"a1_min", std::to_string(-extent)},
                  {"a1_max", std::to_string(extent)},
                  {"a2_min", std::to_string(-extent)},
                  {"a2_max", std::to_string(extent)},
                  {"points_per_axis", std::to_string(config.run.q_grid)},
                  {"order", "row-major over a2 then a1"}};
        q.columns = {"a1", "a2", "q"};
        for (std::size_t i2 = 0; i2 < grid.a2_axis.size(); ++i2)
            for (std::size_t i1 = 0; i1 < grid.a1_axis.size(); ++i1)
                q.rows.push_back({grid.a1_axis[i1], grid.a2_axis[i2],
                                  grid.value(static_cast<int>(i2), static_cast<int>(i1))});
        outcome.bundle.tables.push_back(std::move(q));

        Table phase;
        phase.name = "phase_N" + std::to_string(n_collisions);
        phase.columns = {"phi", "density"};
        for (std::size_t k = 0; k < dist.angles.size(); ++k)
            phase.rows.push_back({dist.angles[k], dist.density[k]});
        outcome.bundle.tables.push_back(std::move(phase));
    }
    outcome.bundle.tables.push_back(std::move(summary));
    return outcome;
}

RunOutcome run_trajectories(const ExperimentConfig& config) {
    const auto coupling = config.resolve_coupling();
    const auto state = config.initial_state();
    const auto kraus = kraus_coefficients(coupling, state.n_max());
    const auto records = simulate_trajectories(state, kraus, config.run.n_electrons,
                                               config.run.trials, config.run.master_seed);

    RunOutcome outcome;
    outcome.bundle = make_bundle("trajectories", config);

    Table table;
    table.name = "records";
    table.meta = {{"master_seed", std::to_string(config.run.master_seed)},
                  {"electrons_per_trial", std::to_string(config.run.n_electrons)}};
    table.columns = {"trial", "n_plus", "n_minus", "estimate", "posterior_number_variance"};
    for (const auto& r : records)
        table.rows.push_back({static_cast<double>(r.trial_index),
                              static_cast<double>(r.counts.n_plus),
                              static_cast<double>(r.counts.n_minus), r.estimate,
                              r.posterior_number_variance});
    outcome.bundle.tables.push_back(std::move(table));
    return outcome;
}

}  // namespace qnd
