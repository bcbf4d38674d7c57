#pragma once

#include <vector>

#include "qnd/config.hpp"
#include "qnd/result.hpp"

namespace qnd {

struct RunOutcome {
    ResultBundle bundle;
    bool ok = true;
};

// Named residual checks over the configured state and coupling; ok is false
// when any residual exceeds its tolerance.
RunOutcome run_verify(const ExperimentConfig& config);

enum class SweepAxis { electrons, coupling_g };

// One row per axis value: empirical error variance, predicted 1/(g^2 N),
// backaction, predicted N g^2 / 4, final phase variance, and the product.
// Per-point failures are recorded in the status column; the sweep continues.
RunOutcome run_sweep(const ExperimentConfig& config, SweepAxis axis,
                     const std::vector<double>& values);

// Husimi grids and phase distributions for each collision count in the
// configured list. Requires coherent input.
RunOutcome run_qfunc(const ExperimentConfig& config);

// Monte Carlo electron-counting records.
RunOutcome run_trajectories(const ExperimentConfig& config);

}  // namespace qnd
