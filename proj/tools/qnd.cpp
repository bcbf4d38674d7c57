#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnd/config.hpp"
#include "qnd/errors.hpp"
#include "qnd/result.hpp"
#include "qnd/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    long n_override = 0;
    bool n_set = false;
    double g_override = 0.0;
    bool g_set = false;
};

void attach_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file")->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--seed", opts.seed, "master seed override")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--N", opts.n_override, "electrons-per-trial override")
        ->each([&opts](const std::string&) { opts.n_set = true; });
    cmd->add_option("--g", opts.g_override,
                    "coupling override: sets zeta_N = g/2, zeta_W = -g/2")
        ->each([&opts](const std::string&) { opts.g_set = true; });
}

qnd::ExperimentConfig load_config(const CommonOptions& opts) {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in) throw qnd::io_error("cannot read config file", opts.config_path);
    std::ostringstream text;
    text << in.rdbuf();

    const auto parsed = qnd::parse_config(text.str());
    if (!parsed.ok()) {
        std::cerr << "config errors in " << opts.config_path << ":\n";
        for (const auto& err : parsed.errors) {
            if (err.line > 0)
                std::cerr << "  line " << err.line << ": " << err.message << "\n";
            else
                std::cerr << "  " << err.message << "\n";
        }
        throw qnd::config_error("invalid configuration");
    }
    qnd::ExperimentConfig config = *parsed.config;
    if (opts.seed_set) config.run.master_seed = opts.seed;
    if (opts.n_set) config.run.n_electrons = opts.n_override;
    if (opts.g_set) {
        if (!config.coupling)
            throw qnd::config_error("--g requires a direct [coupling] config");
        config.coupling->zeta_n = opts.g_override / 2.0;
        config.coupling->zeta_w = -opts.g_override / 2.0;
    }
    if (!opts.out_dir.empty()) config.run.out_dir = opts.out_dir;
    return config;
}

int emit_and_report(const qnd::RunOutcome& outcome, const qnd::ExperimentConfig& config,
                    const CommonOptions& opts) {
    const auto format = opts.format == "jsonl" ? qnd::EmitFormat::jsonl : qnd::EmitFormat::csv;
    const auto files = qnd::emit(outcome.bundle, config.run.out_dir, format);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    if (!outcome.ok) {
        std::cerr << "invariant failures detected\n";
        return kExitInvariantFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-number measurement simulator for a double quantum-wire "
                 "electron interferometer"};
    app.require_subcommand(1);

    CommonOptions verify_opts, sweep_opts, qfunc_opts, traj_opts;
    std::string sweep_axis;
    std::vector<double> sweep_values;

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    attach_common(verify, verify_opts);

    auto* sweep = app.add_subcommand("sweep", "sweep N or g and tabulate the noise laws");
    attach_common(sweep, sweep_opts);
    sweep->add_option("--axis", sweep_axis, "sweep axis")
        ->required()
        ->check(CLI::IsMember({"N", "g"}));
    sweep->add_option("--values", sweep_values, "axis values")->required()->delimiter(',');

    auto* qfunc = app.add_subcommand("qfunc", "emit Husimi grids and phase distributions");
    attach_common(qfunc, qfunc_opts);

    auto* traj = app.add_subcommand("trajectories", "emit Monte Carlo counting records");
    attach_common(traj, traj_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            const auto config = load_config(verify_opts);
            return emit_and_report(qnd::run_verify(config), config, verify_opts);
        }
        if (sweep->parsed()) {
            const auto config = load_config(sweep_opts);
            const auto axis =
                sweep_axis == "N" ? qnd::SweepAxis::electrons : qnd::SweepAxis::coupling_g;
            return emit_and_report(qnd::run_sweep(config, axis, sweep_values), config,
                                   sweep_opts);
        }
        if (qfunc->parsed()) {
            const auto config = load_config(qfunc_opts);
            return emit_and_report(qnd::run_qfunc(config), config, qfunc_opts);
        }
        const auto config = load_config(traj_opts);
        return emit_and_report(qnd::run_trajectories(config), config, traj_opts);
    } catch (const qnd::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const qnd::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariantFailure;
    }
}
