// vmimo-sim: runs, validates and cross-checks the power-control experiments
// described by JSON spec files, writing CSV tables plus JSON sidecars.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmimo/config_io.hpp"
#include "vmimo/errors.hpp"
#include "vmimo/experiments.hpp"
#include "vmimo/version.hpp"

namespace {

struct CliOptions {
    std::vector<std::string> spec_files;
    std::string out_dir = ".";
    std::vector<std::string> sets;
    std::uint64_t seed = 12345;
    int threads = 1;
};

int do_run(const CliOptions& options) {
    const vmimo::RunOptions run{options.threads, options.seed};
    for (const std::string& file : options.spec_files) {
        const auto specs = vmimo::load_experiment_specs(file, options.sets);
        for (const vmimo::ExperimentSpec& spec : specs) {
            const vmimo::ResultTable table = vmimo::run_experiment(spec, run);
            const vmimo::WrittenFiles files =
                vmimo::write_result(table, spec, options.out_dir);
            std::cout << spec.name << ": wrote " << files.csv.string() << " ("
                      << table.rows() << " rows)\n";
        }
    }
    return 0;
}

int do_validate(const CliOptions& options) {
    for (const std::string& file : options.spec_files) {
        const auto specs = vmimo::load_experiment_specs(file, options.sets);
        std::cout << file << ": OK (" << specs.size() << " experiment"
                  << (specs.size() == 1 ? "" : "s") << ")\n";
    }
    return 0;
}

int do_oracle(const CliOptions& options) {
    const vmimo::RunOptions run{options.threads, options.seed};
    bool all_ok = true;
    for (const std::string& file : options.spec_files) {
        const auto specs = vmimo::load_experiment_specs(file, options.sets);
        for (const vmimo::ExperimentSpec& spec : specs) {
            const vmimo::OracleReport report = vmimo::run_oracle(spec, run);
            for (const auto& check : report.checks) {
                std::cout << (check.ok ? "[OK]       " : "[MISMATCH] ") << spec.name << "."
                          << check.name << ": " << check.details << "\n";
            }
            all_ok = all_ok && report.all_ok();
        }
    }
    if (!all_ok) {
        std::cerr << "oracle disagreement detected\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(vmimo::kToolName) + " " + vmimo::kVersion +
                 " - power-control game experiments for virtual-MIMO sensor links"};
    app.require_subcommand(1);

    CliOptions options;

    CLI::App* run = app.add_subcommand("run", "Run experiments and write CSV data files");
    run->add_option("spec-file", options.spec_files, "experiment spec file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", options.out_dir, "output directory (default: .)");
    run->add_option("--set", options.sets,
                    "override a spec field, e.g. --set sweep.points=500 or "
                    "--set configs.SISO.cost_k=100");
    run->add_option("--seed", options.seed, "RNG seed (Monte Carlo checks only)");
    run->add_option("--threads", options.threads, "worker threads for sweep evaluation");

    CLI::App* validate =
        app.add_subcommand("validate", "Check spec files without running them");
    validate->add_option("spec-file", options.spec_files, "experiment spec file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--set", options.sets, "override a spec field before validating");

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Run brute-force and Monte Carlo cross-checks and report agreement");
    oracle->add_option("spec-file", options.spec_files, "experiment spec file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    oracle->add_option("--set", options.sets, "override a spec field");
    oracle->add_option("--seed", options.seed, "RNG seed for the Monte Carlo checks");
    oracle->add_option("--threads", options.threads, "worker threads for sweep evaluation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems are config errors
    }

    try {
        if (run->parsed()) return do_run(options);
        if (validate->parsed()) return do_validate(options);
        if (oracle->parsed()) return do_oracle(options);
    } catch (const vmimo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
