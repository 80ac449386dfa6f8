#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>

#include "ddest/complexity.hpp"
#include "ddest/config_io.hpp"
#include "ddest/selftest.hpp"
#include "ddest/sweep.hpp"

namespace {

double parse_snr(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "infinity")
        return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

ddest::SweepConfig load_or_exit(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        std::cerr << "error: config file not found: " << path << "\n";
        std::exit(2);
    }
    return ddest::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiuser OTFS delay-Doppler channel parameter estimation (MU-W-MUSIC / MU-MP)"};
    app.require_subcommand(1);

    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    app.add_option("--threads", threads, "trial parallelism (does not change results)");

    std::string config_path;
    std::string out_path;
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo RMSE vs SNR sweep, CSV output");
    sweep->add_option("--config", config_path, "JSON configuration")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();

    std::string trial_config, trial_snr = "30", dump_path;
    int trial_index = 0;
    auto* trial = app.add_subcommand("trial", "run a single trial and dump the full report");
    trial->add_option("--config", trial_config, "JSON configuration")->required();
    trial->add_option("--snr", trial_snr, "pilot SNR in dB (or 'inf')");
    trial->add_option("--dump", dump_path, "output JSON path (default: stdout)");
    trial->add_option("--trial-index", trial_index, "trial index within the stream");

    std::string cx_config;
    int cx_ptot = 12;
    ddest::ComplexityConstants consts;
    auto* cx = app.add_subcommand("complexity", "closed-form complex-multiplication counts");
    cx->add_option("--config", cx_config, "JSON configuration")->required();
    cx->add_option("--ptot", cx_ptot, "total path count");
    cx->add_option("--evd-const", consts.evd_const, "EVD cubic-term constant");
    cx->add_option("--svd-const", consts.svd_const, "SVD cubic-term constant");
    cx->add_option("--root-const", consts.root_const, "(2G)^3 rooting constant");

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            const ddest::SweepConfig cfg = load_or_exit(config_path);
            const ddest::SweepResult res = ddest::run_sweep(cfg, threads);
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 1;
            }
            out << ddest::sweep_to_csv(res);
            long failed = 0;
            for (const auto& row : res.rows) failed += row.failed_trials;
            if (failed > 0)
                std::cerr << "note: " << failed << " estimator runs failed and were scored as misses\n";
        } else if (*trial) {
            const ddest::SweepConfig cfg = load_or_exit(trial_config);
            const double snr = parse_snr(trial_snr);
            const std::uint64_t seed = ddest::trial_stream_seed(cfg.seed, 0, trial_index);
            const ddest::TrialReport rep = ddest::run_trial(cfg, snr, seed);
            const std::string text = ddest::trial_report_to_json(rep);
            if (dump_path.empty()) {
                std::cout << text << "\n";
            } else {
                std::ofstream out(dump_path);
                if (!out) {
                    std::cerr << "error: cannot write " << dump_path << "\n";
                    return 1;
                }
                out << text << "\n";
            }
        } else if (*cx) {
            const ddest::SweepConfig cfg = load_or_exit(cx_config);
            const ddest::ComplexityReport rep =
                ddest::complexity_report(cfg.dims, cfg.wmusic, cfg.mp, cx_ptot, consts);
            std::cout << ddest::format_complexity_report(rep);
        } else if (*selftest) {
            const int failures =
                ddest::run_selftest([](const std::string& line) { std::cout << line << "\n"; });
            if (failures > 0) {
                std::cerr << failures << " selftest check(s) failed\n";
                return 1;
            }
            std::cout << "all selftest checks passed\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
