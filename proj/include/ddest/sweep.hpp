#pragma once

#include <cstdint>
#include <string>

#include "ddest/matrix_pencil.hpp"
#include "ddest/metrics.hpp"
#include "ddest/synthesis.hpp"
#include "ddest/types.hpp"
#include "ddest/wmusic.hpp"

namespace ddest {

struct SweepConfig {
    SystemDims dims;
    PilotConfig pilot;
    WMusicConfig wmusic;
    MpConfig mp;
    ScenarioConstraints constraints{1, 3, 0.3, 10000};
    std::vector<double> snr_points_db{0, 5, 10, 15, 20, 25, 30, 35};
    int trials = 200;
    std::uint64_t seed = 1;
    bool use_wmusic = true;
    bool use_mp = true;

    void validate() const;
};

/// Result of one estimator on one trial.
struct TrialEstimatorReport {
    std::string estimator;
    std::vector<PathEstimate> estimates;  // gains filled
    MatchResult match;
    ErrorAccumulator errors;  // this trial only
    EstimatorFlags flags;
    bool failed = false;
    std::string failure;
};

struct TrialReport {
    Scenario scenario;  // scenario.seed reproduces scenario + noise
    double snr_db = 0;
    std::vector<TrialEstimatorReport> estimators;
};

/// Runs one trial from a derived stream seed: draw scenario, synthesize,
/// add noise, run the selected estimators, recover gains, match and score.
TrialReport run_trial(const SweepConfig& cfg, double snr_db, std::uint64_t stream_seed);

/// Stream seed for (sweep seed, snr index, trial index).
std::uint64_t trial_stream_seed(std::uint64_t seed, int snr_index, int trial_index);

struct SweepRow {
    double snr_db = 0;
    std::string estimator;
    double rmse_delay = 0, rmse_doppler = 0, rmse_gain = 0, rmse_channel = 0;
    double miss_rate = 0;
    int trials = 0;
    long failed_trials = 0;  // not part of the CSV
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Monte-Carlo SNR sweep. Results are independent of n_threads: every trial
/// owns a stream keyed by (seed, snr index, trial index) and reduction is
/// ordered by trial index.
SweepResult run_sweep(const SweepConfig& cfg, int n_threads = 1);

/// CSV with header
/// snr_db,estimator,rmse_delay,rmse_doppler,rmse_gain,rmse_channel,miss_rate,trials
std::string sweep_to_csv(const SweepResult& result);

}  // namespace ddest
