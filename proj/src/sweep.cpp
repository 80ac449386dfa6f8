#include "ddest/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "ddest/gains.hpp"

namespace ddest {

void SweepConfig::validate() const {
    dims.validate();
    pilot.validate(dims);
    wmusic.validate(dims);
    // the per-trial path count is random; validate the pencil at the maximum
    mp.validate(dims, pilot.Q * constraints.max_paths);
    if (trials < 1) throw std::invalid_argument("SweepConfig: trials >= 1 violated");
    if (snr_points_db.empty())
        throw std::invalid_argument("SweepConfig: snr list nonempty violated");
    if (!use_wmusic && !use_mp)
        throw std::invalid_argument("SweepConfig: estimators subset nonempty violated");
}

std::uint64_t trial_stream_seed(std::uint64_t seed, int snr_index, int trial_index) {
    return Rng::derive(seed, {static_cast<std::uint64_t>(snr_index),
                              static_cast<std::uint64_t>(trial_index)});
}

namespace {

TrialEstimatorReport score_estimator(const std::string& name, const SweepConfig& cfg,
                                     const Scenario& scenario, const TFPilotGrid& noisy,
                                     EstimationResult (*runner)(const TFPilotGrid&,
                                                                const SweepConfig&, int)) {
    TrialEstimatorReport rep;
    rep.estimator = name;
    const int p_tot = scenario.total_paths();
    try {
        EstimationResult res = runner(noisy, cfg, p_tot);
        rep.flags = res.flags;
        if (!res.estimates.empty()) {
            GainSolve gs = ls_gains(noisy, std::move(res.estimates), cfg.dims, cfg.pilot);
            rep.flags.ill_conditioned |= gs.ill_posed;
            rep.estimates = std::move(gs.estimates);
        }
    } catch (const std::exception& e) {
        rep.failed = true;
        rep.failure = e.what();
        rep.estimates.clear();
    }
    rep.match = match_paths(scenario, rep.estimates);
    rep.errors.add_matches(scenario, rep.estimates, rep.match);
    const double ch = rmse_channel_fast(scenario, rep.estimates);
    rep.errors.channel_sq += ch * ch;
    rep.errors.channel_trials += 1;
    return rep;
}

EstimationResult run_wmusic_adapter(const TFPilotGrid& grid, const SweepConfig& cfg,
                                    int p_tot) {
    return run_wmusic(grid, cfg.dims, cfg.pilot, cfg.wmusic, p_tot);
}

EstimationResult run_mp_adapter(const TFPilotGrid& grid, const SweepConfig& cfg, int p_tot) {
    return run_mp(grid, cfg.dims, cfg.pilot, cfg.mp, p_tot);
}

}  // namespace

TrialReport run_trial(const SweepConfig& cfg, double snr_db, std::uint64_t stream_seed) {
    Rng rng(stream_seed);
    TrialReport report;
    report.snr_db = snr_db;
    report.scenario = random_scenario(cfg.dims, cfg.pilot, rng, cfg.constraints);
    report.scenario.seed = stream_seed;

    const TFPilotGrid clean = tf_pilot_response(report.scenario);
    const TFPilotGrid noisy = add_noise(clean, snr_db, rng);

    if (cfg.use_wmusic)
        report.estimators.push_back(
            score_estimator("wmusic", cfg, report.scenario, noisy, &run_wmusic_adapter));
    if (cfg.use_mp)
        report.estimators.push_back(
            score_estimator("mp", cfg, report.scenario, noisy, &run_mp_adapter));
    return report;
}

SweepResult run_sweep(const SweepConfig& cfg, int n_threads) {
    cfg.validate();
    if (n_threads < 1) n_threads = 1;
    SweepResult result;

    for (int s = 0; s < static_cast<int>(cfg.snr_points_db.size()); ++s) {
        const double snr = cfg.snr_points_db[s];
        std::vector<TrialReport> reports(cfg.trials);

        std::atomic<int> next{0};
        auto worker = [&]() {
            for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                reports[t] = run_trial(cfg, snr, trial_stream_seed(cfg.seed, s, t));
        };
        if (n_threads == 1 || cfg.trials == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            const int workers = std::min(n_threads, cfg.trials);
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        // ordered reduction keeps the pooled sums bit-identical across runs
        std::vector<std::string> names;
        if (cfg.use_wmusic) names.push_back("wmusic");
        if (cfg.use_mp) names.push_back("mp");
        for (const std::string& name : names) {
            ErrorAccumulator acc;
            long failed = 0;
            for (const TrialReport& rep : reports)
                for (const TrialEstimatorReport& er : rep.estimators)
                    if (er.estimator == name) {
                        acc.merge(er.errors);
                        failed += er.failed ? 1 : 0;
                    }
            SweepRow row;
            row.snr_db = snr;
            row.estimator = name;
            row.rmse_delay = acc.rmse_delay();
            row.rmse_doppler = acc.rmse_doppler();
            row.rmse_gain = acc.rmse_gain();
            row.rmse_channel = acc.rmse_channel();
            row.miss_rate = acc.miss_rate();
            row.trials = cfg.trials;
            row.failed_trials = failed;
            result.rows.push_back(row);
        }
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out =
        "snr_db,estimator,rmse_delay,rmse_doppler,rmse_gain,rmse_channel,miss_rate,trials\n";
    char line[256];
    for (const SweepRow& r : result.rows) {
        std::snprintf(line, sizeof(line), "%.10g,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%d\n",
                      r.snr_db, r.estimator.c_str(), r.rmse_delay, r.rmse_doppler,
                      r.rmse_gain, r.rmse_channel, r.miss_rate, r.trials);
        out += line;
    }
    return out;
}

}  // namespace ddest
