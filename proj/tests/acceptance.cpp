// Acceptance suite: runs the five top-level criteria at their stated
// tolerances and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "ddest/complexity.hpp"
#include "ddest/gains.hpp"
#include "ddest/matrix_pencil.hpp"
#include "ddest/metrics.hpp"
#include "ddest/selftest.hpp"
#include "ddest/sweep.hpp"
#include "ddest/synthesis.hpp"
#include "ddest/wmusic.hpp"

using namespace ddest;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

SweepConfig reference_config() {
    SweepConfig cfg;
    cfg.dims = {32, 64, 4.0, 6.0};
    cfg.pilot = {8, 4, 1, 4};
    cfg.wmusic = {16, 20, 51, 128, 1e-8, 0.05, true};
    cfg.mp = {30, 16};
    cfg.constraints = {1, 3, 0.3, 10000};
    return cfg;
}

int hw_threads() {
    const int n = static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

// ---------------------------------------------------------------- criterion 1
void criterion_noiseless_exact_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepConfig cfg = reference_config();
    const int n_scenarios = 20;

    double worst_mp_param = 0, worst_mp_gain = 0, worst_wm_param = 0;
    bool structure_ok = true;
    for (int t = 0; t < n_scenarios; ++t) {
        Rng rng(Rng::derive(20250101, {0, static_cast<std::uint64_t>(t)}));
        Scenario sc = random_scenario(cfg.dims, cfg.pilot, rng, cfg.constraints);
        const TFPilotGrid grid = tf_pilot_response(sc);
        const int p_tot = sc.total_paths();

        EstimationResult mp = run_mp(grid, cfg.dims, cfg.pilot, cfg.mp, p_tot);
        const GainSolve mp_gains = ls_gains(grid, mp.estimates, cfg.dims, cfg.pilot);
        MatchResult match = match_paths(sc, mp_gains.estimates);
        structure_ok = structure_ok && match.misses.empty();
        for (const auto& pr : match.pairs) {
            const DDPath& tp = sc.users[pr.truth_user][pr.truth_index];
            const PathEstimate& e = mp_gains.estimates[pr.estimate_index];
            worst_mp_param = std::max(worst_mp_param,
                                      std::abs(wrap_to_centered(tp.delay - e.delay, cfg.dims.M)));
            worst_mp_param = std::max(
                worst_mp_param, std::abs(wrap_to_centered(tp.doppler - e.doppler, cfg.dims.N)));
            worst_mp_gain = std::max(worst_mp_gain, std::abs(tp.gain - e.gain));
        }

        EstimationResult wm = run_wmusic(grid, cfg.dims, cfg.pilot, cfg.wmusic, p_tot);
        MatchResult wmatch = match_paths(sc, wm.estimates);
        structure_ok = structure_ok && wmatch.misses.empty();
        for (const auto& pr : wmatch.pairs) {
            const DDPath& tp = sc.users[pr.truth_user][pr.truth_index];
            const PathEstimate& e = wm.estimates[pr.estimate_index];
            worst_wm_param = std::max(worst_wm_param,
                                      std::abs(wrap_to_centered(tp.delay - e.delay, cfg.dims.M)));
            worst_wm_param = std::max(
                worst_wm_param, std::abs(wrap_to_centered(tp.doppler - e.doppler, cfg.dims.N)));
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = structure_ok && worst_mp_param < 1e-6 && worst_mp_gain < 1e-8 &&
                      worst_wm_param < 1e-3 && seconds < 30.0;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "noiseless exact recovery over %d scenarios: MP param %.2e (<1e-6), "
                  "MP gain %.2e (<1e-8), W-MUSIC param %.2e (<1e-3), %.1f s (<30 s)%s",
                  n_scenarios, worst_mp_param, worst_mp_gain, worst_wm_param, seconds,
                  structure_ok ? "" : ", missed paths");
    report(1, pass, buf);
}

// ------------------------------------------------------- criteria 2 and 3
const SweepRow* find_row(const SweepResult& res, double snr, const std::string& est) {
    for (const SweepRow& r : res.rows)
        if (r.snr_db == snr && r.estimator == est) return &r;
    return nullptr;
}

void criteria_rmse_and_crossover() {
    SweepConfig cfg = reference_config();
    cfg.snr_points_db = {0.0, 20.0, 30.0};
    cfg.trials = 500;
    cfg.seed = 20250102;
    const SweepResult res = run_sweep(cfg, hw_threads());

    const SweepRow* w0 = find_row(res, 0.0, "wmusic");
    const SweepRow* m0 = find_row(res, 0.0, "mp");
    const SweepRow* w20 = find_row(res, 20.0, "wmusic");
    const SweepRow* m20 = find_row(res, 20.0, "mp");
    const SweepRow* w30 = find_row(res, 30.0, "wmusic");
    const SweepRow* m30 = find_row(res, 30.0, "mp");

    {  // criterion 2: high-SNR RMSE bounds
        const bool doppler_ok =
            w30->rmse_doppler <= 1e-2 && m30->rmse_doppler <= 1e-2;
        const bool channel_ok = w20->rmse_channel <= 1e-3 && m20->rmse_channel <= 1e-3 &&
                                w30->rmse_channel <= 1e-3 && m30->rmse_channel <= 1e-3;
        char buf[320];
        std::snprintf(buf, sizeof(buf),
                      "high-SNR RMSE (%d trials): Doppler@30dB wmusic %.2e, mp %.2e "
                      "(<=1e-2); channel@20dB %.2e / %.2e, @30dB %.2e / %.2e (<=1e-3)",
                      cfg.trials, w30->rmse_doppler, m30->rmse_doppler, w20->rmse_channel,
                      m20->rmse_channel, w30->rmse_channel, m30->rmse_channel);
        report(2, doppler_ok && channel_ok, buf);
    }
    {  // criterion 3: crossover trends
        const bool low_snr = w0->rmse_delay <= m0->rmse_delay &&
                             w0->rmse_doppler <= m0->rmse_doppler;
        const bool high_snr = m30->rmse_delay <= w30->rmse_delay;
        char buf[320];
        std::snprintf(buf, sizeof(buf),
                      "crossover (%d trials/point): @0dB wmusic delay %.3g <= mp %.3g and "
                      "doppler %.3g <= %.3g; @30dB mp delay %.3g <= wmusic %.3g",
                      cfg.trials, w0->rmse_delay, m0->rmse_delay, w0->rmse_doppler,
                      m0->rmse_doppler, m30->rmse_delay, w30->rmse_delay);
        report(3, low_snr && high_snr, buf);
    }
}

// ---------------------------------------------------------------- criterion 4
void criterion_complexity_table() {
    const SweepConfig cfg = reference_config();
    const int p_tot = 12;
    const ComplexityReport rep =
        complexity_report(cfg.dims, cfg.wmusic, cfg.mp, p_tot, ComplexityConstants{});

    auto value = [](const std::vector<StageCount>& v, const char* name) {
        for (const auto& s : v)
            if (s.name == name) return s.cms;
        return -1.0;
    };
    auto close3 = [&](double got, double want) {  // 3 significant figures
        return std::abs(got / want - 1.0) < 5e-3;
    };
    auto factor3 = [](double got, double want) {
        return got / want < 3.0 && want / got < 3.0;
    };

    const bool exact = close3(value(rep.wmusic, "C_spec"), 2.10e8) &&
                       close3(value(rep.wmusic, "C_EVD"), 3.28e7) &&
                       close3(value(rep.wmusic, "C_delay"), 1.97e7);
    const bool within3 = factor3(value(rep.wmusic, "C_cov"), 4.61e6) &&
                         factor3(value(rep.wmusic, "C_WLS"), 1.09e6) &&
                         factor3(value(rep.mp, "C_Hankel"), 7.06e4) &&
                         factor3(value(rep.mp, "C_SVD"), 2.59e7) &&
                         factor3(value(rep.mp, "C_T"), 8.50e5) &&
                         factor3(value(rep.mp, "C_EVD"), 1.73e3) &&
                         factor3(value(rep.mp, "C_proj"), 2.46e4);
    // the (2G)^3 rooting model needs the published 1/8 constant; both
    // readings are exposed through root_const
    ComplexityConstants k;
    k.root_const = 0.125;
    const ComplexityReport rep8 =
        complexity_report(cfg.dims, cfg.wmusic, cfg.mp, p_tot, k);
    const bool root_ok = factor3(value(rep8.wmusic, "C_root"), 1.33e5);
    const bool ratio_ok = rep.ratio >= 5.0;

    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "complexity table: exact C_spec/C_EVD/C_delay %s, stages within x3 %s, "
                  "C_root(c=1/8) %s, ratio %.1f (>=5)",
                  exact ? "yes" : "NO", within3 ? "yes" : "NO", root_ok ? "yes" : "NO",
                  rep.ratio);
    report(4, exact && within3 && root_ok && ratio_ok, buf);
}

// ---------------------------------------------------------------- criterion 5
void criterion_invariants() {
    const int failures = run_selftest([](const std::string& line) {
        std::printf("    %s\n", line.c_str());
    });
    char buf[128];
    std::snprintf(buf, sizeof(buf), "operator/unit invariant suite: %d failure(s)",
                  failures);
    report(5, failures == 0, buf);
}

}  // namespace

int main() {
    criterion_noiseless_exact_recovery();
    criteria_rmse_and_crossover();
    criterion_complexity_table();
    criterion_invariants();
    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion/criteria failed\n", g_failures);
    return g_failures;
}
