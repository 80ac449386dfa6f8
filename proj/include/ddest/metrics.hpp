#pragma once

#include "ddest/types.hpp"

namespace ddest {

/// Per-user minimum-cost pairing of true paths and estimates.
struct MatchResult {
    struct Pair {
        int truth_user, truth_index;  // position within users[q]
        int estimate_index;           // position in the estimate list
        double cost;
    };
    std::vector<Pair> pairs;
    std::vector<std::pair<int, int>> misses;  // (user, truth index)
    std::vector<int> false_alarms;            // estimate indices
};

/// Matches estimates to truth per user, minimizing the total cost
/// (delta_ell)^2 + wrap_N(delta_kappa)^2 over all maximum-cardinality
/// assignments (exact; per-user sizes are small).
MatchResult match_paths(const Scenario& truth, const std::vector<PathEstimate>& estimates);

/// Pooled squared-error sums; mergeable across trials in any order.
struct ErrorAccumulator {
    double delay_sq = 0, doppler_sq = 0, gain_sq = 0;
    long pairs = 0;
    long misses = 0;
    long false_alarms = 0;
    long truths = 0;
    double channel_sq = 0;  // sum of (1/MN)||H - H_hat||_F^2 per trial
    long channel_trials = 0;

    void add_matches(const Scenario& truth, const std::vector<PathEstimate>& estimates,
                     const MatchResult& match);
    void merge(const ErrorAccumulator& o);

    double rmse_delay() const;
    double rmse_doppler() const;
    double rmse_gain() const;
    double rmse_channel() const;
    double miss_rate() const;
};

/// Channel-matrix RMSE sqrt(||H - H_hat||_F^2 / (M N)) by dense construction
/// of both parametric channel matrices.
double rmse_channel(const Scenario& truth, const std::vector<PathEstimate>& estimates);

/// Same value through the closed-form Frobenius expansion of the operator
/// inner products (no MN x MN matrices); used by the sweep harness.
double rmse_channel_fast(const Scenario& truth, const std::vector<PathEstimate>& estimates);

}  // namespace ddest
