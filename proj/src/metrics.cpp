#include "ddest/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ddest/dd_operators.hpp"

namespace ddest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact min-cost maximum-cardinality assignment for one user via DP over
// truth subsets; per-user sizes stay small (P_q <= 3 truths).
void match_one_user(const Scenario& truth, const std::vector<PathEstimate>& estimates,
                    int q, const std::vector<int>& est_idx, MatchResult& out) {
    const auto& paths = truth.users[q];
    const int nt = static_cast<int>(paths.size());
    const int ne = static_cast<int>(est_idx.size());
    const int want = std::min(nt, ne);
    const int masks = 1 << nt;
    const double N = truth.dims.N;

    std::vector<std::vector<double>> cost(nt, std::vector<double>(ne));
    for (int t = 0; t < nt; ++t)
        for (int e = 0; e < ne; ++e) {
            const PathEstimate& est = estimates[est_idx[e]];
            const double dl = paths[t].delay - est.delay;
            const double dk = wrap_to_centered(paths[t].doppler - est.doppler, N);
            cost[t][e] = dl * dl + dk * dk;
        }

    // dp[e][mask]: min cost using estimates 0..e-1 with matched truth set `mask`
    std::vector<std::vector<double>> dp(ne + 1, std::vector<double>(masks, kInf));
    std::vector<std::vector<int>> choice(ne + 1, std::vector<int>(masks, -2));
    dp[0][0] = 0.0;
    for (int e = 0; e < ne; ++e)
        for (int mask = 0; mask < masks; ++mask) {
            if (dp[e][mask] == kInf) continue;
            if (dp[e][mask] < dp[e + 1][mask]) {  // skip estimate e
                dp[e + 1][mask] = dp[e][mask];
                choice[e + 1][mask] = -1;
            }
            for (int t = 0; t < nt; ++t) {
                if (mask & (1 << t)) continue;
                const int nm = mask | (1 << t);
                const double c = dp[e][mask] + cost[t][e];
                if (c < dp[e + 1][nm]) {
                    dp[e + 1][nm] = c;
                    choice[e + 1][nm] = t;
                }
            }
        }

    int best_mask = -1;
    double best = kInf;
    for (int mask = 0; mask < masks; ++mask)
        if (__builtin_popcount(mask) == want && dp[ne][mask] < best) {
            best = dp[ne][mask];
            best_mask = mask;
        }

    std::vector<bool> est_used(ne, false), truth_used(nt, false);
    int mask = best_mask;
    for (int e = ne; e > 0; --e) {
        const int t = choice[e][mask];
        if (t >= 0) {
            out.pairs.push_back({q, t, est_idx[e - 1], cost[t][e - 1]});
            est_used[e - 1] = true;
            truth_used[t] = true;
            mask &= ~(1 << t);
        }
    }
    for (int t = 0; t < nt; ++t)
        if (!truth_used[t]) out.misses.emplace_back(q, t);
    for (int e = 0; e < ne; ++e)
        if (!est_used[e]) out.false_alarms.push_back(est_idx[e]);
}

}  // namespace

MatchResult match_paths(const Scenario& truth, const std::vector<PathEstimate>& estimates) {
    MatchResult out;
    const int Q = static_cast<int>(truth.users.size());
    for (int q = 0; q < Q; ++q) {
        std::vector<int> est_idx;
        for (int i = 0; i < static_cast<int>(estimates.size()); ++i)
            if (estimates[i].user == q) est_idx.push_back(i);
        match_one_user(truth, estimates, q, est_idx, out);
    }
    for (int i = 0; i < static_cast<int>(estimates.size()); ++i)
        if (estimates[i].user < 0 || estimates[i].user >= Q) out.false_alarms.push_back(i);
    return out;
}

void ErrorAccumulator::add_matches(const Scenario& truth,
                                   const std::vector<PathEstimate>& estimates,
                                   const MatchResult& match) {
    const double M = truth.dims.M, N = truth.dims.N;
    for (const auto& p : match.pairs) {
        const DDPath& t = truth.users[p.truth_user][p.truth_index];
        const PathEstimate& e = estimates[p.estimate_index];
        const double dl = wrap_to_centered(t.delay - e.delay, M);
        const double dk = wrap_to_centered(t.doppler - e.doppler, N);
        delay_sq += dl * dl;
        doppler_sq += dk * dk;
        gain_sq += std::norm(t.gain - e.gain);
        ++pairs;
    }
    misses += static_cast<long>(match.misses.size());
    false_alarms += static_cast<long>(match.false_alarms.size());
    truths += truth.total_paths();
}

void ErrorAccumulator::merge(const ErrorAccumulator& o) {
    delay_sq += o.delay_sq;
    doppler_sq += o.doppler_sq;
    gain_sq += o.gain_sq;
    pairs += o.pairs;
    misses += o.misses;
    false_alarms += o.false_alarms;
    truths += o.truths;
    channel_sq += o.channel_sq;
    channel_trials += o.channel_trials;
}

double ErrorAccumulator::rmse_delay() const {
    return pairs ? std::sqrt(delay_sq / pairs) : 0.0;
}
double ErrorAccumulator::rmse_doppler() const {
    return pairs ? std::sqrt(doppler_sq / pairs) : 0.0;
}
double ErrorAccumulator::rmse_gain() const {
    return pairs ? std::sqrt(gain_sq / pairs) : 0.0;
}
double ErrorAccumulator::rmse_channel() const {
    return channel_trials ? std::sqrt(channel_sq / channel_trials) : 0.0;
}
double ErrorAccumulator::miss_rate() const {
    return truths ? static_cast<double>(misses) / truths : 0.0;
}

double rmse_channel(const Scenario& truth, const std::vector<PathEstimate>& estimates) {
    std::vector<DDPath> true_paths;
    for (const auto& u : truth.users) true_paths.insert(true_paths.end(), u.begin(), u.end());
    std::vector<DDPath> est_paths;
    for (const PathEstimate& e : estimates)
        est_paths.push_back({e.gain, e.delay, e.doppler});
    const MatC H = channel_matrix(true_paths, truth.dims);
    const MatC Hh = channel_matrix(est_paths, truth.dims);
    return std::sqrt((H - Hh).squaredNorm() / truth.dims.grid_size());
}

double rmse_channel_fast(const Scenario& truth, const std::vector<PathEstimate>& estimates) {
    struct Term {
        cplx c;
        double ell, kappa;
    };
    std::vector<Term> terms;
    for (const auto& u : truth.users)
        for (const DDPath& p : u) terms.push_back({p.gain, p.delay, p.doppler});
    for (const PathEstimate& e : estimates) terms.push_back({-e.gain, e.delay, e.doppler});

    // ||sum_k c_k Pi^{l_k} Delta^{k_k}||_F^2 through pairwise inner products
    double total = 0.0;
    for (size_t j = 0; j < terms.size(); ++j)
        for (size_t k = 0; k < terms.size(); ++k) {
            const cplx ip = operator_inner_product(terms[j].ell, terms[j].kappa,
                                                   terms[k].ell, terms[k].kappa, truth.dims);
            total += (terms[j].c * std::conj(terms[k].c) * ip).real();
        }
    return std::sqrt(std::max(0.0, total) / truth.dims.grid_size());
}

}  // namespace ddest
