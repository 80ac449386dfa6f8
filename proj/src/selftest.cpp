#include "ddest/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "ddest/config_io.hpp"
#include "ddest/dd_operators.hpp"
#include "ddest/gains.hpp"
#include "ddest/matrix_pencil.hpp"
#include "ddest/metrics.hpp"
#include "ddest/pilot.hpp"
#include "ddest/sweep.hpp"
#include "ddest/synthesis.hpp"
#include "ddest/wmusic.hpp"

namespace ddest {

namespace {

struct Check {
    std::string name;
    bool passed;
    double value;  // the measured residual / indicator
};

Scenario fixed_scenario() {
    Scenario s;
    s.dims = {32, 64, 4.0, 6.0};
    s.pilot = {8, 4, 1, 4};
    s.users = {
        {{cplx(0.8, 0.2), 1.3, -1.7}},
        {{cplx(-0.4, 0.6), 0.4, 2.1}, {cplx(0.3, -0.5), 2.2, -0.9}},
        {{cplx(0.1, 0.9), 2.9, 0.6}},
        {{cplx(-0.7, -0.3), 0.9, -2.4}},
    };
    s.seed = 42;
    return s;
}

}  // namespace

int run_selftest(const std::function<void(const std::string&)>& emit) {
    std::vector<Check> checks;
    Rng rng(20240817);

    {  // delay operator unitarity, fractional shifts
        SystemDims dims{8, 6, 3.0, 2.0};
        double worst = 0;
        for (int k = 0; k < 4; ++k) {
            const double ell = rng.uniform(0.0, dims.M);
            const MatC P = delay_operator(ell, dims);
            worst = std::max(worst,
                             (P * P.adjoint() - MatC::Identity(P.rows(), P.cols())).norm());
        }
        checks.push_back({"delay_operator_unitary", worst < 1e-10, worst});
    }
    {  // integer shift reduction
        SystemDims dims{8, 6, 3.0, 2.0};
        const int L = dims.grid_size();
        const MatC P = delay_operator(3.0, dims);
        double worst = 0;
        for (int a = 0; a < L; ++a)
            for (int b = 0; b < L; ++b) {
                const double want = ((a - b + L) % L == 3) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(P(a, b) - want));
            }
        checks.push_back({"delay_operator_integer_shift", worst < 1e-10, worst});
    }
    {  // phase-ramp semigroup
        SystemDims dims{8, 6, 3.0, 2.0};
        const double l1 = 1.37, l2 = 0.81;
        const VecC a = delay_phase_diag(l1, dims);
        const VecC b = delay_phase_diag(l2, dims);
        const VecC c = delay_phase_diag(l1 + l2, dims);
        const double worst = (a.cwiseProduct(b) - c).cwiseAbs().maxCoeff();
        checks.push_back({"delay_phase_semigroup", worst < 1e-12, worst});
    }
    {  // ZC periodic autocorrelation
        double worst = 0;
        for (const auto& [len, root] : std::vector<std::pair<int, int>>{{8, 1}, {13, 5}}) {
            const VecC x = zc_sequence(len, root);
            for (int d = 1; d < len; ++d) {
                cplx acc = 0;
                for (int l = 0; l < len; ++l) acc += x[l] * std::conj(x[(l + d) % len]);
                worst = std::max(worst, std::abs(acc));
            }
        }
        checks.push_back({"zc_zero_autocorrelation", worst < 1e-10, worst});
    }
    {  // association round trip
        SystemDims dims{32, 64, 4.0, 6.0};
        PilotConfig pc{8, 4, 1, 4};
        bool ok = true;
        for (int q = 0; q < pc.Q && ok; ++q)
            for (double kappa : {-6.0, -2.3, 0.0, 1.7, 6.0}) {
                const double obs =
                    wrap_to_period(doppler_index(q, dims.N, pc.Q) + kappa, dims.N);
                const UserAssociation assoc = associate_users({obs}, dims, pc);
                ok = assoc.unassigned.empty() &&
                     static_cast<int>(assoc.per_user[q].size()) == 1 &&
                     std::abs(assoc.per_user[q][0].doppler - kappa) < 1e-9;
                if (!ok) break;
            }
        checks.push_back({"doppler_association_round_trip", ok, ok ? 0.0 : 1.0});
    }
    {  // noiseless subspace orthogonality of the true steering vectors
        const Scenario s = fixed_scenario();
        const TFPilotGrid grid = tf_pilot_response(s);
        WMusicConfig wc;
        const MatC snaps = snapshots(grid, wc);
        SubspaceState state = covariance_and_noise_subspace(snaps, s.total_paths());
        state.M_sub = wc.M_sub;
        state.N_sub = wc.N_sub;
        effective_projection(state, grid.spectrum);
        double worst = 0;
        const double scale = state.effective.norm();
        for (int q = 0; q < s.pilot.Q; ++q) {
            const int kq = doppler_index(q, s.dims.N, s.pilot.Q);
            for (const DDPath& p : s.users[q]) {
                const VecC bm = steering_delay(p.delay, s.dims.M).head(wc.M_sub);
                const VecC vn =
                    steering_doppler(p.doppler + kq, s.dims.N).head(wc.N_sub);
                VecC xb(wc.M_sub);
                for (int m = 0; m < wc.M_sub; ++m) xb[m] = grid.spectrum[m] * bm[m];
                VecC sv(wc.M_sub * wc.N_sub);
                for (int n = 0; n < wc.N_sub; ++n) sv.segment(n * wc.M_sub, wc.M_sub) = vn[n] * xb;
                const double en = (state.noise_basis.adjoint() * sv).norm() / sv.norm();
                worst = std::max(worst, en);
                VecC bare(wc.M_sub * wc.N_sub);
                for (int n = 0; n < wc.N_sub; ++n)
                    bare.segment(n * wc.M_sub, wc.M_sub) = vn[n] * bm;
                const double qf =
                    std::abs((bare.adjoint() * state.effective * bare)(0, 0)) / scale;
                worst = std::max(worst, qf);
            }
        }
        checks.push_back({"noiseless_subspace_orthogonality", worst < 1e-8, worst});
    }
    {  // LS gain residual orthogonality
        const Scenario s = fixed_scenario();
        TFPilotGrid grid = tf_pilot_response(s);
        Rng noise_rng(7);
        grid = add_noise(grid, 20.0, noise_rng);
        std::vector<PathEstimate> ests;
        for (int q = 0; q < s.pilot.Q; ++q)
            for (const DDPath& p : s.users[q]) ests.push_back({q, p.delay, p.doppler, 0.0});
        const GainSolve gs = ls_gains(grid, ests, s.dims, s.pilot);
        MatC psi(s.dims.grid_size(), gs.estimates.size());
        for (size_t i = 0; i < gs.estimates.size(); ++i)
            psi.col(i) = dictionary_atom(gs.estimates[i], grid.spectrum, s.dims, s.pilot);
        VecC h(gs.estimates.size());
        for (size_t i = 0; i < gs.estimates.size(); ++i) h[i] = gs.estimates[i].gain;
        const Eigen::Map<const VecC> r(grid.grid.data(), grid.grid.size());
        const double resid = (psi.adjoint() * (r - psi * h)).norm() / r.norm();
        checks.push_back({"ls_gain_residual_orthogonality", resid < 1e-8, resid});
    }
    {  // assignment optimality against exhaustive permutations
        bool ok = true;
        for (int rep = 0; rep < 50 && ok; ++rep) {
            Scenario s;
            s.dims = {16, 16, 4.0, 3.0};
            s.pilot = {4, 4, 1, 2};
            s.users.resize(2);
            std::vector<PathEstimate> ests;
            for (int q = 0; q < 2; ++q) {
                const int n = 1 + rng.uniform_int(0, 2);
                for (int i = 0; i < n; ++i) {
                    DDPath p;
                    p.delay = rng.uniform(0.0, 3.0);
                    p.doppler = rng.uniform(-1.5, 1.5);
                    p.gain = cplx(1.0, 0.0);
                    s.users[q].push_back(p);
                    ests.push_back({q, p.delay + rng.uniform(-0.3, 0.3),
                                    p.doppler + rng.uniform(-0.3, 0.3), 0.0});
                }
            }
            std::shuffle(ests.begin(), ests.end(), std::mt19937(rep));
            const MatchResult match = match_paths(s, ests);
            double got = 0;
            for (const auto& p : match.pairs) got += p.cost;
            // exhaustive per-user minimum
            double best_total = 0;
            for (int q = 0; q < 2; ++q) {
                std::vector<int> eidx;
                for (int i = 0; i < static_cast<int>(ests.size()); ++i)
                    if (ests[i].user == q) eidx.push_back(i);
                const int nt = static_cast<int>(s.users[q].size());
                const int ne = static_cast<int>(eidx.size());
                std::vector<int> perm(std::max(nt, ne));
                std::iota(perm.begin(), perm.end(), 0);
                double best = 1e300;
                do {
                    double tot = 0;
                    for (int t = 0; t < std::min(nt, ne); ++t) {
                        int ti = nt <= ne ? t : perm[t];
                        int ei = nt <= ne ? perm[t] : t;
                        if (ti >= nt || ei >= ne) continue;
                        const double dl = s.users[q][ti].delay - ests[eidx[ei]].delay;
                        const double dk = wrap_to_centered(
                            s.users[q][ti].doppler - ests[eidx[ei]].doppler, s.dims.N);
                        tot += dl * dl + dk * dk;
                    }
                    best = std::min(best, tot);
                } while (std::next_permutation(perm.begin(), perm.end()));
                best_total += best;
            }
            ok = std::abs(got - best_total) < 1e-9;
        }
        checks.push_back({"assignment_matches_exhaustive", ok, ok ? 0.0 : 1.0});
    }
    {  // sweep determinism: same seed, different thread counts, same bytes
        SweepConfig cfg;
        cfg.dims = {32, 64, 4.0, 6.0};
        cfg.pilot = {8, 4, 1, 4};
        cfg.wmusic = {8, 10, 21, 48, 1e-8, 0.05, true};
        cfg.mp = {28, 8};
        cfg.constraints.max_paths = 2;
        cfg.snr_points_db = {20.0};
        cfg.trials = 3;
        cfg.seed = 99;
        const std::string a = sweep_to_csv(run_sweep(cfg, 1));
        const std::string b = sweep_to_csv(run_sweep(cfg, 2));
        checks.push_back({"sweep_thread_count_determinism", a == b, a == b ? 0.0 : 1.0});
    }

    int failures = 0;
    for (const Check& c : checks) {
        char line[160];
        std::snprintf(line, sizeof(line), "[%s] %-36s (%.3e)", c.passed ? "ok" : "FAIL",
                      c.name.c_str(), c.value);
        emit(line);
        if (!c.passed) ++failures;
    }
    return failures;
}

}  // namespace ddest
