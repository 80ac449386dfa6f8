#include <doctest.h>

#include <cmath>

#include "ddest/gains.hpp"
#include "ddest/pilot.hpp"
#include "ddest/synthesis.hpp"

using namespace ddest;

namespace {

const SystemDims kDims{32, 64, 4.0, 6.0};
const PilotConfig kPilot{8, 4, 1, 4};

Scenario scenario_with(std::vector<std::vector<DDPath>> users) {
    Scenario s;
    s.dims = kDims;
    s.pilot = kPilot;
    s.users = std::move(users);
    return s;
}

}  // namespace

TEST_SUITE("gains") {

TEST_CASE("atom equals the single-path response with unit gain") {
    Scenario s = scenario_with({{{cplx(1, 0), 1.7, -2.3}},
                                {{cplx(1, 0), 0.0, 0.0}},
                                {{cplx(1, 0), 0.0, 0.0}},
                                {{cplx(1, 0), 0.0, 0.0}}});
    // silence the other users with zero gains and compare against the
    // remaining single-path response
    Scenario muted = s;
    muted.users[1][0].gain = 0;
    muted.users[2][0].gain = 0;
    muted.users[3][0].gain = 0;
    const TFPilotGrid g = tf_pilot_response(muted);

    PathEstimate est{0, 1.7, -2.3, cplx(0, 0)};
    const VecC atom = dictionary_atom(est, g.spectrum, kDims, kPilot);
    const Eigen::Map<const VecC> vec(g.grid.data(), g.grid.size());
    CHECK((atom - vec).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("atoms: zero parameters and duplicate identity") {
    const VecC spectrum = pilot_spectrum(kPilot, kDims.M);
    PathEstimate a{2, 0.0, 0.0, cplx(0, 0)};
    const VecC atom = dictionary_atom(a, spectrum, kDims, kPilot);
    const int kq = doppler_index(2, kDims.N, kPilot.Q);
    for (int n = 0; n < kDims.N; ++n)
        for (int m = 0; m < kDims.M; ++m) {
            const cplx want = spectrum[m] * std::polar(1.0, kTwoPi * n * kq / kDims.N);
            CHECK(std::abs(atom[n * kDims.M + m] - want) < 1e-12);
        }
    const VecC again = dictionary_atom(a, spectrum, kDims, kPilot);
    CHECK((atom - again).norm() == 0.0);
}

TEST_CASE("noiseless true parameters give exact gains") {
    Scenario s = scenario_with({{{cplx(0.8, 0.2), 1.3, -1.7}},
                                {{cplx(-0.4, 0.6), 0.4, 2.1}, {cplx(0.3, -0.5), 2.2, -0.9}},
                                {{cplx(0.1, 0.9), 2.9, 0.6}},
                                {{cplx(-0.7, -0.3), 0.9, -2.4}}});
    const TFPilotGrid g = tf_pilot_response(s);
    std::vector<PathEstimate> ests;
    for (int q = 0; q < 4; ++q)
        for (const DDPath& p : s.users[q]) ests.push_back({q, p.delay, p.doppler, 0.0});
    const GainSolve gs = ls_gains(g, ests, kDims, kPilot);
    CHECK_FALSE(gs.ill_posed);
    int i = 0;
    for (int q = 0; q < 4; ++q)
        for (const DDPath& p : s.users[q])
            CHECK(std::abs(gs.estimates[i++].gain - p.gain) < 1e-10);
}

TEST_CASE("gains scale linearly with the grid") {
    Scenario s = scenario_with({{{cplx(0.5, 0.5), 2.0, 1.0}},
                                {{cplx(1, 0), 1.0, 0.0}},
                                {{cplx(1, 0), 1.5, 0.5}},
                                {{cplx(1, 0), 0.5, -0.5}}});
    TFPilotGrid g = tf_pilot_response(s);
    std::vector<PathEstimate> ests;
    for (int q = 0; q < 4; ++q)
        for (const DDPath& p : s.users[q]) ests.push_back({q, p.delay, p.doppler, 0.0});
    const GainSolve base = ls_gains(g, ests, kDims, kPilot);
    const cplx c(1.4, -2.2);
    g.grid *= c;
    const GainSolve scaled = ls_gains(g, ests, kDims, kPilot);
    for (size_t i = 0; i < ests.size(); ++i)
        CHECK(std::abs(scaled.estimates[i].gain - c * base.estimates[i].gain) < 1e-10);
}

TEST_CASE("spurious far-off atom receives near-zero gain") {
    Scenario s = scenario_with({{{cplx(0.9, -0.3), 1.1, 0.8}},
                                {{cplx(1, 0), 1.0, 0.0}},
                                {{cplx(1, 0), 1.5, 0.0}},
                                {{cplx(1, 0), 0.5, 0.0}}});
    Scenario muted = s;
    muted.users[1][0].gain = muted.users[2][0].gain = muted.users[3][0].gain = 0;
    const TFPilotGrid g = tf_pilot_response(muted);
    std::vector<PathEstimate> ests = {{0, 1.1, 0.8, 0.0}, {0, 2.9, -2.7, 0.0}};
    const GainSolve gs = ls_gains(g, ests, kDims, kPilot);
    CHECK(std::abs(gs.estimates[0].gain - cplx(0.9, -0.3)) < 1e-8);
    CHECK(std::abs(gs.estimates[1].gain) < 1e-8);
}

TEST_CASE("near-duplicate atoms are flagged ill posed") {
    Scenario s = scenario_with({{{cplx(0.9, -0.3), 1.1, 0.8}},
                                {{cplx(1, 0), 1.0, 0.0}},
                                {{cplx(1, 0), 1.5, 0.0}},
                                {{cplx(1, 0), 0.5, 0.0}}});
    const TFPilotGrid g = tf_pilot_response(s);
    std::vector<PathEstimate> ests = {{0, 1.1, 0.8, 0.0}, {0, 1.1 + 1e-13, 0.8, 0.0}};
    const GainSolve gs = ls_gains(g, ests, kDims, kPilot);
    CHECK(gs.ill_posed);
}

TEST_CASE("residual is orthogonal to the dictionary") {
    Scenario s = scenario_with({{{cplx(0.8, 0.2), 1.3, -1.7}},
                                {{cplx(-0.4, 0.6), 0.4, 2.1}},
                                {{cplx(0.1, 0.9), 2.9, 0.6}},
                                {{cplx(-0.7, -0.3), 0.9, -2.4}}});
    TFPilotGrid g = tf_pilot_response(s);
    Rng rng(12);
    g = add_noise(g, 15.0, rng);
    std::vector<PathEstimate> ests;
    for (int q = 0; q < 4; ++q)
        for (const DDPath& p : s.users[q]) ests.push_back({q, p.delay, p.doppler, 0.0});
    const GainSolve gs = ls_gains(g, ests, kDims, kPilot);

    MatC psi(kDims.grid_size(), ests.size());
    VecC h(ests.size());
    for (size_t i = 0; i < ests.size(); ++i) {
        psi.col(i) = dictionary_atom(gs.estimates[i], g.spectrum, kDims, kPilot);
        h[i] = gs.estimates[i].gain;
    }
    const Eigen::Map<const VecC> r(g.grid.data(), g.grid.size());
    CHECK((psi.adjoint() * (r - psi * h)).norm() < 1e-8 * r.norm());
}

TEST_CASE("empty estimate list is rejected") {
    Scenario s = scenario_with({{{cplx(1, 0), 1.0, 1.0}},
                                {{cplx(1, 0), 1.0, 0.0}},
                                {{cplx(1, 0), 1.0, 0.0}},
                                {{cplx(1, 0), 1.0, 0.0}}});
    const TFPilotGrid g = tf_pilot_response(s);
    CHECK_THROWS_AS(ls_gains(g, {}, kDims, kPilot), std::invalid_argument);
}

}  // TEST_SUITE
