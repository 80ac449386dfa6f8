#include "ddest/synthesis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ddest/dd_operators.hpp"
#include "ddest/pilot.hpp"

namespace ddest {

TFPilotGrid tf_pilot_response(const Scenario& scenario) {
    scenario.validate();
    const SystemDims& dims = scenario.dims;
    TFPilotGrid out;
    out.spectrum = pilot_spectrum(scenario.pilot, dims.M);
    out.grid = MatC::Zero(dims.M, dims.N);
    out.noise_variance = 0.0;
    for (int q = 0; q < scenario.pilot.Q; ++q) {
        const int kq = doppler_index(q, dims.N, scenario.pilot.Q);
        for (const DDPath& p : scenario.users[q]) {
            const VecC col = out.spectrum.cwiseProduct(steering_delay(p.delay, dims.M));
            const VecC row = steering_doppler(p.doppler + kq, dims.N);
            out.grid.noalias() += p.gain * col * row.transpose();
        }
    }
    return out;
}

TFPilotGrid add_noise(const TFPilotGrid& grid, double snr_db, Rng& rng) {
    TFPilotGrid out = grid;
    if (std::isinf(snr_db) && snr_db > 0) {
        out.noise_variance = 0.0;
        return out;
    }
    const double p_sig = grid.grid.squaredNorm() / static_cast<double>(grid.grid.size());
    const double sigma2 = p_sig / std::pow(10.0, snr_db / 10.0);
    for (Eigen::Index j = 0; j < out.grid.cols(); ++j)
        for (Eigen::Index i = 0; i < out.grid.rows(); ++i)
            out.grid(i, j) += rng.complex_normal(sigma2);
    out.noise_variance = sigma2;
    return out;
}

Scenario random_scenario(const SystemDims& dims, const PilotConfig& pilot, Rng& rng,
                         const ScenarioConstraints& constraints) {
    dims.validate();
    pilot.validate(dims);
    Scenario s;
    s.dims = dims;
    s.pilot = pilot;
    s.users.resize(pilot.Q);
    for (int q = 0; q < pilot.Q; ++q) {
        const int pq = rng.uniform_int(constraints.min_paths, constraints.max_paths);
        std::vector<DDPath>& paths = s.users[q];
        paths.clear();
        int rejections = 0;
        while (static_cast<int>(paths.size()) < pq) {
            DDPath p;
            const double mag = rng.uniform_open0();
            const double phase = rng.uniform(0.0, kTwoPi);
            p.gain = std::polar(mag, phase);
            p.delay = rng.uniform(0.0, dims.ell_max - 1.0);
            p.doppler = rng.uniform(-dims.kappa_max / 2.0, dims.kappa_max / 2.0);
            bool ok = true;
            for (const DDPath& other : paths)
                if (std::abs(p.doppler - other.doppler) < constraints.min_doppler_sep) {
                    ok = false;
                    break;
                }
            if (ok) {
                paths.push_back(p);
            } else if (++rejections > constraints.rejection_limit) {
                throw std::runtime_error("random_scenario: rejection limit exceeded");
            }
        }
    }
    return s;
}

}  // namespace ddest
