#pragma once

#include "ddest/rng.hpp"
#include "ddest/types.hpp"

namespace ddest {

/// Noiseless TF-domain pilot observation:
/// R_TF[m,n] = sum_q sum_i h_i x_f[m] exp(-j2pi m l_i/M) exp(+j2pi n (k_i + k^q)/N).
TFPilotGrid tf_pilot_response(const Scenario& scenario);

/// Adds i.i.d. circularly symmetric complex Gaussian noise with per-entry
/// variance sigma^2 = P_sig / 10^(snr_db/10), P_sig being the mean squared
/// magnitude of the grid entries. snr_db = +inf leaves the grid unchanged.
TFPilotGrid add_noise(const TFPilotGrid& grid, double snr_db, Rng& rng);

struct ScenarioConstraints {
    int min_paths = 1;
    int max_paths = 3;
    double min_doppler_sep = 0.0;  // intra-user, bins; enforced by rejection
    int rejection_limit = 10000;
};

/// Draws a random multiuser scenario: P_q uniform on {min..max}, |h| uniform
/// on (0,1] with uniform phase, delay uniform on [0, ell_max-1], Doppler
/// uniform on [-kappa_max/2, +kappa_max/2].
Scenario random_scenario(const SystemDims& dims, const PilotConfig& pilot, Rng& rng,
                         const ScenarioConstraints& constraints = {});

}  // namespace ddest
