#pragma once

#include "ddest/types.hpp"

namespace ddest {

/// Zadoff-Chu sequence of length M_ZC with root u (gcd(u, M_ZC) = 1).
/// Even length: x[l] = exp(-j pi u l^2 / M_ZC); odd: exp(-j pi u l(l+1) / M_ZC).
VecC zc_sequence(int M_ZC, int u);

/// Pilot Doppler bin for user q: k^q = floor(floor(N/Q)/2) + q*floor(N/Q).
int doppler_index(int q, int N, int Q);

/// True iff Q users fit without Doppler-domain inter-user interference:
/// Q <= floor(N / (2*kappa_max + 1)).
bool capacity_check(int N, double kappa_max, int Q);

/// DD-domain pilot pattern of user q: column k^q carries the CP-extended ZC
/// sequence (CP = last M_CP ZC samples), all other entries zero.
MatC pcp_grid(const PilotConfig& cfg, const SystemDims& dims, int q);

/// Zero-padded non-normalized M-point DFT of the ZC sequence.
VecC pilot_spectrum(const PilotConfig& cfg, int M);

/// One observed Doppler attributed to a user window.
struct AssignedDoppler {
    int source_index;  // position in the observed list
    double doppler;    // physical Doppler, offset k^q removed
};

struct UserAssociation {
    std::vector<std::vector<AssignedDoppler>> per_user;  // size Q
    std::vector<std::pair<int, double>> unassigned;      // (index, observed bins)
};

/// Groups observed Dopplers (in [0, N)) by the user windows
/// [k^q - kappa_max, k^q + kappa_max] (cyclic) and removes the offsets.
/// Requires a capacity-passing configuration (disjoint windows).
UserAssociation associate_users(const std::vector<double>& observed_dopplers,
                                const SystemDims& dims, const PilotConfig& cfg);

}  // namespace ddest
