#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ddest {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

/// System dimensions of the delay-Doppler grid and the channel spreads,
/// all in normalized bin units.
struct SystemDims {
    int M = 32;              // delay bins
    int N = 64;              // Doppler bins
    double ell_max = 4.0;    // maximum delay, bins
    double kappa_max = 6.0;  // maximum Doppler spread, bins

    int grid_size() const { return M * N; }

    // Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

/// One propagation path: complex gain, fractional delay and Doppler (bins).
struct DDPath {
    cplx gain{1.0, 0.0};
    double delay = 0.0;    // ell, in [0, ell_max - 1]
    double doppler = 0.0;  // kappa, in [-kappa_max/2, +kappa_max/2]

    void validate(const SystemDims& dims) const;
};

/// Pilot parameters shared by all users.
struct PilotConfig {
    int M_ZC = 8;     // Zadoff-Chu length
    int M_CP = 4;     // pilot cyclic-prefix length
    int zc_root = 1;  // ZC root u, coprime to M_ZC
    int Q = 4;        // number of users

    int M_PCP() const { return M_CP + M_ZC; }

    void validate(const SystemDims& dims) const;
};

/// Ground truth for one simulated frame: per-user path lists plus the seed
/// the scenario was drawn from.
struct Scenario {
    SystemDims dims;
    PilotConfig pilot;
    std::vector<std::vector<DDPath>> users;  // users[q] = paths of user q
    std::uint64_t seed = 0;

    int total_paths() const;
    void validate() const;
};

/// The M x N TF-domain pilot observation together with the pilot spectrum
/// that generated it and the per-entry noise variance.
struct TFPilotGrid {
    MatC grid;                  // R_TF, M x N
    VecC spectrum;              // x_f, length M
    double noise_variance = 0;  // sigma^2 per complex entry
};

/// Estimated path: user index, delay/Doppler in bins (Doppler is physical,
/// pilot offset removed), and the gain filled in by the LS stage.
struct PathEstimate {
    int user = 0;
    double delay = 0.0;
    double doppler = 0.0;
    cplx gain{0.0, 0.0};
};

/// Non-fatal conditions raised along an estimation run.
struct EstimatorFlags {
    bool root_shortfall = false;       // fewer usable roots than requested
    bool separation_relaxed = false;   // angle-separation rule dropped
    bool clustered_poles = false;      // near-coincident Doppler poles
    bool ill_conditioned = false;      // an LS/projection step was flagged
    bool delay_root_fallback = false;  // no inside delay root, used nearest
    bool rank_deficient = false;       // pencil order reduced
    std::vector<double> unassigned_dopplers;  // observed bins outside windows

    bool any() const {
        return root_shortfall || separation_relaxed || clustered_poles ||
               ill_conditioned || delay_root_fallback || rank_deficient ||
               !unassigned_dopplers.empty();
    }
    void merge(const EstimatorFlags& o);
    std::vector<std::string> notes() const;
};

/// Output of one estimator run (gains not yet filled).
struct EstimationResult {
    std::vector<PathEstimate> estimates;
    EstimatorFlags flags;
};

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

/// Wraps x into [0, period).
double wrap_to_period(double x, double period);

/// Wraps x into (-period/2, period/2].
double wrap_to_centered(double x, double period);

}  // namespace ddest
