#pragma once

#include "ddest/pilot.hpp"
#include "ddest/polynomial.hpp"
#include "ddest/types.hpp"

namespace ddest {

struct WMusicConfig {
    int M_sub = 16;      // M': delay rows used per snapshot
    int N_sub = 20;      // N': Doppler window width
    int G = 51;          // Fourier truncation order
    int Q_sample = 128;  // unit-circle samples for the WLS fit
    double eps_rel = 1e-8;
    double min_angle_sep = 0.05;          // Doppler bins, root selection
    bool project_roots_to_circle = true;  // evaluate D at z/|z| for delay step

    void validate(const SystemDims& dims) const;
    int L_snap(const SystemDims& dims) const { return dims.N - N_sub + 1; }
};

/// Subspace byproducts of one estimation run.
struct SubspaceState {
    int M_sub = 0;
    int N_sub = 0;
    MatC covariance;        // K_hat, M'N' x M'N'
    VecD eigenvalues;       // ascending
    MatC noise_basis;       // E_n, M'N' x (M'N' - P_tot)
    MatC signal_basis;      // dominant P_tot eigenvectors
    MatC effective;         // E_eff, filled by effective_projection
    bool spectrum_warning = false;  // near-zero pilot bin among first M'
};

/// Spatially smoothed snapshots: column j = vec of the M' x N' submatrix of
/// R_TF starting at Doppler column j (column-major vec).
MatC snapshots(const TFPilotGrid& grid, const WMusicConfig& cfg);

/// Sample covariance of the snapshots and its eigendecomposition split into
/// noise/signal subspaces (`effective` left empty).
SubspaceState covariance_and_noise_subspace(const MatC& snaps, int p_tot);

/// Fills `effective`: E_eff = (I kron X'_f)^H E_n E_n^H (I kron X'_f) with
/// X'_f the leading M' x M' block of diag(x_f).
void effective_projection(SubspaceState& state, const VecC& spectrum);

/// Doppler null-spectrum matrix D(z) = (v_{N'}(z) kron I)^H E_eff (v_{N'}(z) kron I).
MatC doppler_null_matrix(const SubspaceState& state, cplx z);

struct DopplerEstimates {
    std::vector<cplx> roots;        // selected polynomial roots
    std::vector<double> kappa_obs;  // observed Doppler bins in [0, N)
    EstimatorFlags flags;
};

/// Samples det D(e^{j phi}) on the unit circle, fits the weighted Fourier
/// polynomial, roots it and selects the P_tot observed Dopplers.
DopplerEstimates estimate_dopplers(const SubspaceState& state, const WMusicConfig& cfg,
                                   int p_tot, int N);

struct DelayEstimate {
    double ell = 0.0;
    bool inside_fallback = false;  // no root inside the circle
    bool no_root = false;          // delay polynomial had no usable root
};

/// Roots the scalar delay polynomial b^H(z) D(z_kappa) b(z) for one Doppler
/// root and converts the retained root to a delay in [0, M).
DelayEstimate estimate_delay_for_root(const SubspaceState& state, cplx z_kappa,
                                      const WMusicConfig& cfg, int M);

/// Full MU-W-MUSIC pipeline on one TF observation.
EstimationResult run_wmusic(const TFPilotGrid& grid, const SystemDims& dims,
                            const PilotConfig& pilot_cfg, const WMusicConfig& cfg,
                            int p_tot);

}  // namespace ddest
