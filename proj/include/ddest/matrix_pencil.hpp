#pragma once

#include "ddest/pilot.hpp"
#include "ddest/types.hpp"

namespace ddest {

struct MpConfig {
    int M_pencil = 30;  // M_p: delay-dimension pencil parameter
    int N_pencil = 16;  // N_p: Doppler-dimension pencil parameter

    int K_M(const SystemDims& dims) const { return dims.M - M_pencil + 1; }
    int K_N(const SystemDims& dims) const { return dims.N - N_pencil + 1; }
    void validate(const SystemDims& dims, int p_tot) const;
};

struct PencilState {
    int M_pencil = 0, N_pencil = 0, K_M = 0, K_N = 0;
    MatC X;        // block Hankel, M_p N_p x K_M K_N
    MatC X_left;   // block columns 0 .. K_N-2
    MatC X_right;  // block columns 1 .. K_N-1
};

/// Block Hankel matrix of the TF grid: inner Hankel R_n[a,b] = R_TF[a+b, n]
/// per Doppler column, outer Hankel over the column index.
PencilState build_block_hankel(const TFPilotGrid& grid, const MpConfig& cfg);

/// Splits the block-column partition into the shifted pencil pair.
void pencil_split(PencilState& state);

struct DopplerPoles {
    std::vector<cplx> poles;
    std::vector<double> kappa_obs;  // observed bins in [0, N)
    EstimatorFlags flags;
};

/// Doppler poles as eigenvalues of the SVD-reduced pencil
/// T = Sigma_s^{-1} U_s^H X_right V_s.
DopplerPoles doppler_poles(const PencilState& state, int p_tot, int N);

struct DelayProjection {
    std::vector<double> delays;  // one per pole, bins in [0, M)
    EstimatorFlags flags;
};

/// LS projection of R_TF onto the Doppler subspace spanned by the pole
/// columns, pilot deconvolution, and magnitude-weighted phase-slope delay
/// extraction per pole.
DelayProjection delay_from_projection(const TFPilotGrid& grid,
                                      const std::vector<cplx>& poles,
                                      const VecC& spectrum, int p_tot);

/// Full MU-MP pipeline on one TF observation.
EstimationResult run_mp(const TFPilotGrid& grid, const SystemDims& dims,
                        const PilotConfig& pilot_cfg, const MpConfig& cfg, int p_tot);

}  // namespace ddest
