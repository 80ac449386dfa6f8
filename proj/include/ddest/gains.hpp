#pragma once

#include "ddest/types.hpp"

namespace ddest {
struct PilotConfig;

/// Dictionary atom for one estimated path: column-major vec of
/// X_f b_M(ell) v_N^T(kappa + k^q), length M*N.
VecC dictionary_atom(const PathEstimate& est, const VecC& spectrum,
                     const SystemDims& dims, const PilotConfig& pilot_cfg);

struct GainSolve {
    std::vector<PathEstimate> estimates;  // gains filled in
    bool ill_posed = false;               // dictionary condition > 1e10
};

/// Least-squares channel gains: h = argmin ||vec(R_TF) - Psi h||_2, solved
/// by column-pivoted QR. Estimates are returned with gains written back.
GainSolve ls_gains(const TFPilotGrid& grid, std::vector<PathEstimate> estimates,
                   const SystemDims& dims, const PilotConfig& pilot_cfg);

}  // namespace ddest
